#include "hvsl/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "hvsl/errors.hpp"
#include "hvsl/output.hpp"

namespace hvsl {

namespace {

double l1(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw StateError("l1 difference of arrays with different sizes");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
    return s;
}

std::size_t steps_for(double t_final, double dt) {
    const double n = std::round(t_final / dt);
    if (std::abs(n * dt - t_final) > 1e-9 * std::max(1.0, t_final)) {
        throw ConfigError("numerics.t_final: " + format_double(t_final) + " is not a multiple of dt = " +
                          format_double(dt));
    }
    return static_cast<std::size_t>(n);
}

}  // namespace

ErrorNorms l1_difference(const SimState& a, const SimState& b) {
    return {l1(a.f.values(), b.f.values()), l1(a.fields.b3, b.fields.b3), l1(a.fields.p, b.fields.p)};
}

void advance_steps(SimState& state, const SchemeSpec& scheme, double dt, std::size_t steps) {
    for (std::size_t n = 0; n < steps; ++n) advance(state, scheme, dt);
    state.fields.refresh_pressure(density(state.f));
}

std::vector<ConvergenceRow> convergence_study(const RunConfig& config, std::span<const double> dts,
                                              double reference_dt) {
    const SchemeSpec scheme = scheme_from_config(config);
    const double t_final = config.numerics.t_final;
    SimState reference = initial_state(config);
    advance_steps(reference, scheme, reference_dt, steps_for(t_final, reference_dt));

    std::vector<ConvergenceRow> rows;
    for (double dt : dts) {
        SimState s = initial_state(config);
        ConvergenceRow row;
        row.dt = dt;
        const std::size_t steps = steps_for(t_final, dt);
        for (std::size_t n = 0; n < steps; ++n) {
            row.max_picard = std::max(row.max_picard, advance(s, scheme, dt).picard_iterations);
        }
        s.fields.refresh_pressure(density(s.f));
        row.error = l1_difference(s, reference);
        if (!rows.empty()) {
            const ConvergenceRow& prev = rows.back();
            const double r = std::log(prev.dt / dt);
            row.order = ErrorNorms{std::log(prev.error.f / row.error.f) / r, std::log(prev.error.b3 / row.error.b3) / r,
                                   std::log(prev.error.p / row.error.p) / r};
        }
        rows.push_back(row);
    }
    return rows;
}

ErrorNorms reversibility_error(const RunConfig& config, std::size_t steps, double dt) {
    const SchemeSpec scheme = scheme_from_config(config);
    const SimState start = initial_state(config);
    SimState s = start;
    advance_steps(s, scheme, dt, steps);
    advance_steps(s, scheme, -dt, steps);
    return l1_difference(s, start);
}

std::vector<HarmonicCheck> harmonic_proximity(const std::vector<Branch>& branches, double cyclotron,
                                              std::size_t count) {
    // Only branches that reach the largest resolved k are compared, lowest end frequency first.
    std::vector<RidgePoint> ends;
    for (const Branch& b : branches) {
        if (b.empty()) continue;
        ends.push_back(*std::max_element(b.begin(), b.end(),
                                         [](const RidgePoint& x, const RidgePoint& y) { return x.k < y.k; }));
    }
    double k_max = 0.0;
    for (const RidgePoint& e : ends) k_max = std::max(k_max, e.k);
    std::erase_if(ends, [&](const RidgePoint& e) { return e.k < k_max; });
    std::sort(ends.begin(), ends.end(), [](const RidgePoint& x, const RidgePoint& y) { return x.omega < y.omega; });

    std::vector<HarmonicCheck> out;
    for (std::size_t n = 0; n < count && n < ends.size(); ++n) {
        HarmonicCheck h;
        h.harmonic = n + 1;
        h.k = ends[n].k;
        h.omega = ends[n].omega;
        const double target = static_cast<double>(n + 1) * cyclotron;
        h.relative_error = std::abs(h.omega - target) / target;
        out.push_back(h);
    }
    return out;
}

DispersionReport analyze_dispersion(std::span<const double> history, std::size_t m1, std::span<const double> times,
                                    double lx, double cyclotron, const RidgeOptions& ridges, std::size_t harmonics) {
    DispersionReport r;
    r.cyclotron = cyclotron;
    r.spectrum = spacetime_spectrum(history, m1, times, lx);
    r.branches = extract_branch_ridges(r.spectrum, ridges);
    r.harmonics = harmonic_proximity(r.branches, cyclotron, harmonics);
    return r;
}

DispersionReport analyze_run_directory(const std::filesystem::path& dir, const RidgeOptions& ridges,
                                       std::size_t harmonics) {
    const RunConfig config = load_config(dir / "config.cfg");
    const std::vector<Snapshot> samples = read_snapshots(dir / "b3_history.bin");
    if (samples.empty()) throw IoError((dir / "b3_history.bin").string() + ": no samples");
    const std::size_t m1 = samples.front().m1;
    std::vector<double> times;
    std::vector<double> history;
    for (const Snapshot& s : samples) {
        if (s.m1 != m1 || s.values.size() != m1) throw IoError("b3_history.bin: inconsistent sample shapes");
        times.push_back(s.time);
        history.insert(history.end(), s.values.begin(), s.values.end());
    }
    double mean = 0.0;
    for (double v : samples.front().values) mean += v;
    mean /= static_cast<double>(m1);
    return analyze_dispersion(history, m1, times, config.grid.lx, std::abs(mean), ridges, harmonics);
}

}  // namespace hvsl
