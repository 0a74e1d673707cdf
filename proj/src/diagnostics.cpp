#include "hvsl/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "fft.hpp"
#include "reduce.hpp"

namespace hvsl {

ConservedSnapshot conserved_quantities(const Distribution& f, const FieldState& fields, double time,
                                       std::size_t picard_iters) {
    const PhaseGrid& g = f.grid();
    const std::size_t m1 = g.m1();
    const std::size_t n1 = g.n1();
    const std::size_t n2 = g.n2();
    const double dx = g.dx();
    const double cell = dx * g.dv1() * g.dv2();

    std::vector<double> rho(m1), p1(m1), p2(m1), kin(m1);
    std::vector<double> row_sum(n1), row_v2(n1), row_v2sq(n1);
    for (std::size_t i = 0; i < m1; ++i) {
        const double* blk = f.block(i).data();
        for (std::size_t a = 0; a < n1; ++a) {
            const double* row = blk + a * n2;
            row_sum[a] = detail::pairwise_sum(row, n2);
            row_v2[a] = detail::pairwise_sum_of([&](std::size_t b) { return g.v2.nodes[b] * row[b]; }, 0, n2);
            row_v2sq[a] = detail::pairwise_sum_of(
                [&](std::size_t b) { return g.v2.nodes[b] * g.v2.nodes[b] * row[b]; }, 0, n2);
        }
        rho[i] = detail::pairwise_sum(row_sum.data(), n1);
        p1[i] = detail::pairwise_sum_of([&](std::size_t a) { return g.v1.nodes[a] * row_sum[a]; }, 0, n1);
        p2[i] = detail::pairwise_sum(row_v2.data(), n1);
        kin[i] = detail::pairwise_sum_of(
            [&](std::size_t a) { return g.v1.nodes[a] * g.v1.nodes[a] * row_sum[a] + row_v2sq[a]; }, 0, n1);
    }

    ConservedSnapshot s;
    s.time = time;
    s.picard_iters = picard_iters;
    s.mass = detail::pairwise_sum(rho.data(), m1) * cell;
    s.momentum1 = detail::pairwise_sum(p1.data(), m1) * cell;
    s.momentum2 = detail::pairwise_sum(p2.data(), m1) * cell;
    s.energy_kinetic = 0.5 * detail::pairwise_sum(kin.data(), m1) * cell;

    const double dv = g.dv1() * g.dv2();
    for (double& r : rho) r *= dv;

    const std::vector<double>& b3 = fields.b3;
    s.energy_magnetic =
        b3.empty() ? 0.0 : 0.5 * detail::pairwise_sum_of([&](std::size_t i) { return b3[i] * b3[i]; }, 0, m1) * dx;

    const double kappa = fields.kappa;
    const double gamma = fields.gamma;
    switch (fields.closure) {
        case Closure::pressure_equation:
            if (!fields.p.empty()) {
                s.energy_pressure = detail::pairwise_sum(fields.p.data(), m1) * dx / (gamma - 1.0);
                s.p_relation_err = detail::pairwise_sum_of(
                                       [&](std::size_t i) {
                                           const double r = rho[i] > 0.0 ? std::pow(rho[i], gamma) : 0.0;
                                           return std::abs(fields.p[i] - kappa * r);
                                       },
                                       0, m1) *
                                   dx;
            }
            break;
        case Closure::adiabatic:
            s.energy_pressure = detail::pairwise_sum_of(
                                    [&](std::size_t i) {
                                        return rho[i] > 0.0 ? kappa * std::pow(rho[i], gamma) : 0.0;
                                    },
                                    0, m1) *
                                dx / (gamma - 1.0);
            break;
        case Closure::isothermal:
            s.energy_pressure = detail::pairwise_sum_of(
                                    [&](std::size_t i) {
                                        return rho[i] > 0.0 ? kappa * rho[i] * std::log(rho[i]) : 0.0;
                                    },
                                    0, m1) *
                                dx;
            break;
    }
    s.rho_dev = detail::pairwise_sum_of([&](std::size_t i) { return (rho[i] - 1.0) * (rho[i] - 1.0); }, 0, m1) * dx;
    s.energy_total = s.energy_kinetic + s.energy_magnetic + s.energy_pressure;
    return s;
}

DriftSummary max_drifts(std::span<const ConservedSnapshot> series) {
    DriftSummary d;
    if (series.empty()) return d;
    const ConservedSnapshot& s0 = series.front();
    for (const ConservedSnapshot& s : series) {
        if (s0.mass != 0.0) d.mass_rel = std::max(d.mass_rel, std::abs(s.mass - s0.mass) / std::abs(s0.mass));
        d.momentum_abs = std::max({d.momentum_abs, std::abs(s.momentum1 - s0.momentum1),
                                   std::abs(s.momentum2 - s0.momentum2)});
        if (s0.energy_total != 0.0) {
            d.energy_rel = std::max(d.energy_rel, std::abs(s.energy_total - s0.energy_total) /
                                                      std::abs(s0.energy_total));
        }
        d.p_relation_max = std::max(d.p_relation_max, s.p_relation_err);
        d.picard_max = std::max(d.picard_max, s.picard_iters);
    }
    return d;
}

double velocity_boundary_ratio(const Distribution& f) {
    const PhaseGrid& g = f.grid();
    double peak = 0.0;
    double edge = 0.0;
    for (std::size_t i = 0; i < g.m1(); ++i) {
        for (std::size_t a = 0; a < g.n1(); ++a) {
            for (std::size_t b = 0; b < g.n2(); ++b) {
                const double v = std::abs(f(i, a, b));
                peak = std::max(peak, v);
                if (a == 0 || a + 1 == g.n1() || b == 0 || b + 1 == g.n2()) edge = std::max(edge, v);
            }
        }
    }
    return peak > 0.0 ? edge / peak : 0.0;
}

DecayFit fit_decay_rate(std::span<const double> t, std::span<const double> value, double t_begin,
                        double t_end) {
    if (t.size() != value.size()) throw std::invalid_argument("fit_decay_rate: t and value differ in length");
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] < t_begin || t[k] > t_end) continue;
        if (!(value[k] > 0.0)) {
            throw std::invalid_argument("fit_decay_rate: non-positive value at t = " + std::to_string(t[k]));
        }
        xs.push_back(t[k]);
        ys.push_back(std::log(value[k]));
    }
    if (xs.size() < 2) throw std::invalid_argument("fit_decay_rate: fewer than 2 samples in the window");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double dx = xs[k] - mx;
        const double dy = ys[k] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_decay_rate: all samples at the same time");
    DecayFit fit;
    fit.rate = sxy / sxx;
    fit.intercept = my - fit.rate * mx;
    double ss_res = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double r = ys[k] - (fit.intercept + fit.rate * xs[k]);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    fit.points = xs.size();
    return fit;
}

DecayFit fit_envelope_decay(std::span<const double> t, std::span<const double> value, double t_begin,
                            double t_end) {
    if (t.size() != value.size()) throw std::invalid_argument("fit_envelope_decay: t and value differ in length");
    std::vector<double> pt;
    std::vector<double> pv;
    for (std::size_t k : local_maxima(value)) {
        if (t[k] < t_begin || t[k] > t_end) continue;
        pt.push_back(t[k]);
        pv.push_back(value[k]);
    }
    return fit_decay_rate(pt, pv, t_begin, t_end);
}

std::vector<std::size_t> local_maxima(std::span<const double> value) {
    std::vector<std::size_t> out;
    for (std::size_t k = 1; k + 1 < value.size(); ++k) {
        if (value[k] > value[k - 1] && value[k] >= value[k + 1]) out.push_back(k);
    }
    return out;
}

Spectrum spacetime_spectrum(std::span<const double> history, std::size_t m1, std::span<const double> times,
                            double lx) {
    const std::size_t nt = times.size();
    if (nt < 16) throw std::invalid_argument("spacetime_spectrum: need at least 16 time samples");
    if (m1 < 2 || history.size() != nt * m1) {
        throw std::invalid_argument("spacetime_spectrum: history size does not match m1 x times");
    }
    const double dt = (times.back() - times.front()) / static_cast<double>(nt - 1);
    if (!(dt > 0.0)) throw std::invalid_argument("spacetime_spectrum: times must increase");
    for (std::size_t n = 1; n < nt; ++n) {
        if (std::abs(times[n] - times[n - 1] - dt) > 1e-6 * dt) {
            throw std::invalid_argument("spacetime_spectrum: non-uniform output cadence at sample " +
                                        std::to_string(n));
        }
    }

    // Remove the time mean at every x so static structure does not leak into low frequencies.
    std::vector<double> mean(m1, 0.0);
    for (std::size_t n = 0; n < nt; ++n) {
        for (std::size_t i = 0; i < m1; ++i) mean[i] += history[n * m1 + i];
    }
    for (double& m : mean) m /= static_cast<double>(nt);
    std::vector<double> g(history.size());
    for (std::size_t n = 0; n < nt; ++n) {
        const double w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(n) /
                                               static_cast<double>(nt - 1)));
        for (std::size_t i = 0; i < m1; ++i) g[n * m1 + i] = w * (history[n * m1 + i] - mean[i]);
    }

    // x transform per time row (exp(-i k x)), then exp(+i w t) along time per k.
    const std::size_t bins = m1 / 2 + 1;
    std::vector<std::complex<double>> rows(nt * bins);
    detail::contiguous_plan(m1, nt).forward(g.data(), rows.data());
    std::vector<std::complex<double>> cols(bins * nt);
    for (std::size_t n = 0; n < nt; ++n) {
        for (std::size_t k = 0; k < bins; ++k) cols[k * nt + n] = rows[n * bins + k];
    }
    detail::complex_dft(cols.data(), nt, bins, +1);

    const std::size_t nw = nt / 2 + 1;
    Spectrum s;
    s.k.resize(bins);
    s.omega.resize(nw);
    for (std::size_t k = 0; k < bins; ++k) s.k[k] = 2.0 * std::numbers::pi / lx * static_cast<double>(k);
    for (std::size_t w = 0; w < nw; ++w) {
        s.omega[w] = 2.0 * std::numbers::pi / (static_cast<double>(nt) * dt) * static_cast<double>(w);
    }
    s.power.assign(bins * nw, 0.0);
    const double norm = 1.0 / (static_cast<double>(m1) * static_cast<double>(nt));
    for (std::size_t k = 0; k < bins; ++k) {
        const bool self_conjugate = (k == 0) || (m1 % 2 == 0 && k == m1 / 2);
        const double mult = self_conjugate ? 1.0 : 2.0;
        const std::complex<double>* col = cols.data() + k * nt;
        for (std::size_t w = 0; w < nw; ++w) {
            double p = std::norm(col[w]);
            const bool paired = w != 0 && !(nt % 2 == 0 && w == nt / 2);
            if (paired) p += std::norm(col[nt - w]);
            s.power[k * nw + w] = mult * p * norm;
        }
    }
    return s;
}

std::vector<Branch> extract_branch_ridges(const Spectrum& spectrum, const RidgeOptions& options) {
    struct Open {
        Branch points;
        std::size_t last_w;
        std::size_t last_k;
    };
    std::vector<Open> branches;
    const std::size_t nw = spectrum.nw();
    bool any = false;
    const double global_max =
        spectrum.power.empty() ? 0.0 : *std::max_element(spectrum.power.begin(), spectrum.power.end());
    for (std::size_t ik = options.first_k; ik < spectrum.nk(); ++ik) {
        double col_max = 0.0;
        for (std::size_t w = 0; w < nw; ++w) col_max = std::max(col_max, spectrum.at(ik, w));
        const double floor = std::max({options.relative_floor * col_max, options.absolute_floor,
                                       options.global_floor * global_max});
        std::vector<std::size_t> peaks;
        for (std::size_t w = options.first_omega; w < nw; ++w) {
            const double p = spectrum.at(ik, w);
            if (!(p > floor) || p <= 0.0) continue;
            const double left = w > 0 ? spectrum.at(ik, w - 1) : 0.0;
            const double right = w + 1 < nw ? spectrum.at(ik, w + 1) : 0.0;
            if (p > left && p >= right) peaks.push_back(w);
        }
        std::vector<bool> taken(branches.size(), false);
        for (std::size_t w : peaks) {
            any = true;
            std::size_t best = branches.size();
            std::size_t best_dist = options.max_jump + 1;
            for (std::size_t b = 0; b < branches.size(); ++b) {
                if (taken[b] || branches[b].last_k + 1 != ik) continue;
                const std::size_t dist = w > branches[b].last_w ? w - branches[b].last_w : branches[b].last_w - w;
                if (dist < best_dist) {
                    best = b;
                    best_dist = dist;
                }
            }
            const RidgePoint pt{spectrum.k[ik], spectrum.omega[w], spectrum.at(ik, w)};
            if (best < branches.size()) {
                branches[best].points.push_back(pt);
                branches[best].last_w = w;
                branches[best].last_k = ik;
                taken[best] = true;
            } else {
                branches.push_back({{pt}, w, ik});
                taken.push_back(true);
            }
        }
    }
    if (!any) throw std::runtime_error("extract_branch_ridges: no spectral peak above the floor");

    std::vector<Branch> out;
    for (Open& b : branches) {
        if (b.points.size() >= options.min_points) out.push_back(std::move(b.points));
    }
    auto mean_omega = [](const Branch& b) {
        double s = 0.0;
        for (const RidgePoint& p : b) s += p.omega;
        return s / static_cast<double>(b.size());
    };
    std::stable_sort(out.begin(), out.end(),
                     [&](const Branch& a, const Branch& b) { return mean_omega(a) < mean_omega(b); });
    return out;
}

}  // namespace hvsl
