#include "hvsl/integrator.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>

#include "hvsl/errors.hpp"

namespace hvsl {

SchemeSpec scheme_from_config(const RunConfig& config) {
    SchemeSpec s;
    s.kind = config.numerics.scheme;
    s.dt = config.numerics.dt;
    s.t_final = config.numerics.t_final;
    s.velocity_backend = config.numerics.velocity_backend;
    s.space_backend = config.numerics.space_backend;
    s.picard.tol = config.numerics.picard_tol;
    s.picard.max_iters = config.numerics.picard_max;
    return s;
}

SimState initial_state(const RunConfig& config) {
    auto grid = std::make_shared<const PhaseGrid>(make_phase_grid(config));
    const PhaseGrid& g = *grid;
    const InitialConfig& ic = config.initial;

    std::vector<double> density_profile(g.m1());
    for (std::size_t i = 0; i < g.m1(); ++i) {
        density_profile[i] = 1.0 + ic.density_amplitude * std::sin(ic.density_wavenumber * g.x.nodes[i]);
    }
    const double vt2 = ic.vt * ic.vt;
    const double norm = 1.0 / (std::numbers::pi * vt2);
    std::vector<double> g1(g.n1()), g2(g.n2());
    for (std::size_t a = 0; a < g.n1(); ++a) {
        const double d = g.v1.nodes[a] - ic.drift1;
        g1[a] = std::exp(-d * d / vt2);
    }
    for (std::size_t b = 0; b < g.n2(); ++b) {
        const double d = g.v2.nodes[b] - ic.drift2;
        g2[b] = std::exp(-d * d / vt2);
    }
    Distribution f(grid);
    for (std::size_t i = 0; i < g.m1(); ++i) {
        for (std::size_t a = 0; a < g.n1(); ++a) {
            for (std::size_t b = 0; b < g.n2(); ++b) f(i, a, b) = density_profile[i] * norm * g1[a] * g2[b];
        }
    }

    FieldState fields;
    fields.closure = config.physics.closure;
    fields.gamma = config.physics.closure == Closure::isothermal ? 1.0 : config.physics.gamma;
    fields.kappa = config.physics.kappa;
    fields.b3.resize(g.m1());
    for (std::size_t i = 0; i < g.m1(); ++i) {
        double sum = 0.0;
        for (std::size_t m = 1; m <= ic.b3_mode_count; ++m) {
            sum += std::sin(static_cast<double>(m) * ic.b3_base_wavenumber * g.x.nodes[i]);
        }
        fields.b3[i] = ic.b3_mean + ic.b3_amplitude * sum;
    }
    if (fields.closure == Closure::pressure_equation) {
        fields.p.resize(g.m1());
        for (std::size_t i = 0; i < g.m1(); ++i) fields.p[i] = ic.p0 * std::pow(density_profile[i], fields.gamma);
    } else {
        fields.refresh_pressure(density(f));
    }
    return SimState{std::move(f), std::move(fields), 0.0};
}

PvbResult lie_step(SimState& state, const SchemeSpec& scheme, double dt) {
    PvbResult r = pvb_step(state.f, state.fields, dt, scheme.picard, scheme.velocity_backend);
    xv_step(state.f, dt, scheme.space_backend);
    state.time += dt;
    return r;
}

PvbResult strang_step(SimState& state, const SchemeSpec& scheme, double dt) {
    xv_step(state.f, 0.5 * dt, scheme.space_backend);
    PvbResult r = pvb_step(state.f, state.fields, dt, scheme.picard, scheme.velocity_backend);
    xv_step(state.f, 0.5 * dt, scheme.space_backend);
    state.time += dt;
    return r;
}

PvbResult advance(SimState& state, const SchemeSpec& scheme, double dt) {
    return scheme.kind == SchemeKind::lie ? lie_step(state, scheme, dt) : strang_step(state, scheme, dt);
}

namespace {

std::size_t multiple_of_dt(const char* key, double value, double dt) {
    const double ratio = value / dt;
    const double n = std::round(ratio);
    if (std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio)) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s: %.17g is not an integer multiple of numerics.dt = %.17g", key, value, dt);
        throw ConfigError(buf);
    }
    return static_cast<std::size_t>(n);
}

}  // namespace

StepPlan plan_steps(const RunConfig& config) {
    const double dt = config.numerics.dt;
    StepPlan plan;
    plan.steps = multiple_of_dt("numerics.t_final", config.numerics.t_final, dt);
    if (config.output.cadence > 0.0) {
        plan.output_every = std::max<std::size_t>(1, multiple_of_dt("output.cadence", config.output.cadence, dt));
    }
    if (config.output.snapshot_cadence > 0.0) {
        plan.snapshot_every =
            std::max<std::size_t>(1, multiple_of_dt("output.snapshot_cadence", config.output.snapshot_cadence, dt));
    }
    return plan;
}

RunArtifacts run(const RunConfig& config, const RunObserver& observer) {
    return run(initial_state(config), config, observer);
}

RunArtifacts run(SimState state, const RunConfig& config, const RunObserver& observer) {
    validate_config(config);
    const StepPlan plan = plan_steps(config);
    const SchemeSpec scheme = scheme_from_config(config);
    const double t0 = state.time;
    RunArtifacts out;
    bool warned = false;
    std::size_t picard_since_output = 0;

    auto emit = [&](std::size_t step) {
        state.fields.refresh_pressure(density(state.f));
        const ConservedSnapshot snap = conserved_quantities(state.f, state.fields, state.time, picard_since_output);
        out.series.push_back(snap);
        picard_since_output = 0;
        if (config.output.field_history) {
            out.history_times.push_back(state.time);
            out.b3_history.insert(out.b3_history.end(), state.fields.b3.begin(), state.fields.b3.end());
        }
        const double ratio = velocity_boundary_ratio(state.f);
        out.max_boundary_ratio = std::max(out.max_boundary_ratio, ratio);
        if (ratio > kBoundaryWarnRatio && !warned) {
            char buf[200];
            std::snprintf(buf, sizeof buf,
                          "t = %.6g: max |f| on the velocity boundary is %.3e of max |f|; "
                          "the velocity domain may be too small",
                          state.time, ratio);
            out.warnings.emplace_back(buf);
            warned = true;
        }
        if (observer.on_output) observer.on_output(state, snap);
        if (plan.snapshot_every > 0 && step % plan.snapshot_every == 0 && observer.on_snapshot) {
            observer.on_snapshot(state);
        }
    };

    emit(0);
    for (std::size_t step = 1; step <= plan.steps; ++step) {
        try {
            const PvbResult r = advance(state, scheme, scheme.dt);
            picard_since_output = std::max(picard_since_output, r.picard_iterations);
        } catch (const Error& e) {
            out.status = RunStatus::numerical_failure;
            out.failed_step = step;
            out.failure = e.what();
            break;
        }
        state.time = t0 + static_cast<double>(step) * scheme.dt;
        out.steps_taken = step;
        if (step % plan.output_every == 0 || step == plan.steps) emit(step);
    }
    out.drifts = max_drifts(out.series);
    return out;
}

}  // namespace hvsl
