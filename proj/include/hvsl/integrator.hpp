#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hvsl/config.hpp"
#include "hvsl/diagnostics.hpp"
#include "hvsl/state.hpp"
#include "hvsl/substeps.hpp"

namespace hvsl {

struct SimState {
    Distribution f;
    FieldState fields;
    double time = 0.0;
};

struct SchemeSpec {
    SchemeKind kind = SchemeKind::strang;
    double dt = 0.1;
    double t_final = 0.0;
    AdvectionBackend velocity_backend = AdvectionBackend::spline;
    AdvectionBackend space_backend = AdvectionBackend::spectral;
    PicardOptions picard;
};

SchemeSpec scheme_from_config(const RunConfig& config);

/// Initial state described by config.initial on the configured grid.
SimState initial_state(const RunConfig& config);

/// pvb(dt) then xv(dt). dt may be negative (time reversal). Returns the pvb statistics.
PvbResult lie_step(SimState& state, const SchemeSpec& scheme, double dt);

/// xv(dt/2), pvb(dt), xv(dt/2).
PvbResult strang_step(SimState& state, const SchemeSpec& scheme, double dt);

PvbResult advance(SimState& state, const SchemeSpec& scheme, double dt);

/// Step count and output stride derived from t_final, dt and the output cadence.
struct StepPlan {
    std::size_t steps = 0;
    std::size_t output_every = 1;
    std::size_t snapshot_every = 0;  // 0: none
};

/// Throws ConfigError when t_final or a cadence is not an integer multiple of dt.
StepPlan plan_steps(const RunConfig& config);

enum class RunStatus { ok, numerical_failure };

struct RunArtifacts {
    std::vector<ConservedSnapshot> series;
    std::vector<double> history_times;     // B3 history sample times
    std::vector<double> b3_history;        // time-major, m1 values per sample
    std::vector<std::string> warnings;
    RunStatus status = RunStatus::ok;
    std::string failure;                   // message of the failing step
    std::optional<std::size_t> failed_step;
    std::size_t steps_taken = 0;
    DriftSummary drifts;
    double max_boundary_ratio = 0.0;
};

/// Hooks invoked at output steps and snapshot steps with the live state.
struct RunObserver {
    std::function<void(const SimState&, const ConservedSnapshot&)> on_output;
    std::function<void(const SimState&)> on_snapshot;
};

inline constexpr double kBoundaryWarnRatio = 1e-10;

/// Time loop: diagnostics at t = 0 and every output step; substep failures stop the loop and
/// are reported in the artifacts (status, failing step, message) rather than thrown.
RunArtifacts run(const RunConfig& config, const RunObserver& observer = {});
RunArtifacts run(SimState state, const RunConfig& config, const RunObserver& observer = {});

}  // namespace hvsl
