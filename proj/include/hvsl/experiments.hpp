#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "hvsl/config.hpp"
#include "hvsl/diagnostics.hpp"
#include "hvsl/integrator.hpp"

namespace hvsl {

/// Unweighted l1 differences sum |a - b| of f, B3 and p.
struct ErrorNorms {
    double f = 0.0;
    double b3 = 0.0;
    double p = 0.0;
};

ErrorNorms l1_difference(const SimState& a, const SimState& b);

/// Advance `steps` steps of size dt with the configured scheme (dt may be negative).
void advance_steps(SimState& state, const SchemeSpec& scheme, double dt, std::size_t steps);

struct ConvergenceRow {
    double dt = 0.0;
    ErrorNorms error;
    std::optional<ErrorNorms> order;  // log(e_prev / e) / log(dt_prev / dt) against the previous row
    std::size_t max_picard = 0;
};

/// Errors at t_final of runs with each dt against a run with reference_dt.
std::vector<ConvergenceRow> convergence_study(const RunConfig& config, std::span<const double> dts,
                                              double reference_dt);

/// steps at +dt followed by steps at -dt; l1 distance to the initial state.
ErrorNorms reversibility_error(const RunConfig& config, std::size_t steps, double dt);

/// Column floor for cyclotron-branch searches. The flat branches sit around 1e-4 of the
/// compressional line that dominates each k column, tens of bins away from it.
inline constexpr double kBranchRelativeFloor = 1e-5;

struct HarmonicCheck {
    std::size_t harmonic = 0;  // n of n * Omega
    double k = 0.0;            // largest k on the branch
    double omega = 0.0;        // ridge frequency there
    double relative_error = 0.0;
};

struct DispersionReport {
    Spectrum spectrum;
    std::vector<Branch> branches;
    std::vector<HarmonicCheck> harmonics;
    double cyclotron = 1.0;
};

/// Among the branches reaching the largest k of any branch, the `count` lowest there
/// compared with n * cyclotron.
std::vector<HarmonicCheck> harmonic_proximity(const std::vector<Branch>& branches, double cyclotron,
                                              std::size_t count);

/// Spectrum, ridges and harmonic checks of a B3 history (time-major).
DispersionReport analyze_dispersion(std::span<const double> history, std::size_t m1, std::span<const double> times,
                                    double lx, double cyclotron, const RidgeOptions& ridges, std::size_t harmonics);

/// Same, reading b3_history.bin and config.cfg from a run directory.
DispersionReport analyze_run_directory(const std::filesystem::path& dir, const RidgeOptions& ridges,
                                       std::size_t harmonics);

}  // namespace hvsl
