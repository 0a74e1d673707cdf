#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hvsl/state.hpp"

namespace hvsl {

struct ConservedSnapshot {
    double time = 0.0;
    double mass = 0.0;
    double momentum1 = 0.0;
    double momentum2 = 0.0;
    double energy_kinetic = 0.0;
    double energy_magnetic = 0.0;
    double energy_pressure = 0.0;
    double energy_total = 0.0;
    double rho_dev = 0.0;         // sum (rho - 1)^2 dx
    double p_relation_err = 0.0;  // sum |p - kappa rho^gamma| dx, pressure equation only
    std::size_t picard_iters = 0;
};

/// Discrete mass, momentum and energy of the state.
///
/// Thermal energy: sum p/(gamma-1) dx for the pressure equation, sum kappa rho^gamma/(gamma-1) dx
/// for the adiabatic closure and sum kappa rho ln(rho) dx for the isothermal closure.
/// Densities <= 0 contribute zero thermal energy (pure accounting, no error).
ConservedSnapshot conserved_quantities(const Distribution& f, const FieldState& fields, double time = 0.0,
                                       std::size_t picard_iters = 0);

/// Largest deviations of a time series from its first entry.
struct DriftSummary {
    double mass_rel = 0.0;      // max |m - m0| / |m0|
    double momentum_abs = 0.0;  // max over both components of |P - P0|
    double energy_rel = 0.0;    // max |E - E0| / |E0|
    double p_relation_max = 0.0;
    std::size_t picard_max = 0;
};

DriftSummary max_drifts(std::span<const ConservedSnapshot> series);

/// max |f| over the four velocity-boundary faces divided by max |f| (0 for f = 0).
double velocity_boundary_ratio(const Distribution& f);

struct DecayFit {
    double rate = 0.0;       // slope of log(value) against t
    double intercept = 0.0;  // log(value) at t = 0
    double r_squared = 1.0;
    std::size_t points = 0;
};

/// Least-squares fit of log(value) = intercept + rate t over samples with t in [t_begin, t_end].
/// Throws std::invalid_argument for non-positive values in the window or fewer than 2 samples.
DecayFit fit_decay_rate(std::span<const double> t, std::span<const double> value, double t_begin,
                        double t_end);

/// fit_decay_rate over the local maxima of an oscillating value that lie in [t_begin, t_end].
DecayFit fit_envelope_decay(std::span<const double> t, std::span<const double> value, double t_begin,
                            double t_end);

/// Interior indices k with value[k-1] < value[k] >= value[k+1]; a plateau counts at its left end.
std::vector<std::size_t> local_maxima(std::span<const double> value);

/// Folded power spectrum over k >= 0 and omega >= 0, power stored [k][omega].
struct Spectrum {
    std::vector<double> k;
    std::vector<double> omega;
    std::vector<double> power;

    std::size_t nk() const noexcept { return k.size(); }
    std::size_t nw() const noexcept { return omega.size(); }
    double at(std::size_t ik, std::size_t iw) const { return power[ik * omega.size() + iw]; }
};

/// Space-time power of history(x, t) - mean with a Hann window in time.
///
/// `history` is time-major: row n holds the m1 values at times[n]. Power is
/// |F|^2 / (m1 T) folded over the signs of k and omega, so its total equals the
/// energy of the windowed signal after removing the time mean at each x. A wave cos(k x - w t) peaks at (k, w).
/// Throws std::invalid_argument for fewer than 16 times or a non-uniform cadence.
Spectrum spacetime_spectrum(std::span<const double> history, std::size_t m1, std::span<const double> times,
                            double lx);

struct RidgeOptions {
    double relative_floor = 1e-3;  // just above the first Hann sidelobe (-31.5 dB) of a column maximum
    double absolute_floor = 0.0;   // and below this absolute power
    double global_floor = 1e-10;   // and below this fraction of the spectrum maximum
    std::size_t max_jump = 3;      // omega bins a branch may move between neighbouring k columns
    std::size_t min_points = 1;    // shorter branches are dropped
    std::size_t first_k = 1;       // skip the k = 0 column by default
    std::size_t first_omega = 2;   // skip the main lobe of the time window around omega = 0
};

struct RidgePoint {
    double k = 0.0;
    double omega = 0.0;
    double power = 0.0;
};

using Branch = std::vector<RidgePoint>;

/// Column-wise local maxima chained into branches by omega continuity, ordered by the
/// branch's mean omega. Throws std::runtime_error when no peak passes the floors.
std::vector<Branch> extract_branch_ridges(const Spectrum& spectrum, const RidgeOptions& options = {});

}  // namespace hvsl
