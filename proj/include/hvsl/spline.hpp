#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hvsl {

/// Cubic B-spline C(z) on nodes of spacing dz (support |z| < 2 dz, C(0) = 4/6).
double cubic_bspline(double z, double dz);

/// Coefficients e_j of the periodic expansion sum_j e_j C(z - z_j), z_j = z0 + j dz.
struct SplineCoefficients {
    std::vector<double> e;
    double dz = 1.0;
    double z0 = 0.0;

    double period() const noexcept { return dz * static_cast<double>(e.size()); }
};

/// Precomputed O(N) solver for the cyclic system (e_{i-1} + 4 e_i + e_{i+1}) / 6 = s_i.
///
/// The cyclic matrix is written as a tridiagonal matrix plus a rank-one
/// correction (Sherman-Morrison); the tridiagonal LU factors and the
/// correction vector depend only on N and are computed once.
class PeriodicSplineSolver {
public:
    explicit PeriodicSplineSolver(std::size_t n);

    std::size_t size() const noexcept { return n_; }

    /// In place: samples -> coefficients for one contiguous line.
    void solve(std::span<double> line) const;

    /// In place for `batch` interleaved lines, element k of line b at data[k * batch + b].
    void solve_interleaved(std::span<double> data, std::size_t batch) const;

private:
    std::size_t n_;
    std::vector<double> inv_pivot_;  // 1 / pivot of the modified tridiagonal LU
    std::vector<double> upper_;      // eliminated super-diagonal
    std::vector<double> correction_; // A'^{-1} u
    double v_last_;                  // v = (1, 0, ..., 0, v_last)
    double denominator_;             // 1 + v . correction
};

/// Solve for the periodic spline coefficients; throws KernelError when samples.size() < 4.
SplineCoefficients spline_coefficients_periodic(std::span<const double> samples, double dz,
                                                double z0 = 0.0);

/// Evaluate the periodic spline at z (wrapped into the period).
double spline_evaluate(const SplineCoefficients& coeffs, double z);

/// Semi-Lagrangian shift: out_i = spline(z_i - shift).
std::vector<double> advect_line_spline(std::span<const double> samples, double dz, double shift);

/// Batched constant-shift spline advection on lines of a fixed length.
class SplineAdvector {
public:
    SplineAdvector(std::size_t n, double dz);

    std::size_t size() const noexcept { return solver_.size(); }
    double spacing() const noexcept { return dz_; }

    /// Lines interleaved as [n][batch]; shifts.size() == batch (physical units).
    void advect_interleaved(std::span<double> data, std::size_t batch,
                            std::span<const double> shifts) const;

    /// Contiguous lines laid out as [count][n]; shifts.size() == count.
    void advect_lines(std::span<double> data, std::span<const double> shifts) const;

private:
    PeriodicSplineSolver solver_;
    double dz_;
};

}  // namespace hvsl
