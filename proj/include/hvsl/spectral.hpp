#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hvsl {

/// Fourier-spectral constant-shift advection: out = IDFT(exp(-i shift beta) DFT(in)).
///
/// For even N the Nyquist bin of a real line keeps only its real part, so it is
/// multiplied by cos(shift * beta_N). No dealiasing is applied.
class SpectralAdvector {
public:
    SpectralAdvector(std::size_t n, double dz);

    std::size_t size() const noexcept { return n_; }
    double spacing() const noexcept { return dz_; }

    /// Lines interleaved as [n][batch]; shifts.size() == batch (physical units).
    void advect_interleaved(std::span<double> data, std::size_t batch,
                            std::span<const double> shifts) const;

    /// Contiguous lines laid out as [count][n]; shifts.size() == count.
    void advect_lines(std::span<double> data, std::span<const double> shifts) const;

private:
    std::size_t n_;
    double dz_;
    std::vector<double> beta_;  // non-negative frequencies of the half spectrum
};

/// Single-line convenience wrapper; throws KernelError when samples.size() < 2.
std::vector<double> advect_line_spectral(std::span<const double> samples, double dz, double shift);

/// Derivative of the periodic trigonometric interpolant at the nodes; `length` is the period.
/// The Nyquist mode of even-length data has zero derivative at the nodes.
void spectral_derivative(std::span<const double> values, double length, std::span<double> out);
std::vector<double> spectral_derivative(std::span<const double> values, double length);

}  // namespace hvsl
