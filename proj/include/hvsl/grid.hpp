#pragma once

#include <cstddef>
#include <vector>

namespace hvsl {

struct RunConfig;

/// Extents and node counts of the 1D-2V phase space.
struct GridConfig {
    std::size_t m1 = 16;   // spatial points
    std::size_t n1 = 64;   // v1 points
    std::size_t n2 = 64;   // v2 points
    double lx = 1.0;
    double v1_min = -1.0;
    double v1_max = 1.0;
    double v2_min = -1.0;
    double v2_max = 1.0;

    bool operator==(const GridConfig&) const = default;
};

/// Uniform periodic axis {lo + j*step, j = 0..n-1}; hi is the periodic image of lo.
struct UniformAxis {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n = 0;
    double step = 0.0;
    std::vector<double> nodes;

    double length() const noexcept { return hi - lo; }
};

/// Uniform periodic phase-space grid plus the spatial Fourier frequencies.
///
/// Index order of every phase-space array is f[i][j1][j2] with j2 fastest.
/// The spatial frequencies `xi` are stored in FFT-natural order
/// (0, 1, ..., floor(M/2), -floor((M-1)/2), ..., -1) times 2*pi/Lx.
struct PhaseGrid {
    UniformAxis x;
    UniformAxis v1;
    UniformAxis v2;
    std::vector<double> xi;

    std::size_t m1() const noexcept { return x.n; }
    std::size_t n1() const noexcept { return v1.n; }
    std::size_t n2() const noexcept { return v2.n; }
    double lx() const noexcept { return x.length(); }
    double dx() const noexcept { return x.step; }
    double dv1() const noexcept { return v1.step; }
    double dv2() const noexcept { return v2.step; }

    std::size_t velocity_size() const noexcept { return v1.n * v2.n; }
    std::size_t size() const noexcept { return x.n * v1.n * v2.n; }

    std::size_t index(std::size_t i, std::size_t j1, std::size_t j2) const noexcept {
        return (i * v1.n + j1) * v2.n + j2;
    }
};

inline constexpr std::size_t kMinNodes = 4;

/// Build a phase grid; throws ConfigError on non-positive extents or counts below kMinNodes.
PhaseGrid make_phase_grid(const GridConfig& config);
PhaseGrid make_phase_grid(const RunConfig& config);

/// Angular frequency stored at FFT slot `k_index` for an axis of `count` points and period `length`.
double fft_frequency(std::size_t k_index, std::size_t count, double length);

/// Frequency stored at slot `k_index` of the grid's spatial dual; throws std::out_of_range.
double frequency_of(std::size_t k_index, const PhaseGrid& grid);

}  // namespace hvsl
