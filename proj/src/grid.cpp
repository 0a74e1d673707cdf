#include "hvsl/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hvsl/config.hpp"
#include "hvsl/errors.hpp"

namespace hvsl {

namespace {

UniformAxis make_axis(const char* name, double lo, double hi, std::size_t n) {
    if (n < kMinNodes) {
        throw ConfigError(std::string(name) + ": node count " + std::to_string(n) +
                          " is below the minimum of " + std::to_string(kMinNodes));
    }
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
        throw ConfigError(std::string(name) + ": extent must be positive and finite");
    }
    UniformAxis axis;
    axis.lo = lo;
    axis.hi = hi;
    axis.n = n;
    axis.step = (hi - lo) / static_cast<double>(n);
    axis.nodes.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        axis.nodes[j] = lo + static_cast<double>(j) * axis.step;
    }
    return axis;
}

}  // namespace

double fft_frequency(std::size_t k_index, std::size_t count, double length) {
    const auto k = static_cast<long long>(k_index);
    const auto m = static_cast<long long>(count);
    const long long signed_k = (k <= m / 2) ? k : k - m;
    return 2.0 * std::numbers::pi / length * static_cast<double>(signed_k);
}

PhaseGrid make_phase_grid(const GridConfig& config) {
    PhaseGrid grid;
    grid.x = make_axis("grid.m1/lx", 0.0, config.lx, config.m1);
    grid.v1 = make_axis("grid.n1/v1", config.v1_min, config.v1_max, config.n1);
    grid.v2 = make_axis("grid.n2/v2", config.v2_min, config.v2_max, config.n2);
    grid.xi.resize(config.m1);
    for (std::size_t k = 0; k < config.m1; ++k) {
        grid.xi[k] = fft_frequency(k, config.m1, config.lx);
    }
    return grid;
}

PhaseGrid make_phase_grid(const RunConfig& config) { return make_phase_grid(config.grid); }

double frequency_of(std::size_t k_index, const PhaseGrid& grid) {
    if (k_index >= grid.xi.size()) {
        throw std::out_of_range("frequency index " + std::to_string(k_index) + " out of range [0, " +
                                std::to_string(grid.xi.size()) + ")");
    }
    return grid.xi[k_index];
}

}  // namespace hvsl
