#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>

#include "hvsl/spectral.hpp"
#include "hvsl/spline.hpp"

namespace hvsl {

enum class AdvectionBackend { spline, spectral };

std::string_view to_string(AdvectionBackend backend) noexcept;

/// Either 1D constant-shift kernel behind one interface, fixed to a line length and spacing.
class LineAdvector {
public:
    LineAdvector(AdvectionBackend backend, std::size_t n, double dz);

    AdvectionBackend backend() const noexcept;

    void advect_interleaved(std::span<double> data, std::size_t batch,
                            std::span<const double> shifts) const;
    void advect_lines(std::span<double> data, std::span<const double> shifts) const;

private:
    std::variant<SplineAdvector, SpectralAdvector> impl_;
};

}  // namespace hvsl
