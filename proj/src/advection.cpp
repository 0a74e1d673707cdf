#include "hvsl/advection.hpp"

namespace hvsl {

namespace {

std::variant<SplineAdvector, SpectralAdvector> make_impl(AdvectionBackend backend, std::size_t n,
                                                         double dz) {
    if (backend == AdvectionBackend::spectral) return SpectralAdvector(n, dz);
    return SplineAdvector(n, dz);
}

}  // namespace

std::string_view to_string(AdvectionBackend backend) noexcept {
    return backend == AdvectionBackend::spectral ? "spectral" : "spline";
}

LineAdvector::LineAdvector(AdvectionBackend backend, std::size_t n, double dz)
    : impl_(make_impl(backend, n, dz)) {}

AdvectionBackend LineAdvector::backend() const noexcept {
    return std::holds_alternative<SpectralAdvector>(impl_) ? AdvectionBackend::spectral
                                                           : AdvectionBackend::spline;
}

void LineAdvector::advect_interleaved(std::span<double> data, std::size_t batch,
                                      std::span<const double> shifts) const {
    std::visit([&](const auto& k) { k.advect_interleaved(data, batch, shifts); }, impl_);
}

void LineAdvector::advect_lines(std::span<double> data, std::span<const double> shifts) const {
    std::visit([&](const auto& k) { k.advect_lines(data, shifts); }, impl_);
}

}  // namespace hvsl
