#include "hvsl/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "hvsl/errors.hpp"

namespace hvsl {

namespace {

void require_length(std::size_t n) {
    if (n < 2) throw KernelError("spectral advection needs at least 2 nodes, got " + std::to_string(n));
}

}  // namespace

SpectralAdvector::SpectralAdvector(std::size_t n, double dz) : n_(n), dz_(dz) {
    require_length(n);
    const double length = dz * static_cast<double>(n);
    beta_.resize(n / 2 + 1);
    for (std::size_t k = 0; k < beta_.size(); ++k) {
        beta_[k] = 2.0 * std::numbers::pi / length * static_cast<double>(k);
    }
}

void SpectralAdvector::advect_interleaved(std::span<double> data, std::size_t batch,
                                          std::span<const double> shifts) const {
    if (shifts.size() != batch || data.size() != n_ * batch) {
        throw KernelError("spectral advection: shift count or data size mismatch");
    }
    const auto& plan = detail::interleaved_plan(n_, batch);
    const std::size_t bins = plan.bins();
    std::vector<std::complex<double>> spec(bins * batch);
    plan.forward(data.data(), spec.data());
    const bool has_nyquist = (n_ % 2 == 0);
    const double norm = 1.0 / static_cast<double>(n_);
    for (std::size_t k = 1; k < bins; ++k) {
        std::complex<double>* row = spec.data() + k * batch;
        if (has_nyquist && k + 1 == bins) {
            for (std::size_t b = 0; b < batch; ++b) {
                row[b] = std::complex<double>(row[b].real() * std::cos(shifts[b] * beta_[k]), 0.0);
            }
        } else {
            for (std::size_t b = 0; b < batch; ++b) row[b] *= std::polar(1.0, -shifts[b] * beta_[k]);
        }
    }
    plan.backward(spec.data(), data.data());
    for (double& v : data) v *= norm;
}

void SpectralAdvector::advect_lines(std::span<double> data, std::span<const double> shifts) const {
    const std::size_t count = shifts.size();
    if (data.size() != n_ * count) {
        throw KernelError("spectral advection: shift count or data size mismatch");
    }
    const auto& plan = detail::contiguous_plan(n_, count);
    const std::size_t bins = plan.bins();
    std::vector<std::complex<double>> spec(bins * count);
    plan.forward(data.data(), spec.data());
    const bool has_nyquist = (n_ % 2 == 0);
    const double norm = 1.0 / static_cast<double>(n_);
    for (std::size_t line = 0; line < count; ++line) {
        std::complex<double>* s = spec.data() + line * bins;
        const double shift = shifts[line];
        for (std::size_t k = 1; k < bins; ++k) {
            if (has_nyquist && k + 1 == bins) {
                s[k] = std::complex<double>(s[k].real() * std::cos(shift * beta_[k]), 0.0);
            } else {
                s[k] *= std::polar(1.0, -shift * beta_[k]);
            }
        }
    }
    plan.backward(spec.data(), data.data());
    for (double& v : data) v *= norm;
}

std::vector<double> advect_line_spectral(std::span<const double> samples, double dz, double shift) {
    require_length(samples.size());
    std::vector<double> out(samples.begin(), samples.end());
    SpectralAdvector(samples.size(), dz).advect_lines(out, std::span<const double>(&shift, 1));
    return out;
}

void spectral_derivative(std::span<const double> values, double length, std::span<double> out) {
    const std::size_t n = values.size();
    require_length(n);
    if (out.size() != n) throw KernelError("spectral derivative: output size mismatch");
    const auto& plan = detail::contiguous_plan(n, 1);
    std::vector<std::complex<double>> spec(plan.bins());
    plan.forward(values.data(), spec.data());
    const double scale = 2.0 * std::numbers::pi / length;
    for (std::size_t k = 0; k < spec.size(); ++k) {
        if (k == 0 || (n % 2 == 0 && k == n / 2)) {
            spec[k] = 0.0;
        } else {
            spec[k] *= std::complex<double>(0.0, scale * static_cast<double>(k));
        }
    }
    plan.backward(spec.data(), out.data());
    const double norm = 1.0 / static_cast<double>(n);
    for (double& v : out) v *= norm;
}

std::vector<double> spectral_derivative(std::span<const double> values, double length) {
    std::vector<double> out(values.size());
    spectral_derivative(values, length, out);
    return out;
}

}  // namespace hvsl
