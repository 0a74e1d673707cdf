#pragma once

// Thin RAII layer over FFTW's batched real transforms. Internal to the library.

#include <complex>
#include <cstddef>
#include <memory>

namespace hvsl::detail {

/// Batch of `howmany` real lines of length n. Element k of line b lives at
/// in[k * stride + b * real_dist]; bin k of line b lives at out[k * stride + b * cplx_dist].
class RealFftPlan {
public:
    RealFftPlan(std::size_t n, std::size_t howmany, std::size_t stride, std::size_t real_dist,
                std::size_t cplx_dist);
    ~RealFftPlan();
    RealFftPlan(const RealFftPlan&) = delete;
    RealFftPlan& operator=(const RealFftPlan&) = delete;

    std::size_t size() const noexcept { return n_; }
    std::size_t bins() const noexcept { return n_ / 2 + 1; }

    void forward(const double* in, std::complex<double>* out) const;
    /// Unnormalized inverse; overwrites `in`.
    void backward(std::complex<double>* in, double* out) const;

private:
    std::size_t n_;
    void* forward_;
    void* backward_;
};

/// Process-wide cache of plans keyed by shape. Plans are immutable once created.
const RealFftPlan& fft_plan(std::size_t n, std::size_t howmany, std::size_t stride,
                            std::size_t real_dist, std::size_t cplx_dist);

/// Plan for `batch` lines interleaved as [n][batch] (complex side [n/2+1][batch]).
inline const RealFftPlan& interleaved_plan(std::size_t n, std::size_t batch) {
    return fft_plan(n, batch, batch, 1, 1);
}

/// Plan for `count` contiguous lines laid out [count][n] (complex side [count][n/2+1]).
inline const RealFftPlan& contiguous_plan(std::size_t n, std::size_t count) {
    return fft_plan(n, count, 1, n, n / 2 + 1);
}

/// Unnormalized in-place complex DFT of `count` contiguous lines of length n.
/// sign = -1 uses exp(-2 pi i jk/n), sign = +1 uses exp(+2 pi i jk/n).
void complex_dft(std::complex<double>* data, std::size_t n, std::size_t count, int sign);

}  // namespace hvsl::detail
