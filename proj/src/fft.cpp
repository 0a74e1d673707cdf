#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace hvsl::detail {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

RealFftPlan::RealFftPlan(std::size_t n, std::size_t howmany, std::size_t stride,
                         std::size_t real_dist, std::size_t cplx_dist)
    : n_(n) {
    const int len = static_cast<int>(n);
    const std::size_t bins = n / 2 + 1;
    const std::size_t real_extent = (n - 1) * stride + (howmany - 1) * real_dist + 1;
    const std::size_t cplx_extent = (bins - 1) * stride + (howmany - 1) * cplx_dist + 1;
    double* r = fftw_alloc_real(real_extent);
    fftw_complex* c = fftw_alloc_complex(cplx_extent);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward_ = fftw_plan_many_dft_r2c(1, &len, static_cast<int>(howmany), r, nullptr,
                                      static_cast<int>(stride), static_cast<int>(real_dist), c, nullptr,
                                      static_cast<int>(stride), static_cast<int>(cplx_dist), flags);
    backward_ = fftw_plan_many_dft_c2r(1, &len, static_cast<int>(howmany), c, nullptr,
                                       static_cast<int>(stride), static_cast<int>(cplx_dist), r, nullptr,
                                       static_cast<int>(stride), static_cast<int>(real_dist),
                                       flags | FFTW_DESTROY_INPUT);
    fftw_free(r);
    fftw_free(c);
}

RealFftPlan::~RealFftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(forward_));
    fftw_destroy_plan(static_cast<fftw_plan>(backward_));
}

void RealFftPlan::forward(const double* in, std::complex<double>* out) const {
    fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_), const_cast<double*>(in),
                         reinterpret_cast<fftw_complex*>(out));
}

void RealFftPlan::backward(std::complex<double>* in, double* out) const {
    fftw_execute_dft_c2r(static_cast<fftw_plan>(backward_), reinterpret_cast<fftw_complex*>(in), out);
}

const RealFftPlan& fft_plan(std::size_t n, std::size_t howmany, std::size_t stride,
                            std::size_t real_dist, std::size_t cplx_dist) {
    using Key = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, std::size_t>;
    // The mutex must outlive the cache: construct it first.
    std::mutex& mutex = planner_mutex();
    static std::map<Key, std::unique_ptr<RealFftPlan>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[Key{n, howmany, stride, real_dist, cplx_dist}];
    if (!slot) slot = std::make_unique<RealFftPlan>(n, howmany, stride, real_dist, cplx_dist);
    return *slot;
}

void complex_dft(std::complex<double>* data, std::size_t n, std::size_t count, int sign) {
    if (n == 0 || count == 0) return;
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    const int len = static_cast<int>(n);
    fftw_plan plan = nullptr;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_many_dft(1, &len, static_cast<int>(count), buf, nullptr, 1, len, buf, nullptr, 1, len,
                                  sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
}

}  // namespace hvsl::detail
