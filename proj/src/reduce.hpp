#pragma once

// Fixed-tree pairwise summation: results are independent of thread count and
// call site, so conservation diagnostics are bit-reproducible.

#include <cstddef>

namespace hvsl::detail {

inline double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 16) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += x[k];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

/// Pairwise sum of term(k) for k in [first, first + n).
template <class F>
double pairwise_sum_of(F&& term, std::size_t first, std::size_t n) {
    if (n <= 16) {
        double s = 0.0;
        for (std::size_t k = first; k < first + n; ++k) s += term(k);
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_of(term, first, half) + pairwise_sum_of(term, first + half, n - half);
}

}  // namespace hvsl::detail
