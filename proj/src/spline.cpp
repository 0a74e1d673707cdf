#include "hvsl/spline.hpp"

#include <cmath>
#include <string>

#include "hvsl/errors.hpp"

namespace hvsl {

namespace {

struct StencilWeights {
    long long offset;  // index of the left-most contributing coefficient relative to the node
    double w[4];
};

// Weights for sampling the spline at node_i - shift, identical for every node.
StencilWeights stencil_for_shift(double shift_in_cells) {
    const double u = -shift_in_cells;
    const double cell = std::floor(u);
    double t = u - cell;
    if (t >= 1.0) t = 1.0;
    const double omt = 1.0 - t;
    StencilWeights s;
    s.offset = static_cast<long long>(cell) - 1;
    s.w[0] = omt * omt * omt / 6.0;
    s.w[1] = (4.0 - 6.0 * t * t + 3.0 * t * t * t) / 6.0;
    s.w[2] = (1.0 + 3.0 * t + 3.0 * t * t - 3.0 * t * t * t) / 6.0;
    s.w[3] = t * t * t / 6.0;
    return s;
}

std::size_t wrap_index(long long k, std::size_t n) {
    const auto m = static_cast<long long>(n);
    long long r = k % m;
    if (r < 0) r += m;
    return static_cast<std::size_t>(r);
}

void require_support(std::size_t n) {
    if (n < 4) {
        throw KernelError("cubic spline needs at least 4 nodes, got " + std::to_string(n));
    }
}

}  // namespace

double cubic_bspline(double z, double dz) {
    const double r = std::abs(z) / dz;
    if (r < 1.0) return (4.0 - 6.0 * r * r + 3.0 * r * r * r) / 6.0;
    if (r < 2.0) {
        const double a = 2.0 - r;
        return a * a * a / 6.0;
    }
    return 0.0;
}

PeriodicSplineSolver::PeriodicSplineSolver(std::size_t n) : n_(n) {
    require_support(n);
    // Matrix circ(1, 4, 1); rhs is scaled by 6 in solve().
    const double gamma = -4.0;
    const double first_diag = 4.0 - gamma;
    v_last_ = 1.0 / gamma;
    const double last_diag = 4.0 - 1.0 * v_last_;

    inv_pivot_.resize(n);
    upper_.resize(n);
    double pivot = first_diag;
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) {
            const double diag = (k + 1 == n) ? last_diag : 4.0;
            pivot = diag - upper_[k - 1];
        }
        inv_pivot_[k] = 1.0 / pivot;
        upper_[k] = inv_pivot_[k];  // super-diagonal is 1
    }

    correction_.assign(n, 0.0);
    correction_[0] = gamma;
    correction_[n - 1] = 1.0;
    // Forward/back substitution against A'.
    correction_[0] *= inv_pivot_[0];
    for (std::size_t k = 1; k < n; ++k) {
        correction_[k] = (correction_[k] - correction_[k - 1]) * inv_pivot_[k];
    }
    for (std::size_t k = n - 1; k-- > 0;) {
        correction_[k] -= upper_[k] * correction_[k + 1];
    }
    denominator_ = 1.0 + correction_[0] + v_last_ * correction_[n - 1];
}

void PeriodicSplineSolver::solve(std::span<double> line) const {
    solve_interleaved(line, 1);
}

void PeriodicSplineSolver::solve_interleaved(std::span<double> data, std::size_t batch) const {
    if (data.size() != n_ * batch) {
        throw KernelError("spline solve: data size does not match line length times batch");
    }
    double* y = data.data();
    const std::size_t n = n_;

    for (std::size_t b = 0; b < batch; ++b) y[b] = 6.0 * y[b] * inv_pivot_[0];
    for (std::size_t k = 1; k < n; ++k) {
        double* row = y + k * batch;
        const double* prev = row - batch;
        const double ip = inv_pivot_[k];
        for (std::size_t b = 0; b < batch; ++b) row[b] = (6.0 * row[b] - prev[b]) * ip;
    }
    for (std::size_t k = n - 1; k-- > 0;) {
        double* row = y + k * batch;
        const double* next = row + batch;
        const double up = upper_[k];
        for (std::size_t b = 0; b < batch; ++b) row[b] -= up * next[b];
    }
    const double* last = y + (n - 1) * batch;
    // e = y - (v.y / (1 + v.z)) z, with v.y = y_0 + v_last y_{n-1}.
    for (std::size_t k = 0; k < n; ++k) {
        double* row = y + k * batch;
        const double zk = correction_[k] / denominator_;
        if (k == 0 || k == n - 1) continue;
        for (std::size_t b = 0; b < batch; ++b) row[b] -= zk * (y[b] + v_last_ * last[b]);
    }
    // Rows 0 and n-1 hold the dot-product inputs; update them last.
    const double z0 = correction_[0] / denominator_;
    const double zl = correction_[n - 1] / denominator_;
    double* first = y;
    double* lastw = y + (n - 1) * batch;
    for (std::size_t b = 0; b < batch; ++b) {
        const double dot = first[b] + v_last_ * lastw[b];
        first[b] -= z0 * dot;
        lastw[b] -= zl * dot;
    }
}

SplineCoefficients spline_coefficients_periodic(std::span<const double> samples, double dz, double z0) {
    require_support(samples.size());
    SplineCoefficients c;
    c.e.assign(samples.begin(), samples.end());
    c.dz = dz;
    c.z0 = z0;
    PeriodicSplineSolver(samples.size()).solve(c.e);
    return c;
}

double spline_evaluate(const SplineCoefficients& coeffs, double z) {
    const std::size_t n = coeffs.e.size();
    const double u = (z - coeffs.z0) / coeffs.dz;
    const double cell = std::floor(u);
    double t = u - cell;
    if (t >= 1.0) t = 1.0;
    const auto m = static_cast<long long>(cell);
    const double omt = 1.0 - t;
    const double w0 = omt * omt * omt / 6.0;
    const double w1 = (4.0 - 6.0 * t * t + 3.0 * t * t * t) / 6.0;
    const double w2 = (1.0 + 3.0 * t + 3.0 * t * t - 3.0 * t * t * t) / 6.0;
    const double w3 = t * t * t / 6.0;
    return w0 * coeffs.e[wrap_index(m - 1, n)] + w1 * coeffs.e[wrap_index(m, n)] +
           w2 * coeffs.e[wrap_index(m + 1, n)] + w3 * coeffs.e[wrap_index(m + 2, n)];
}

std::vector<double> advect_line_spline(std::span<const double> samples, double dz, double shift) {
    require_support(samples.size());
    std::vector<double> out(samples.begin(), samples.end());
    const double s = shift;
    SplineAdvector(samples.size(), dz).advect_lines(out, std::span<const double>(&s, 1));
    return out;
}

SplineAdvector::SplineAdvector(std::size_t n, double dz) : solver_(n), dz_(dz) {}

void SplineAdvector::advect_interleaved(std::span<double> data, std::size_t batch,
                                        std::span<const double> shifts) const {
    const std::size_t n = solver_.size();
    if (shifts.size() != batch || data.size() != n * batch) {
        throw KernelError("spline advection: shift count or data size mismatch");
    }
    // Coefficients with three wrapped rows appended so every 4-tap stencil is contiguous.
    std::vector<double> ext((n + 3) * batch);
    std::copy(data.begin(), data.end(), ext.begin());
    solver_.solve_interleaved(std::span<double>(ext.data(), n * batch), batch);
    std::copy(ext.begin(), ext.begin() + 3 * static_cast<std::ptrdiff_t>(batch),
              ext.begin() + static_cast<std::ptrdiff_t>(n * batch));

    std::vector<std::size_t> base(batch);
    std::vector<double> w(4 * batch);
    for (std::size_t b = 0; b < batch; ++b) {
        const StencilWeights st = stencil_for_shift(shifts[b] / dz_);
        base[b] = wrap_index(st.offset, n);
        for (int r = 0; r < 4; ++r) w[r * batch + b] = st.w[r];
    }
    const double* w0 = w.data();
    const double* w1 = w0 + batch;
    const double* w2 = w1 + batch;
    const double* w3 = w2 + batch;
    double* out = data.data();
    const double* e = ext.data();
    for (std::size_t k = 0; k < n; ++k) {
        double* row = out + k * batch;
        for (std::size_t b = 0; b < batch; ++b) {
            std::size_t r0 = k + base[b];
            if (r0 >= n) r0 -= n;
            const double* col = e + r0 * batch + b;
            row[b] = w0[b] * col[0] + w1[b] * col[batch] + w2[b] * col[2 * batch] + w3[b] * col[3 * batch];
        }
    }
}

void SplineAdvector::advect_lines(std::span<double> data, std::span<const double> shifts) const {
    const std::size_t n = solver_.size();
    if (data.size() != n * shifts.size()) {
        throw KernelError("spline advection: shift count or data size mismatch");
    }
    std::vector<double> ext(n + 3);
    for (std::size_t line = 0; line < shifts.size(); ++line) {
        double* out = data.data() + line * n;
        std::copy(out, out + n, ext.begin());
        solver_.solve(std::span<double>(ext.data(), n));
        ext[n] = ext[0];
        ext[n + 1] = ext[1];
        ext[n + 2] = ext[2];
        const StencilWeights st = stencil_for_shift(shifts[line] / dz_);
        const std::size_t base = wrap_index(st.offset, n);
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t r0 = k + base;
            if (r0 >= n) r0 -= n;
            const double* col = ext.data() + r0;
            out[k] = st.w[0] * col[0] + st.w[1] * col[1] + st.w[2] * col[2] + st.w[3] * col[3];
        }
    }
}

}  // namespace hvsl
