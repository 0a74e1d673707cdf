#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oracle {

std::vector<double> dense_solve(Matrix a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        }
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double m = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= m * a[col][c];
            b[r] -= m * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

namespace {

double bspline(double r) {
    r = std::abs(r);
    if (r < 1.0) return 2.0 / 3.0 - r * r + 0.5 * r * r * r;
    if (r < 2.0) return (2.0 - r) * (2.0 - r) * (2.0 - r) / 6.0;
    return 0.0;
}

}  // namespace

std::vector<double> dense_spline_coefficients(const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    Matrix a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // value of the j-th periodic basis function at node i
            for (int img = -2; img <= 2; ++img) {
                a[i][j] += bspline(static_cast<double>(i) - static_cast<double>(j) -
                                   static_cast<double>(img) * static_cast<double>(n));
            }
        }
    }
    return dense_solve(a, samples);
}

double dense_spline_eval(const std::vector<double>& e, double dz, double z0, double z) {
    const double n = static_cast<double>(e.size());
    const double period = n * dz;
    double s = 0.0;
    for (std::size_t j = 0; j < e.size(); ++j) {
        for (int img = -3; img <= 3; ++img) {
            const double zj = z0 + static_cast<double>(j) * dz + static_cast<double>(img) * period;
            s += e[j] * bspline((z - zj) / dz);
        }
    }
    return s;
}

namespace {

std::vector<std::complex<double>> dft(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = -2.0 * std::numbers::pi * static_cast<double>(k * j % n) / static_cast<double>(n);
            s += v[j] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[k] = s;
    }
    return out;
}

std::vector<double> idft_real(const std::vector<std::complex<double>>& c) {
    const std::size_t n = c.size();
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::complex<double> s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double ang = 2.0 * std::numbers::pi * static_cast<double>(k * j % n) / static_cast<double>(n);
            s += c[k] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[j] = s.real() / static_cast<double>(n);
    }
    return out;
}

long long signed_index(std::size_t k, std::size_t n) {
    return k <= n / 2 ? static_cast<long long>(k) : static_cast<long long>(k) - static_cast<long long>(n);
}

}  // namespace

std::vector<double> dft_derivative(const std::vector<double>& values, double length) {
    const std::size_t n = values.size();
    auto c = dft(values);
    for (std::size_t k = 0; k < n; ++k) {
        const long long m = signed_index(k, n);
        if (n % 2 == 0 && k == n / 2) {
            c[k] = 0.0;
            continue;
        }
        c[k] *= std::complex<double>(0.0, 2.0 * std::numbers::pi * static_cast<double>(m) / length);
    }
    return idft_real(c);
}

std::vector<double> dft_shift(const std::vector<double>& values, double dz, double shift) {
    const std::size_t n = values.size();
    const double length = dz * static_cast<double>(n);
    auto c = dft(values);
    for (std::size_t k = 0; k < n; ++k) {
        const double beta = 2.0 * std::numbers::pi * static_cast<double>(signed_index(k, n)) / length;
        if (n % 2 == 0 && k == n / 2) {
            c[k] = c[k].real() * std::cos(shift * beta);
        } else {
            c[k] *= std::polar(1.0, -shift * beta);
        }
    }
    return idft_real(c);
}

Mat2 expm(const Mat2& a) {
    const double norm = std::max(std::abs(a[0]) + std::abs(a[1]), std::abs(a[2]) + std::abs(a[3]));
    int squarings = 0;
    double scale = 1.0;
    while (norm * scale > 0.01) {
        scale *= 0.5;
        ++squarings;
    }
    const Mat2 x{a[0] * scale, a[1] * scale, a[2] * scale, a[3] * scale};
    Mat2 result{1.0, 0.0, 0.0, 1.0};
    Mat2 term{1.0, 0.0, 0.0, 1.0};
    for (int k = 1; k <= 20; ++k) {
        const Mat2 t{term[0] * x[0] + term[1] * x[2], term[0] * x[1] + term[1] * x[3],
                     term[2] * x[0] + term[3] * x[2], term[2] * x[1] + term[3] * x[3]};
        term = {t[0] / k, t[1] / k, t[2] / k, t[3] / k};
        for (int e = 0; e < 4; ++e) result[e] += term[e];
    }
    for (int s = 0; s < squarings; ++s) {
        const Mat2 r = result;
        result = {r[0] * r[0] + r[1] * r[2], r[0] * r[1] + r[1] * r[3], r[2] * r[0] + r[3] * r[2],
                  r[2] * r[1] + r[3] * r[3]};
    }
    return result;
}

double simpson(const std::function<double(double)>& f, double a, double b, std::size_t panels) {
    if (panels % 2 != 0) ++panels;
    const double h = (b - a) / static_cast<double>(panels);
    double s = f(a) + f(b);
    for (std::size_t k = 1; k < panels; ++k) s += (k % 2 == 1 ? 4.0 : 2.0) * f(a + static_cast<double>(k) * h);
    return s * h / 3.0;
}

namespace {

using V2 = std::array<double, 2>;

struct BulkOde {
    double b, jr, gp1;
    V2 ubar;
    // (u - ubar + w) x B - grad(p)/rho with B = (0, 0, b): (a2 b - gp1, -a1 b).
    V2 operator()(const V2& u) const {
        const double a1 = u[0] - ubar[0];
        const double a2 = u[1] - ubar[1] + jr;
        return {a2 * b - gp1, -a1 * b};
    }
};

std::vector<V2> rk4_trajectory(const BulkOde& ode, V2 u0, double dt, std::size_t steps) {
    const double h = dt / static_cast<double>(steps);
    std::vector<V2> traj(steps + 1);
    traj[0] = u0;
    for (std::size_t s = 0; s < steps; ++s) {
        const V2& u = traj[s];
        const V2 k1 = ode(u);
        const V2 k2 = ode({u[0] + 0.5 * h * k1[0], u[1] + 0.5 * h * k1[1]});
        const V2 k3 = ode({u[0] + 0.5 * h * k2[0], u[1] + 0.5 * h * k2[1]});
        const V2 k4 = ode({u[0] + h * k3[0], u[1] + h * k3[1]});
        traj[s + 1] = {u[0] + h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
                       u[1] + h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
    }
    return traj;
}

}  // namespace

std::array<double, 2> u_bar_fixed_point(std::array<double, 2> u_n, double b, double jr, double gp1, double dt) {
    const std::size_t steps = 2000;
    const double h = dt / static_cast<double>(steps);
    V2 ubar = u_n;
    for (int iter = 0; iter < 200; ++iter) {
        const auto traj = rk4_trajectory(BulkOde{b, jr, gp1, ubar}, u_n, dt, steps);
        V2 avg{0.0, 0.0};
        for (int c = 0; c < 2; ++c) {
            double s = traj[0][c] + traj[steps][c];
            for (std::size_t k = 1; k < steps; ++k) s += (k % 2 == 1 ? 4.0 : 2.0) * traj[k][c];
            avg[c] = s * h / 3.0 / dt;
        }
        const double change = std::max(std::abs(avg[0] - ubar[0]), std::abs(avg[1] - ubar[1]));
        ubar = avg;
        if (change < 1e-15) break;
    }
    return ubar;
}

std::array<double, 2> bulk_velocity_end(std::array<double, 2> u_n, std::array<double, 2> ubar, double b, double jr,
                                        double gp1, double dt) {
    return rk4_trajectory(BulkOde{b, jr, gp1, ubar}, u_n, dt, 2000).back();
}

std::complex<double> plasma_z(std::complex<double> zeta) {
    // Principal integral (1/sqrt(pi)) int exp(-x^2) / (x - zeta) dx along the real line.
    const double d = std::max(std::abs(zeta.imag()), 1e-3);
    const double h = d / 8.0;
    const double limit = 12.0 + std::abs(zeta.real());
    std::complex<double> s = 0.0;
    for (double x = -limit; x <= limit; x += h) s += std::exp(-x * x) / (x - zeta);
    s *= h / std::sqrt(std::numbers::pi);
    if (zeta.imag() < 0.0) s += 2.0 * std::complex<double>(0.0, 1.0) * std::sqrt(std::numbers::pi) * std::exp(-zeta * zeta);
    return s;
}

std::complex<double> landau_root(double vt, double kappa, std::complex<double> guess) {
    const double c = vt * vt / (2.0 * kappa);
    auto f = [&](std::complex<double> z) { return 1.0 + z * plasma_z(z) + c; };
    std::complex<double> z0 = guess;
    std::complex<double> z1 = guess + std::complex<double>(1e-3, 1e-3);
    std::complex<double> f0 = f(z0);
    std::complex<double> f1 = f(z1);
    for (int it = 0; it < 100; ++it) {
        const std::complex<double> z2 = z1 - f1 * (z1 - z0) / (f1 - f0);
        z0 = z1;
        f0 = f1;
        z1 = z2;
        f1 = f(z1);
        if (std::abs(z1 - z0) < 1e-13) return z1;
    }
    throw std::runtime_error("landau_root: secant iteration did not converge");
}

}  // namespace oracle
