#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "../support/oracles.hpp"
#include "hvsl/advection.hpp"
#include "hvsl/errors.hpp"
#include "hvsl/spectral.hpp"
#include "hvsl/spline.hpp"

using namespace hvsl;

namespace {

double sum(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

std::vector<double> gaussian_line(std::size_t n, double dz, double centre, double width) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = static_cast<double>(i) * dz - centre;
        v[i] = std::exp(-z * z / (width * width));
    }
    return v;
}

}  // namespace

TEST(Spline, BasisValues) {
    EXPECT_DOUBLE_EQ(cubic_bspline(0.0, 1.0), 4.0 / 6.0);
    EXPECT_DOUBLE_EQ(cubic_bspline(0.5, 0.5), 1.0 / 6.0);
    EXPECT_DOUBLE_EQ(cubic_bspline(-1.0, 1.0), 1.0 / 6.0);
    EXPECT_EQ(cubic_bspline(2.0, 1.0), 0.0);
    EXPECT_EQ(cubic_bspline(-3.0, 1.0), 0.0);
}

TEST(Spline, OnesGiveOnes) {
    const std::vector<double> ones(16, 1.0);
    const SplineCoefficients c = spline_coefficients_periodic(ones, 0.1);
    for (double e : c.e) EXPECT_NEAR(e, 1.0, 1e-15);
    for (double z : {0.0, 0.013, 0.77, 1.59, -0.4, 3.3}) EXPECT_NEAR(spline_evaluate(c, z), 1.0, 1e-13);
}

TEST(Spline, CoefficientsMatchDenseSolve) {
    const std::size_t n = 16;
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / n);
    const SplineCoefficients c = spline_coefficients_periodic(s, 0.25);
    const auto dense = oracle::dense_spline_coefficients(s);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(c.e[i], dense[i], 1e-13);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(spline_evaluate(c, 0.25 * static_cast<double>(i)), s[i], 1e-12);
}

TEST(Spline, CyclicSystemHolds) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t n : {4u, 5u, 9u, 64u, 257u}) {
        std::vector<double> s(n);
        for (double& x : s) x = u(rng);
        const auto e = spline_coefficients_periodic(s, 1.0).e;
        for (std::size_t i = 0; i < n; ++i) {
            const double lhs = (e[(i + n - 1) % n] + 4.0 * e[i] + e[(i + 1) % n]) / 6.0;
            EXPECT_NEAR(lhs, s[i], 1e-14) << "n=" << n;
        }
    }
}

TEST(Spline, RejectsShortLines) {
    const std::vector<double> s{1.0, 2.0, 3.0};
    EXPECT_THROW(spline_coefficients_periodic(s, 1.0), KernelError);
    EXPECT_THROW(advect_line_spline(s, 1.0, 0.1), KernelError);
}

TEST(Spline, EvaluationBetweenNodesMatchesDenseOracle) {
    const std::size_t n = 20;
    const double dz = 0.3;
    const double z0 = -1.1;
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = std::sin(2.0 * std::numbers::pi * 3.0 * static_cast<double>(i) / n);
    const SplineCoefficients c = spline_coefficients_periodic(s, dz, z0);
    const auto e = oracle::dense_spline_coefficients(s);
    for (double z : {-1.1, -1.0, 0.05, 0.4321, 2.9, 4.7999}) {
        EXPECT_NEAR(spline_evaluate(c, z), oracle::dense_spline_eval(e, dz, z0, z), 1e-13) << z;
    }
}

TEST(Spline, ZeroShiftIsIdentity) {
    const auto s = gaussian_line(32, 0.2, 3.0, 0.7);
    const auto out = advect_line_spline(s, 0.2, 0.0);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(out[i], s[i], 1e-13);
}

TEST(Spline, WholeCellShiftIsCircularShift) {
    const auto s = gaussian_line(32, 0.2, 3.0, 0.7);
    const auto out = advect_line_spline(s, 0.2, 0.2);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(out[i], s[(i + 31) % 32], 1e-12);
}

TEST(Spline, FractionalShiftMatchesOracleAndMoments) {
    const std::size_t n = 64;
    const double dz = 0.25;
    const auto s = gaussian_line(n, dz, 8.0, 1.0);
    const double shift = 0.37 * dz;
    const auto out = advect_line_spline(s, dz, shift);
    const auto e = oracle::dense_spline_coefficients(s);
    double m0 = 0.0, m1_in = 0.0, m1_out = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double z = static_cast<double>(i) * dz;
        EXPECT_NEAR(out[i], oracle::dense_spline_eval(e, dz, 0.0, z - shift), 1e-13);
        m0 += s[i];
        m1_in += z * s[i];
        m1_out += z * out[i];
    }
    EXPECT_NEAR(m1_out, m1_in + shift * m0, 1e-12 * std::abs(m1_in));
}

TEST(Spline, ReversalIsNotExact) {
    const auto s = gaussian_line(32, 0.2, 3.0, 0.5);
    const auto there = advect_line_spline(s, 0.2, 0.3 * 0.2);
    const auto back = advect_line_spline(there, 0.2, -0.3 * 0.2);
    double err = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) err = std::max(err, std::abs(back[i] - s[i]));
    EXPECT_GT(err, 1e-6);
}

TEST(Spline, InterleavedMatchesSingleLines) {
    const std::size_t n = 24, batch = 5;
    const double dz = 0.1;
    SplineAdvector adv(n, dz);
    std::vector<double> data(n * batch);
    std::vector<double> shifts(batch);
    for (std::size_t b = 0; b < batch; ++b) {
        shifts[b] = (static_cast<double>(b) - 2.0) * 0.037;
        const auto line = gaussian_line(n, dz, 1.2, 0.2 + 0.05 * static_cast<double>(b));
        for (std::size_t k = 0; k < n; ++k) data[k * batch + b] = line[k];
    }
    std::vector<double> copy = data;
    adv.advect_interleaved(data, batch, shifts);
    for (std::size_t b = 0; b < batch; ++b) {
        std::vector<double> line(n);
        for (std::size_t k = 0; k < n; ++k) line[k] = copy[k * batch + b];
        const auto want = advect_line_spline(line, dz, shifts[b]);
        for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(data[k * batch + b], want[k], 1e-15);
    }
}

TEST(Spectral, SingleModeShiftsExactly) {
    const std::size_t n = 32;
    const double dz = 2.0 * std::numbers::pi / n * 1.5;  // period 3 pi
    const double beta = 2.0 * std::numbers::pi / (dz * n);
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = std::cos(beta * dz * static_cast<double>(i));
    const double shift = 0.731;
    const auto out = advect_line_spectral(s, dz, shift);
    for (std::size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(out[i], std::cos(beta * (dz * static_cast<double>(i) - shift)), 1e-13);
    }
}

TEST(Spectral, FullPeriodIsIdentity) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> s(30);
    for (double& x : s) x = u(rng);
    const auto out = advect_line_spectral(s, 0.1, 3.0);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(out[i], s[i], 1e-13);
}

TEST(Spectral, MatchesDftOracleIncludingNyquist) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t n : {2u, 7u, 16u, 33u}) {
        std::vector<double> s(n);
        for (double& x : s) x = u(rng);
        const double dz = 0.17;
        const double shift = 0.41;
        const auto out = advect_line_spectral(s, dz, shift);
        const auto want = oracle::dft_shift(s, dz, shift);
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(out[i], want[i], 1e-13) << "n=" << n;
    }
}

TEST(Spectral, MassIsExact) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> s(128);
    for (double& x : s) x = u(rng);
    for (double shift : {0.01, -0.33, 5.5}) {
        const auto out = advect_line_spectral(s, 0.05, shift);
        EXPECT_NEAR(sum(out), sum(s), 1e-13 * 128 * max_abs(s));
    }
}

TEST(Spectral, CompositionAndReversalForOddLength) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> s(39);
    for (double& x : s) x = u(rng);
    const auto ab = advect_line_spectral(advect_line_spectral(s, 0.1, 0.123), 0.1, 0.456);
    const auto direct = advect_line_spectral(s, 0.1, 0.579);
    const auto back = advect_line_spectral(advect_line_spectral(s, 0.1, 0.123), 0.1, -0.123);
    for (std::size_t i = 0; i < s.size(); ++i) {
        EXPECT_NEAR(ab[i], direct[i], 1e-13);
        EXPECT_NEAR(back[i], s[i], 1e-13);
    }
}

TEST(Spectral, EvenLengthLosesOnlyTheNyquistMode) {
    // The real Nyquist bin is scaled by cos(shift beta), so a shift and its reverse damp it.
    const std::size_t n = 16;
    std::vector<double> nyq(n), smooth(n);
    for (std::size_t i = 0; i < n; ++i) {
        nyq[i] = (i % 2 == 0) ? 1.0 : -1.0;
        smooth[i] = std::sin(2.0 * std::numbers::pi * 3.0 * static_cast<double>(i) / n);
    }
    const double dz = 0.1, s = 0.03;
    const double c = std::cos(s * std::numbers::pi / dz);
    const auto back = advect_line_spectral(advect_line_spectral(nyq, dz, s), dz, -s);
    const auto same = advect_line_spectral(advect_line_spectral(smooth, dz, s), dz, -s);
    for (std::size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(back[i], c * c * nyq[i], 1e-13);
        EXPECT_NEAR(same[i], smooth[i], 1e-13);
    }
}

TEST(Spectral, RejectsTooShortLines) {
    const std::vector<double> s{1.0};
    EXPECT_THROW(advect_line_spectral(s, 1.0, 0.2), KernelError);
}

TEST(Spectral, DerivativeMatchesDftOracle) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t n : {8u, 15u, 64u}) {
        std::vector<double> s(n);
        for (double& x : s) x = u(rng);
        const auto d = spectral_derivative(s, 2.5);
        const auto want = oracle::dft_derivative(s, 2.5);
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(d[i], want[i], 1e-12) << "n=" << n;
    }
}

TEST(LineAdvector, BackendsAgreeOnSmoothData) {
    const std::size_t n = 64, batch = 3;
    const double dz = 0.2;
    std::vector<double> a(n * batch), b;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < batch; ++j) a[k * batch + j] = std::sin(2.0 * std::numbers::pi * k / n);
    }
    b = a;
    const std::vector<double> shifts{0.05, -0.11, 0.3};
    LineAdvector(AdvectionBackend::spline, n, dz).advect_interleaved(a, batch, shifts);
    LineAdvector(AdvectionBackend::spectral, n, dz).advect_interleaved(b, batch, shifts);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-5);
    EXPECT_EQ(to_string(AdvectionBackend::spline), "spline");
    EXPECT_EQ(to_string(AdvectionBackend::spectral), "spectral");
}
