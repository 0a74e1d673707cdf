#include "hvsl/exact_split.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "hvsl/errors.hpp"

namespace hvsl {

namespace {

constexpr double kSeriesThreshold = 1e-4;
constexpr double kResonanceTolerance = 1e-10;

// sin(t)/t and (1 - cos t)/t without cancellation.
double sinc(double t) {
    if (std::abs(t) < kSeriesThreshold) {
        const double t2 = t * t;
        return 1.0 - t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0));
    }
    return std::sin(t) / t;
}

double versinc(double t) {
    if (std::abs(t) < kSeriesThreshold) {
        const double t2 = t * t;
        return t / 2.0 * (1.0 - t2 / 12.0 * (1.0 - t2 / 30.0 * (1.0 - t2 / 56.0)));
    }
    const double h = std::sin(0.5 * t);
    return 2.0 * h * h / t;
}

void check_resonance(double theta) {
    const double r = std::abs(theta);
    const double k = std::round(r / (2.0 * std::numbers::pi));
    if (k >= 1.0 && std::abs(r - 2.0 * std::numbers::pi * k) < kResonanceTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "rotation angle dt*|B| = " << theta << " is within " << kResonanceTolerance << " of "
            << k << "*2pi; the averaging matrix is singular, reduce dt";
        throw StepSizeError(msg.str());
    }
}

}  // namespace

PressureSplit decompose_pressure(double gp1, double b) {
    if (b == 0.0) return {0.0, {gp1, 0.0}};
    return {gp1 / b, {0.0, 0.0}};
}

PvbFrozenPoint make_frozen_point(double b, double dt, double jr, double gp1) {
    const PressureSplit split = decompose_pressure(gp1, b);
    return {b, dt * b, jr, gp1, split.q2, split.gpar};
}

Mat2 rotation_matrix(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c, s, -s, c};
}

Mat2 averaging_matrix(double theta) {
    check_resonance(theta);
    const double d = sinc(theta);
    const double o = versinc(theta);
    return {d, o, -o, d};
}

Mat2 averaging_matrix_inverse(double theta) {
    const Mat2 m = averaging_matrix(theta);
    const double det = m.a11 * m.a11 + m.a12 * m.a12;
    return {m.a11 / det, -m.a12 / det, m.a12 / det, m.a11 / det};
}

Vec2 compute_u_bar(Vec2 u_n, const PvbFrozenPoint& point, double dt) {
    const Vec2 w{0.0, point.jr};
    const Vec2 q{0.0, point.q2};
    const Mat2 minv = averaging_matrix_inverse(point.theta);
    return u_n + w - q + minv * (q - w - (0.5 * dt) * point.gpar);
}

Vec2 advance_bulk_velocity(Vec2 u_n, Vec2 u_bar, const PvbFrozenPoint& point, double dt) {
    const Vec2 c = u_bar + Vec2{0.0, point.q2} - Vec2{0.0, point.jr};
    return c + rotation_matrix(point.theta) * (u_n - c) - dt * point.gpar;
}

ShearTriplet rotation_shears(double theta) {
    const double limit = 0.5 * std::numbers::pi;
    if (!(std::abs(theta) <= limit * (1.0 + 1e-12))) {
        throw std::domain_error("rotation_shears: |theta| must not exceed pi/2; sub-cycle the rotation");
    }
    return {std::tan(0.5 * theta), -std::sin(theta)};
}

std::size_t rotation_subcycles(double theta) {
    const double r = std::abs(theta) / (0.5 * std::numbers::pi);
    if (r <= 1.0) return 1;
    return static_cast<std::size_t>(std::ceil(r));
}

Mat2 shear_v1(double a) { return {1.0, a, 0.0, 1.0}; }
Mat2 shear_v2(double s) { return {1.0, 0.0, s, 1.0}; }

}  // namespace hvsl
