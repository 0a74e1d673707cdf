#pragma once

#include <cstddef>

namespace hvsl {

struct Vec2 {
    double v1 = 0.0;
    double v2 = 0.0;

    bool operator==(const Vec2&) const = default;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.v1 + b.v1, a.v2 + b.v2}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.v1 - b.v1, a.v2 - b.v2}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.v1, s * a.v2}; }

/// Row-major 2x2 matrix acting on (v1, v2).
struct Mat2 {
    double a11 = 1.0, a12 = 0.0;
    double a21 = 0.0, a22 = 1.0;
};

inline Vec2 operator*(const Mat2& m, Vec2 x) {
    return {m.a11 * x.v1 + m.a12 * x.v2, m.a21 * x.v1 + m.a22 * x.v2};
}
inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

/// Pressure force split into a drift q = (0, q2) with q x B = grad(p)/rho, and a parallel rest.
struct PressureSplit {
    double q2 = 0.0;
    Vec2 gpar;
};

/// Frozen per-point data of one pvb substep for B = (0, 0, b).
struct PvbFrozenPoint {
    double b = 0.0;      // midpoint B3
    double theta = 0.0;  // dt * b
    double jr = 0.0;     // v2-component of J/rho = -dB3/dx / rho
    double gp1 = 0.0;    // dp/dx / rho
    double q2 = 0.0;
    Vec2 gpar;
};

/// b != 0: q2 = gp1 / b, gpar = 0. b == 0 exactly: q2 = 0, gpar = (gp1, 0).
PressureSplit decompose_pressure(double gp1, double b);

PvbFrozenPoint make_frozen_point(double b, double dt, double jr, double gp1);

/// exp(t Bhat) on (v1, v2) with Bhat v = v x B and theta = t b.
Mat2 rotation_matrix(double theta);

/// Time average of the rotation over [0, theta]; throws StepSizeError at theta = 2k pi, k >= 1.
Mat2 averaging_matrix(double theta);

/// Closed-form inverse of averaging_matrix(theta) (same error contract).
Mat2 averaging_matrix_inverse(double theta);

/// The bulk velocity whose exact pvb flow has time average ubar over one step:
/// ubar = u_n + w - q + M^{-1}(-w + q - dt/2 gpar) with w = (0, jr), q = (0, q2).
Vec2 compute_u_bar(Vec2 u_n, const PvbFrozenPoint& point, double dt);

/// Exact bulk velocity after one step: c + R(theta)(u_n - c) - dt gpar with c = ubar + q - w.
Vec2 advance_bulk_velocity(Vec2 u_n, Vec2 u_bar, const PvbFrozenPoint& point, double dt);

/// Shear coefficients with Shear_v1(a) Shear_v2(s) Shear_v1(a) = rotation_matrix(theta), where
/// Shear_v1(a): (v1, v2) -> (v1 + a v2, v2) and Shear_v2(s): (v1, v2) -> (v1, v2 + s v1).
struct ShearTriplet {
    double a = 0.0;
    double s = 0.0;
};

/// Requires |theta| <= pi/2; throws std::domain_error otherwise.
ShearTriplet rotation_shears(double theta);

/// Number of equal sub-rotations needed to keep every angle within pi/2.
std::size_t rotation_subcycles(double theta);

Mat2 shear_v1(double a);
Mat2 shear_v2(double s);

}  // namespace hvsl
