#pragma once

#include <cmath>
#include <memory>
#include <numbers>

#include "hvsl/grid.hpp"
#include "hvsl/state.hpp"

namespace fixture {

inline std::shared_ptr<const hvsl::PhaseGrid> grid(std::size_t m1, std::size_t n1, std::size_t n2, double lx,
                                                   double vmax) {
    hvsl::GridConfig g;
    g.m1 = m1;
    g.n1 = n1;
    g.n2 = n2;
    g.lx = lx;
    g.v1_min = -vmax;
    g.v1_max = vmax;
    g.v2_min = -vmax;
    g.v2_max = vmax;
    return std::make_shared<const hvsl::PhaseGrid>(hvsl::make_phase_grid(g));
}

/// (1 + amp sin(k x)) Maxwellian with thermal speed vt drifting at (d1, d2).
inline hvsl::Distribution maxwellian(const std::shared_ptr<const hvsl::PhaseGrid>& g, double vt, double d1 = 0.0,
                                     double d2 = 0.0, double amp = 0.0, double k = 1.0) {
    hvsl::Distribution f(g);
    const double norm = 1.0 / (std::numbers::pi * vt * vt);
    for (std::size_t i = 0; i < g->m1(); ++i) {
        const double rho = 1.0 + amp * std::sin(k * g->x.nodes[i]);
        for (std::size_t j1 = 0; j1 < g->n1(); ++j1) {
            for (std::size_t j2 = 0; j2 < g->n2(); ++j2) {
                const double a = g->v1.nodes[j1] - d1;
                const double b = g->v2.nodes[j2] - d2;
                f(i, j1, j2) = rho * norm * std::exp(-(a * a + b * b) / (vt * vt));
            }
        }
    }
    return f;
}

inline hvsl::FieldState fields(std::size_t m1, double b3, double p, hvsl::Closure closure, double gamma,
                               double kappa) {
    hvsl::FieldState s;
    s.b3.assign(m1, b3);
    s.p.assign(m1, p);
    s.closure = closure;
    s.gamma = gamma;
    s.kappa = kappa;
    return s;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace fixture
