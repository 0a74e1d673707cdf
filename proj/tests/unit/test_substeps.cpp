#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "../support/fixtures.hpp"
#include "hvsl/config.hpp"
#include "hvsl/diagnostics.hpp"
#include "hvsl/errors.hpp"
#include "hvsl/integrator.hpp"
#include "hvsl/substeps.hpp"

using namespace hvsl;

namespace {

constexpr double pi = std::numbers::pi;

// Anisotropic Gaussian centred at (d1, d2) with thermal speeds (s1, s2), rotated by phi.
double tilted_gaussian(double v1, double v2, double d1, double d2, double s1, double s2, double phi) {
    const double a = v1 - d1, b = v2 - d2;
    const double x = std::cos(phi) * a + std::sin(phi) * b;
    const double y = -std::sin(phi) * a + std::cos(phi) * b;
    return std::exp(-x * x / (s1 * s1) - y * y / (s2 * s2));
}

Distribution tilted(const std::shared_ptr<const PhaseGrid>& g, double d1, double d2, double phi) {
    Distribution f(g);
    for (std::size_t i = 0; i < g->m1(); ++i) {
        for (std::size_t j1 = 0; j1 < g->n1(); ++j1) {
            for (std::size_t j2 = 0; j2 < g->n2(); ++j2) {
                f(i, j1, j2) = tilted_gaussian(g->v1.nodes[j1], g->v2.nodes[j2], d1, d2, 0.5, 0.3, phi);
            }
        }
    }
    return f;
}

SimState preset_state(const char* name) { return initial_state(preset_config(name)); }

}  // namespace

TEST(Pvb, ZeroStepIsIdentity) {
    SimState s = preset_state("convergence");
    const SimState before = s;
    const PvbResult r = pvb_step(s.f, s.fields, 0.0, {});
    EXPECT_EQ(r.picard_iterations, 0u);
    EXPECT_TRUE(std::equal(s.f.values().begin(), s.f.values().end(), before.f.values().begin()));
    EXPECT_EQ(s.fields.b3, before.fields.b3);
}

TEST(Pvb, UniformStateRotatesVelocityRigidly) {
    const auto g = fixture::grid(4, 64, 64, 1.0, 3.0);
    const double d1 = 0.2, d2 = -0.1, phi = 0.3;
    Distribution f = tilted(g, d1, d2, phi);
    FieldState fields = fixture::fields(4, 1.0, 0.5, Closure::pressure_equation, 5.0 / 3.0, 0.5);
    const Moments m = compute_moments(f);
    const double dt = 0.2;
    const PvbResult r = pvb_step(f, fields, dt, {}, AdvectionBackend::spectral);
    EXPECT_EQ(r.picard_iterations, 1u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(fields.b3[i], 1.0);
        EXPECT_EQ(fields.p[i], 0.5);
        EXPECT_NEAR(r.u_bar[i].v1, m.u1[i], 1e-15);
        EXPECT_NEAR(r.u_bar[i].v2, m.u2[i], 1e-15);
    }
    // Rotation about the bulk velocity by theta = dt b turns the principal axes by -theta.
    double err = 0.0;
    for (std::size_t j1 = 0; j1 < g->n1(); ++j1) {
        for (std::size_t j2 = 0; j2 < g->n2(); ++j2) {
            const double want =
                tilted_gaussian(g->v1.nodes[j1], g->v2.nodes[j2], m.u1[0], m.u2[0], 0.5, 0.3, phi - dt);
            err = std::max(err, std::abs(f(2, j1, j2) - want));
        }
    }
    EXPECT_LT(err, 1e-10);
}

TEST(Pvb, UnmagnetisedMomentumChangeVanishes) {
    SimState s = preset_state("landau");
    const double p1 = conserved_quantities(s.f, s.fields).momentum1;
    pvb_step(s.f, s.fields, 0.1, {});
    EXPECT_NEAR(conserved_quantities(s.f, s.fields).momentum1, p1, 1e-13);
}

TEST(Pvb, BernsteinFirstStepConverges) {
    SimState s = preset_state("bernstein");
    const PvbResult r = pvb_step(s.f, s.fields, 0.05, {});
    EXPECT_LE(r.picard_residual, 1e-14);
    EXPECT_GE(r.picard_iterations, 2u);
    EXPECT_LE(r.picard_iterations, 40u);
}

TEST(Pvb, ConservesMassMomentumEnergy) {
    for (const char* name : {"bernstein_pressure", "convergence", "landau_pressure"}) {
        const RunConfig cfg = preset_config(name);
        SimState s = initial_state(cfg);
        const ConservedSnapshot a = conserved_quantities(s.f, s.fields);
        pvb_step(s.f, s.fields, cfg.numerics.dt, {});
        const ConservedSnapshot b = conserved_quantities(s.f, s.fields);
        const double scale = a.mass * cfg.initial.vt;
        EXPECT_NEAR(b.mass, a.mass, 1e-12 * a.mass) << name;
        EXPECT_NEAR(b.momentum1, a.momentum1, 1e-12 * scale) << name;
        EXPECT_NEAR(b.momentum2, a.momentum2, 1e-12 * scale) << name;
        const double tol = std::max(1e-11 * a.energy_total, 10.0 * 1e-14 * static_cast<double>(cfg.grid.m1));
        EXPECT_NEAR(b.energy_total, a.energy_total, tol) << name;
    }
}

TEST(Pvb, BulkVelocityUnchangedWithoutGradients) {
    const auto g = fixture::grid(8, 64, 64, 2.0, 3.0);
    Distribution f = fixture::maxwellian(g, 0.5, 0.3, -0.2);
    FieldState fields = fixture::fields(8, 1.0, 0.2, Closure::pressure_equation, 5.0 / 3.0, 0.2);
    const Moments m0 = compute_moments(f);
    for (int n = 0; n < 10; ++n) pvb_step(f, fields, 0.1, {});
    const Moments m = compute_moments(f);
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_NEAR(m.u1[i], m0.u1[i], 1e-12);
        EXPECT_NEAR(m.u2[i], m0.u2[i], 1e-12);
    }
}

TEST(Pvb, HalvingStepDoesNotAddIterations) {
    for (const char* name : {"convergence", "bernstein_pressure"}) {
        const RunConfig cfg = preset_config(name);
        SimState a = initial_state(cfg), b = a;
        const std::size_t full = pvb_step(a.f, a.fields, cfg.numerics.dt, {}).picard_iterations;
        const std::size_t half = pvb_step(b.f, b.fields, cfg.numerics.dt / 2, {}).picard_iterations;
        EXPECT_LE(half, full) << name;
    }
}

TEST(Pvb, ParallelKickOrderDoesNotMatterWhenMagnetised) {
    SimState a = preset_state("bernstein");
    SimState b = a;
    PicardOptions late;
    late.parallel_shift_last = true;
    pvb_step(a.f, a.fields, 0.05, {});
    pvb_step(b.f, b.fields, 0.05, late);
    EXPECT_LE(fixture::max_abs_diff(a.f.values(), b.f.values()), 1e-11);
}

TEST(Pvb, RotationFramesAgreeWithSpectralVelocity) {
    const RunConfig cfg = preset_config("convergence");
    SimState a = initial_state(cfg), b = a;
    PicardOptions translated;
    translated.rotation = RotationFrame::translated;
    pvb_step(a.f, a.fields, 0.05, {}, AdvectionBackend::spectral);
    pvb_step(b.f, b.fields, 0.05, translated, AdvectionBackend::spectral);
    double fmax = 0.0;
    for (double v : a.f.values()) fmax = std::max(fmax, std::abs(v));
    EXPECT_LE(fixture::max_abs_diff(a.f.values(), b.f.values()), 1e-9 * fmax);
}

TEST(Pvb, NonConvergenceLeavesInputsUntouched) {
    SimState s = preset_state("bernstein_pressure");
    const SimState before = s;
    PicardOptions opts;
    opts.max_iters = 1;
    try {
        pvb_step(s.f, s.fields, 0.05, opts);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_EQ(e.iterations(), 1u);
        EXPECT_GT(e.residual(), 1e-14);
    }
    EXPECT_EQ(s.fields.b3, before.fields.b3);
    EXPECT_EQ(s.fields.p, before.fields.p);
    EXPECT_TRUE(std::equal(s.f.values().begin(), s.f.values().end(), before.f.values().begin()));
}

TEST(Pvb, ResonantAngleIsRejected) {
    const auto g = fixture::grid(4, 16, 16, 1.0, 3.0);
    Distribution f = fixture::maxwellian(g, 0.5);
    FieldState fields = fixture::fields(4, 2.0 * pi, 1.0, Closure::isothermal, 1.0, 1.0);
    EXPECT_THROW(pvb_step(f, fields, 1.0, {}), StepSizeError);
}

TEST(Pvb, NonPositiveDensityIsRejected) {
    const auto g = fixture::grid(4, 16, 16, 1.0, 3.0);
    Distribution f = fixture::maxwellian(g, 0.5);
    for (double& v : f.block(1)) v = -v;
    FieldState fields = fixture::fields(4, 1.0, 1.0, Closure::isothermal, 1.0, 1.0);
    EXPECT_THROW(pvb_step(f, fields, 0.1, {}), StateError);
}

TEST(Xv, ZeroStepAndUniformLinesAreFixed) {
    const auto g = fixture::grid(16, 16, 16, 2.0, 2.0);
    Distribution f = fixture::maxwellian(g, 0.6, 0.1, 0.2);
    const Distribution before = f;
    xv_step(f, 0.0);
    EXPECT_EQ(fixture::max_abs_diff(f.values(), before.values()), 0.0);
    for (AdvectionBackend be : {AdvectionBackend::spectral, AdvectionBackend::spline}) {
        Distribution h = before;
        xv_step(h, 0.37, be);
        EXPECT_LE(fixture::max_abs_diff(h.values(), before.values()), 1e-13);
    }
}

TEST(Xv, SingleModeIsPhaseShifted) {
    const double k = 0.4;
    const auto g = fixture::grid(32, 16, 8, 2.0 * pi / k, 4.0);
    Distribution f = fixture::maxwellian(g, 1.0, 0.0, 0.0, 0.01, k);
    const ConservedSnapshot a = conserved_quantities(f, fixture::fields(32, 0.0, 1.0, Closure::isothermal, 1.0, 1.0));
    const double dt = 0.1;
    xv_step(f, dt);
    const double norm = 1.0 / pi;
    double err = 0.0;
    for (std::size_t i = 0; i < g->m1(); ++i) {
        for (std::size_t j1 = 0; j1 < g->n1(); ++j1) {
            for (std::size_t j2 = 0; j2 < g->n2(); ++j2) {
                const double v1 = g->v1.nodes[j1], v2 = g->v2.nodes[j2];
                const double want = (1.0 + 0.01 * std::sin(k * (g->x.nodes[i] - v1 * dt))) * norm *
                                    std::exp(-v1 * v1 - v2 * v2);
                err = std::max(err, std::abs(f(i, j1, j2) - want));
            }
        }
    }
    EXPECT_LT(err, 1e-14);
    const ConservedSnapshot b = conserved_quantities(f, fixture::fields(32, 0.0, 1.0, Closure::isothermal, 1.0, 1.0));
    EXPECT_NEAR(b.mass, a.mass, 1e-14 * a.mass);
}

TEST(Xv, ConservesMassMomentumKineticEnergy) {
    for (AdvectionBackend be : {AdvectionBackend::spectral, AdvectionBackend::spline}) {
        SimState s = preset_state("convergence");
        const ConservedSnapshot a = conserved_quantities(s.f, s.fields);
        xv_step(s.f, 0.1, be);
        const ConservedSnapshot b = conserved_quantities(s.f, s.fields);
        EXPECT_NEAR(b.mass, a.mass, 1e-12 * a.mass);
        EXPECT_NEAR(b.momentum1, a.momentum1, 1e-12 * std::abs(a.momentum1));
        EXPECT_NEAR(b.momentum2, a.momentum2, 1e-12 * std::abs(a.momentum2));
        EXPECT_NEAR(b.energy_kinetic, a.energy_kinetic, 1e-12 * a.energy_kinetic);
    }
}
