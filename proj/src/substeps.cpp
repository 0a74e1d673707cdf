#include "hvsl/substeps.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hvsl/errors.hpp"
#include "hvsl/spectral.hpp"

namespace hvsl {

namespace {

// Velocity-space advections of one N1 x N2 block.
class BlockAdvector {
public:
    BlockAdvector(const PhaseGrid& g, AdvectionBackend backend)
        : g_(g), v1_(backend, g.n1(), g.dv1()), v2_(backend, g.n2(), g.dv2()),
          shift_v1_(g.n2()), shift_v2_(g.n1()) {}

    // Shift every v1-line by the same amount.
    void shift_v1(std::span<double> blk, double s) {
        if (s == 0.0) return;
        std::fill(shift_v1_.begin(), shift_v1_.end(), s);
        v1_.advect_interleaved(blk, g_.n2(), shift_v1_);
    }

    void shift_v2(std::span<double> blk, double s) {
        if (s == 0.0) return;
        std::fill(shift_v2_.begin(), shift_v2_.end(), s);
        v2_.advect_lines(blk, shift_v2_);
    }

    // g(v) = f(c + Shear_v1(a)(v - c)): the v1-line at v2 is shifted by -a (v2 - c2).
    void shear_v1(std::span<double> blk, double a, double c2) {
        if (a == 0.0) return;
        for (std::size_t j2 = 0; j2 < g_.n2(); ++j2) shift_v1_[j2] = -a * (g_.v2.nodes[j2] - c2);
        v1_.advect_interleaved(blk, g_.n2(), shift_v1_);
    }

    // g(v) = f(c + Shear_v2(s)(v - c)): the v2-line at v1 is shifted by -s (v1 - c1).
    void shear_v2(std::span<double> blk, double s, double c1) {
        if (s == 0.0) return;
        for (std::size_t j1 = 0; j1 < g_.n1(); ++j1) shift_v2_[j1] = -s * (g_.v1.nodes[j1] - c1);
        v2_.advect_lines(blk, shift_v2_);
    }

private:
    const PhaseGrid& g_;
    LineAdvector v1_;
    LineAdvector v2_;
    std::vector<double> shift_v1_;
    std::vector<double> shift_v2_;
};

}  // namespace

PvbResult pvb_step(Distribution& f, FieldState& fields, double dt, const PicardOptions& opts,
                   AdvectionBackend velocity_backend) {
    const PhaseGrid& g = f.grid();
    const std::size_t m1 = g.m1();
    const double lx = g.lx();
    PvbResult result;
    if (dt == 0.0) return result;

    const Moments mom = compute_moments(f);
    const std::vector<double>& rho = mom.rho;
    const bool evolve_p = fields.closure == Closure::pressure_equation;

    FieldState next = fields;
    next.refresh_pressure(rho);
    const std::vector<double> b_n = next.b3;
    const std::vector<double> p_n = next.p;
    if (b_n.size() != m1 || p_n.size() != m1) throw StateError("field arrays do not match the x-grid");

    std::vector<double> b_k = b_n;
    std::vector<double> p_k = p_n;
    std::vector<double> b_mid(m1), p_mid(m1), flux(m1), u1(m1), b_new(m1), p_new(m1);
    std::vector<PvbFrozenPoint> points(m1);
    result.u_bar.resize(m1);

    bool converged = false;
    double residual = 0.0;
    std::size_t it = 0;
    while (it < opts.max_iters) {
        ++it;
        for (std::size_t i = 0; i < m1; ++i) {
            b_mid[i] = 0.5 * (b_n[i] + b_k[i]);
            p_mid[i] = 0.5 * (p_n[i] + p_k[i]);
        }
        const std::vector<double> db = spectral_derivative(b_mid, lx);
        const std::vector<double> dp = spectral_derivative(p_mid, lx);
        for (std::size_t i = 0; i < m1; ++i) {
            points[i] = make_frozen_point(b_mid[i], dt, -db[i] / rho[i], dp[i] / rho[i]);
            result.u_bar[i] = compute_u_bar({mom.u1[i], mom.u2[i]}, points[i], dt);
            u1[i] = result.u_bar[i].v1;
        }

        for (std::size_t i = 0; i < m1; ++i) flux[i] = u1[i] * b_mid[i];
        const std::vector<double> dflux = spectral_derivative(flux, lx);
        for (std::size_t i = 0; i < m1; ++i) b_new[i] = b_n[i] - dt * dflux[i];

        if (evolve_p) {
            for (std::size_t i = 0; i < m1; ++i) flux[i] = u1[i] * p_mid[i];
            const std::vector<double> dpf = spectral_derivative(flux, lx);
            const std::vector<double> du = spectral_derivative(u1, lx);
            for (std::size_t i = 0; i < m1; ++i) {
                p_new[i] = p_n[i] - dt * (dpf[i] + (fields.gamma - 1.0) * p_mid[i] * du[i]);
            }
        } else {
            p_new = p_n;
        }

        residual = 0.0;
        for (std::size_t i = 0; i < m1; ++i) {
            residual = std::max({residual, std::abs(b_new[i] - b_k[i]), std::abs(p_new[i] - p_k[i])});
        }
        std::swap(b_k, b_new);
        std::swap(p_k, p_new);
        if (!std::isfinite(residual)) break;
        if (residual <= opts.tol) {
            converged = true;
            break;
        }
    }
    result.picard_iterations = it;
    result.picard_residual = residual;
    if (!converged) {
        std::ostringstream msg;
        msg.precision(3);
        msg << "Picard iteration did not converge: residual " << std::scientific << residual
            << " after " << it << " iterations (tolerance " << opts.tol << ")";
        throw ConvergenceError(msg.str(), it, residual);
    }

    BlockAdvector adv(g, velocity_backend);
    for (std::size_t i = 0; i < m1; ++i) {
        const PvbFrozenPoint& pt = points[i];
        std::span<double> blk = f.block(i);
        const double kick = -dt * pt.gpar.v1;
        if (!opts.parallel_shift_last) adv.shift_v1(blk, kick);
        if (pt.b != 0.0) {
            // f(c + R(-theta)(v - c)): rotation about c in m equal shear triplets.
            const Vec2 c = result.u_bar[i] + Vec2{0.0, pt.q2 - pt.jr};
            const std::size_t m = rotation_subcycles(pt.theta);
            const ShearTriplet sh = rotation_shears(-pt.theta / static_cast<double>(m));
            if (opts.rotation == RotationFrame::translated) {
                // Move c to the origin by advection, rotate there, move back.
                adv.shift_v1(blk, -c.v1);
                adv.shift_v2(blk, -c.v2);
                for (std::size_t r = 0; r < m; ++r) {
                    adv.shear_v1(blk, sh.a, 0.0);
                    adv.shear_v2(blk, sh.s, 0.0);
                    adv.shear_v1(blk, sh.a, 0.0);
                }
                adv.shift_v1(blk, c.v1);
                adv.shift_v2(blk, c.v2);
            } else {
                for (std::size_t r = 0; r < m; ++r) {
                    adv.shear_v1(blk, sh.a, c.v2);
                    adv.shear_v2(blk, sh.s, c.v1);
                    adv.shear_v1(blk, sh.a, c.v2);
                }
            }
        }
        if (opts.parallel_shift_last) adv.shift_v1(blk, kick);
    }

    next.b3 = std::move(b_k);
    if (evolve_p) next.p = std::move(p_k);
    fields = std::move(next);
    return result;
}

void xv_step(Distribution& f, double dt, AdvectionBackend space_backend) {
    if (dt == 0.0) return;
    const PhaseGrid& g = f.grid();
    const std::size_t batch = g.velocity_size();
    std::vector<double> shifts(batch);
    for (std::size_t j1 = 0; j1 < g.n1(); ++j1) {
        const double s = g.v1.nodes[j1] * dt;
        std::fill_n(shifts.begin() + static_cast<std::ptrdiff_t>(j1 * g.n2()), g.n2(), s);
    }
    LineAdvector(space_backend, g.m1(), g.dx()).advect_interleaved(f.values(), batch, shifts);
}

}  // namespace hvsl
