#pragma once

#include <cstddef>
#include <vector>

#include "hvsl/advection.hpp"
#include "hvsl/exact_split.hpp"
#include "hvsl/state.hpp"

namespace hvsl {

/// How the rotation about the point c = ubar + q - w is realised on the velocity grid.
enum class RotationFrame {
    centred,     // shears written about c (the grid moves with c; three advections per sub-rotation)
    translated,  // advect c to the origin, shear about the origin, advect back
};

struct PicardOptions {
    double tol = 1e-14;           // sup-norm of the (B3, p) change between iterations
    std::size_t max_iters = 200;
    bool parallel_shift_last = false;  // apply the b = 0 parallel kick after the rotation stages
    RotationFrame rotation = RotationFrame::centred;
};

struct PvbResult {
    std::size_t picard_iterations = 0;
    double picard_residual = 0.0;
    std::vector<Vec2> u_bar;  // per-point averaged velocity of the converged iteration
};

/// Velocity-space substep: Picard-iterated midpoint update of (B3, p), then the
/// exact per-point velocity flow applied to f as 1D advections.
///
/// f and fields are updated in place. Throws ConvergenceError, StepSizeError or StateError;
/// on a throw the inputs are left unchanged.
PvbResult pvb_step(Distribution& f, FieldState& fields, double dt, const PicardOptions& opts,
                   AdvectionBackend velocity_backend = AdvectionBackend::spline);

/// Free streaming: every x-line (j1, j2) is shifted by v1[j1] * dt.
void xv_step(Distribution& f, double dt, AdvectionBackend space_backend = AdvectionBackend::spectral);

}  // namespace hvsl
