#pragma once

#include "rbpdn/solver.hpp"

namespace rbpdn {

/// Per-block global Lipschitz bounds on the block gradients of the smooth
/// part: L_i >= lambda_max of every block Hessian.
struct BlockLipschitz {
  Vector L;
};

/// L_i = (upper estimate of lambda_max(W_i^T W_i)) / (4 m) + mu; valid at
/// every point because the logistic curvature weights are at most 1/4.
BlockLipschitz block_lipschitz(const ProblemSpec& spec);

enum class RbapgVariant {
  accelerated,  // momentum from the strong-convexity ratio
  plain,        // randomized block proximal gradient, no momentum
};

/// Randomized block accelerated proximal gradient baseline for strongly
/// convex composite objectives. The scheme is frozen as follows: with
/// sigma = mu / max_i L_i (strong convexity relative to the L-weighted
/// norm) and alpha = sqrt(sigma) / n, iterate
///   y = (x + alpha z) / (1 + alpha)
///   pick block i uniformly, w_i = (1 - alpha) z_i + alpha y_i
///   z <- (1 - alpha) z + alpha y, then
///   z_i <- prox_{gamma/(n alpha L_i)}(w_i - grad_i f(y) / (n alpha L_i))
///   x <- y, then x_i <- y_i + n alpha (z_i - w_i)
/// (soft-threshold prox when gamma > 0). Termination mirrors the damped
/// Newton driver: duality gap checked every gap_check_interval iterations.
/// The plain variant drops (y, z) and performs the classical block proximal
/// gradient step x_i <- prox_{gamma/L_i}(x_i - grad_i f(x) / L_i).
SolveResult rbapg_solve_model(BlockModel& model, const Vector& x0,
                              const SolverConfig& config,
                              RbapgVariant variant = RbapgVariant::accelerated);

SolveResult rbapg_solve(const ProblemSpec& spec, const Vector& x0,
                        const SolverConfig& config,
                        RbapgVariant variant = RbapgVariant::accelerated);

}  // namespace rbpdn
