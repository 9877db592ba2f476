#pragma once

#include "rbpdn/problem.hpp"

namespace rbpdn {

/// Dual iterate for the logistic duals; feasibility demands
/// 0 < s_i < 1/m for every i.
struct DualPoint {
  Vector s;
};

/// Dual map s_i = sigmoid(-y_i <w^i, x>) / m, evaluated with the stable
/// sigmoid and clamped into the open feasible interval under extreme
/// margins (underflow floor 1e-300).
DualPoint dual_point(const ProblemSpec& spec, const Vector& x);

/// Smooth-problem dual
///   D_mu(s) = -(1/m) sum log(1 - m s_i) - ||sum s_i y_i w^i||^2 / (2 mu)
///             - sum s_i log(m s_i / (1 - m s_i)).
/// Throws std::invalid_argument when any m s_i falls outside (0, 1).
double dual_value_rlr(const ProblemSpec& spec, const DualPoint& s);

/// l1 dual: with u = sum s_i y_i w^i and h = soft_threshold(u, gamma) / mu
/// (the closed form of the inner argmin),
///   D_{gamma,mu}(s) = -(1/m) sum log(1 - m s_i) + (mu/2) ||h||^2
///                     + gamma ||h||_1 - sum s_i log(m s_i / (1 - m s_i))
///                     - <u, h>.
double dual_value_srlr(const ProblemSpec& spec, const DualPoint& s);

/// F(x) - D(dual_point(x)), selecting the smooth or l1 dual by gamma.
/// Computed from the margins so extreme log-odds stay finite.
double duality_gap(const ProblemSpec& spec, const Vector& x);
double duality_gap_from_margins(const ProblemSpec& spec, const Vector& z,
                                const Vector& x);

}  // namespace rbpdn
