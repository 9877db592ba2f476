#pragma once

#include <vector>

#include "rbpdn/sc_calculus.hpp"

namespace rbpdn {

enum class InexactnessBound { exact_dual_norm, cheap_sigma_check };

/// An approximate block direction together with the residual that witnesses
/// its inexactness: -v lies in grad + H d + gamma d||x+d||_1, and the solver
/// stopped once ||v|| <= eta sqrt(sigma_lower) ||d||_H (which implies the
/// dual-norm condition ||v||*_H <= eta ||d||_H whenever
/// sigma_lower <= lambda_min(H)).
struct DirectionCertificate {
  Vector d;
  double lambda = 0.0;  // ||d||_H
  Vector v;
  InexactnessBound bound_used = InexactnessBound::cheap_sigma_check;
  int inner_iterations = 0;
  bool converged = true;
};

/// Componentwise sign(z_j) max(|z_j| - tau, 0); the proximal map of
/// tau ||.||_1.
Vector soft_threshold(const Vector& z, double tau);
double soft_threshold(double z, double tau);

/// Minimal-Euclidean-norm element of r + gamma d||u||_1: where u_j != 0 the
/// subgradient is fixed at sign(u_j); where u_j = 0 it is chosen to cancel
/// as much of r_j as possible.
Vector l1_min_norm_residual(const Vector& r, const Vector& u, double gamma);

/// Per-iteration CG diagnostics, recorded when requested by tests.
struct CgDiagnostics {
  std::vector<double> residual_norms;
  std::vector<Vector> iterates;
};

/// Conjugate gradient on H d = rhs, stopped at
/// ||H d - rhs|| <= eta sqrt(mu <d, H d>), for blocks with no nonsmooth
/// term. `mu` must lower-bound lambda_min(H). eta = 0 is interpreted as a
/// residual floor of max(1e-12, 1e-12 ||rhs||). A zero rhs returns the zero
/// direction immediately; exceeding dim + 50 iterations marks the
/// certificate not converged.
DirectionCertificate cg_inexact_newton(const SpdOperator& H, const Vector& rhs,
                                       double mu, double eta,
                                       CgDiagnostics* diagnostics = nullptr);

/// FISTA with step 1/Lmax on
///   min_d (1/2) <d, H d> + <grad, d> + gamma ||x_block + d||_1,
/// stopped once the minimal-norm stationarity residual satisfies
/// ||v|| <= eta sqrt(sigma_lower) ||d||_H (checked every few passes; each
/// check costs one H apply). Lmax must upper-bound lambda_max(H). The cap of
/// 10000 passes marks the certificate not converged rather than silently
/// accepting the iterate.
DirectionCertificate fista_block_subproblem(const SpdOperator& H, double Lmax,
                                            const Vector& grad,
                                            const Vector& x_block,
                                            double gamma, double eta,
                                            double sigma_lower);

/// Upper estimate of lambda_max of a symmetric PSD operator: power iteration
/// (at least 30 rounds) followed by a 1.01 safety factor. A zero operator
/// yields a tiny positive floor (1e-300) so callers can divide by the
/// result.
double power_iteration_lmax(const SpdOperator::ApplyFn& apply,
                            Eigen::Index dim);
double power_iteration_lmax(const SpdOperator& H);

/// Exact dual-norm form of the inexactness condition,
/// ||v||*_H <= eta ||d||_H; used on materialized blocks where the Cholesky
/// solve is affordable.
bool certificate_dual_norm_holds(const SpdOperator& H,
                                 const DirectionCertificate& cert, double eta,
                                 double slack = 1e-10);

}  // namespace rbpdn
