#pragma once

#include <optional>
#include <vector>

#include "rbpdn/dataset.hpp"
#include "rbpdn/sc_calculus.hpp"

namespace rbpdn {

namespace detail {

/// Numerically safe sigmoid 1 / (1 + exp(-t)).
double sigmoid(double t);

/// Numerically safe softplus log(1 + exp(t)); |t| may exceed 700.
double softplus(double t);

}  // namespace detail

/// Fixed split of coordinates 0..N-1 into n disjoint contiguous blocks.
struct BlockPartition {
  std::vector<Eigen::Index> offsets;
  std::vector<Eigen::Index> sizes;

  /// n near-equal contiguous blocks; the remainder is spread over the first
  /// blocks.
  static BlockPartition contiguous(Eigen::Index dim, int n);

  int count() const { return static_cast<int>(sizes.size()); }
  Eigen::Index total_dim() const;
  void validate(Eigen::Index dim) const;
};

enum class ScScaleMode { none, rescale };

/// A regularized logistic regression instance:
///   f(x)  = (1/m) sum_i log(1 + exp(-y_i <w^i, x>)) + (mu/2) ||x||^2
///   F(x)  = f(x) + gamma ||x||_1          (gamma = 0: smooth problem)
/// together with a block partition and the constants used by the solvers.
struct ProblemSpec {
  Dataset data;
  double mu = 1e-5;
  double gamma = 0.0;
  BlockPartition partition;
  double sigma_lower = 0.0;   // lower bound on lambda_min of the Hessian
  double sc_parameter = 0.0;  // self-concordance parameter R / sqrt(mu)
  ScScaleMode scale_mode = ScScaleMode::none;
  Eigen::Index materialize_threshold = 4000;

  Eigen::Index dim() const { return data.dim(); }
  Eigen::Index samples() const { return data.samples(); }
};

/// Builds a ProblemSpec over `data` with n near-equal contiguous blocks.
/// sigma_lower defaults to mu (the Hessian satisfies H >= mu I everywhere)
/// and sc_parameter to R / sqrt(mu) with R = max_i ||w^i||.
ProblemSpec make_problem(Dataset data, double mu, double gamma, int n_blocks,
                         ScScaleMode scale_mode = ScScaleMode::none);

/// Margins y_i <w^i, x>; every evaluation below is a cheap function of these.
Vector margins(const ProblemSpec& spec, const Vector& x);

/// Smooth part f(x).
double f_value(const ProblemSpec& spec, const Vector& x);
double f_value_from_margins(const ProblemSpec& spec, const Vector& z,
                            const Vector& x);

/// Gradient of f, either the full vector or its restriction to one block.
Vector f_grad(const ProblemSpec& spec, const Vector& x,
              std::optional<int> block = std::nullopt);
Vector f_grad_block_from_margins(const ProblemSpec& spec, const Vector& z,
                                 const Vector& x, int block);

/// Block Hessian (1/m) W_i^T Lambda W_i + mu I with
/// Lambda = diag(sigmoid(z_j) (1 - sigmoid(z_j))). Materialized dense when
/// the block is at most spec.materialize_threshold wide, otherwise returned
/// in operator form (the operator captures a snapshot of the curvature
/// weights and references spec.data, which must outlive it).
SpdOperator block_hessian(const ProblemSpec& spec, const Vector& x, int block);
SpdOperator block_hessian_from_margins(const ProblemSpec& spec,
                                       const Vector& z, int block);

/// Composite objective F(x) = f(x) + gamma ||x||_1.
double F_value(const ProblemSpec& spec, const Vector& x);
double F_value_from_margins(const ProblemSpec& spec, const Vector& z,
                            const Vector& x);

/// The factor M_f^2 / 4 that makes (M_f^2/4) f a standard self-concordant
/// function; returns 1 when sc_parameter = 0 (every scale is then valid).
double standardize_scale(const ProblemSpec& spec);

}  // namespace rbpdn
