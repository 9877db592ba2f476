#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <functional>
#include <optional>

namespace rbpdn {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// omega(t) = t - ln(1+t), the scalar potential governing damped Newton
/// descent. Defined for t > -1, nonnegative and strictly increasing on
/// [0, inf). Throws std::domain_error for t <= -1.
double omega(double t);

/// omega'(t) = t / (1+t).
double omega_prime(double t);

/// omega_star(t) = -t - ln(1-t), the convex conjugate of omega. Defined here
/// for t in [0, 1); strictly increasing with omega_star(0) = 0. Throws
/// std::domain_error outside [0, 1).
double omega_star(double t);

/// Inverse of omega_star restricted to [0, 1): the unique t with
/// omega_star(t) = s for s >= 0. Safeguarded Newton, started at
/// min(0.99, sqrt(2 s)), with bisection fallback; converges to the double
/// adjacent to the true root. Throws std::domain_error for s < 0.
double omega_star_inv(double s);

/// Handle to a symmetric positive definite operator H, held either as a
/// materialized dense matrix or as a matrix-vector apply callback. Provides
/// the weighted norm ||u||_H = sqrt(<u, H u>) and its dual
/// ||v||*_H = sqrt(<v, H^-1 v>). Dual norms use a Cholesky solve in dense
/// form and a conjugate gradient solve in operator form.
class SpdOperator {
 public:
  using ApplyFn = std::function<void(const Vector&, Vector&)>;

  /// Dense form. The matrix must be symmetric to 1e-12 relative tolerance.
  explicit SpdOperator(Matrix H);

  /// Operator form: apply(u, out) computes out = H u.
  SpdOperator(Eigen::Index dim, ApplyFn apply);

  Eigen::Index dim() const { return dim_; }
  bool is_dense() const { return dense_.has_value(); }

  /// Dense matrix access; throws std::logic_error in operator form.
  const Matrix& matrix() const;

  void apply(const Vector& u, Vector& out) const;
  Vector apply(const Vector& u) const;

  /// <u, H u>. Throws std::invalid_argument on dimension mismatch.
  double quadratic_form(const Vector& u) const;

  /// ||u||_H = sqrt(<u, H u>).
  double norm(const Vector& u) const;

  /// ||v||*_H = sqrt(<v, H^-1 v>). Throws std::runtime_error when the solve
  /// detects a numerically singular H.
  double dual_norm(const Vector& v) const;

  /// H^-1 rhs via Cholesky (dense) or CG to near machine precision
  /// (operator form).
  Vector solve(const Vector& rhs) const;

 private:
  const Eigen::LLT<Matrix>& llt() const;
  Vector cg_solve(const Vector& rhs) const;
  void check_dim(const Vector& u) const;

  Eigen::Index dim_ = 0;
  std::optional<Matrix> dense_;
  ApplyFn apply_;
  mutable std::optional<Eigen::LLT<Matrix>> llt_;
};

}  // namespace rbpdn
