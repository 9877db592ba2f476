#include "rbpdn/sc_calculus.hpp"

#include <cmath>
#include <stdexcept>

namespace rbpdn {

double omega(double t) {
  if (t <= -1.0) throw std::domain_error("omega: t must be > -1");
  return t - std::log1p(t);
}

double omega_prime(double t) {
  if (t <= -1.0) throw std::domain_error("omega_prime: t must be > -1");
  return t / (1.0 + t);
}

double omega_star(double t) {
  if (t < 0.0 || t >= 1.0) {
    throw std::domain_error("omega_star: t must lie in [0, 1)");
  }
  return -t - std::log1p(-t);
}

double omega_star_inv(double s) {
  if (s < 0.0) throw std::domain_error("omega_star_inv: s must be >= 0");
  if (s == 0.0) return 0.0;

  const double hi_cap = std::nextafter(1.0, 0.0);
  double lo = 0.0;       // omega_star(lo) <= s
  double hi = hi_cap;    // omega_star(hi) >= s, or hi is the largest double < 1
  if (omega_star(hi_cap) < s) return hi_cap;

  double t = std::min(0.99, std::sqrt(2.0 * s));
  for (int it = 0; it < 200; ++it) {
    const double f = omega_star(t) - s;
    if (f == 0.0) break;
    if (f < 0.0) lo = std::max(lo, t); else hi = std::min(hi, t);
    // Newton step: f'(t) = t / (1 - t)
    const double step = f * (1.0 - t) / t;
    double next = t - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == t) break;
    t = next;
    if (hi - lo <= 0.0) break;
  }
  // Snap to whichever neighboring double has the smallest residual, so the
  // result is the representable point closest to the root in function space.
  double best = t;
  double best_err = std::abs(omega_star(t) - s);
  for (double cand : {std::nextafter(t, 0.0), std::nextafter(t, 1.0)}) {
    if (cand < 0.0 || cand >= 1.0) continue;
    const double err = std::abs(omega_star(cand) - s);
    if (err < best_err) {
      best = cand;
      best_err = err;
    }
  }
  return best;
}

SpdOperator::SpdOperator(Matrix H) : dim_(H.rows()), dense_(std::move(H)) {
  const Matrix& M = *dense_;
  if (M.rows() != M.cols()) {
    throw std::invalid_argument("SpdOperator: matrix must be square");
  }
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  const double asym = (M - M.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    throw std::invalid_argument("SpdOperator: matrix is not symmetric");
  }
}

SpdOperator::SpdOperator(Eigen::Index dim, ApplyFn apply)
    : dim_(dim), apply_(std::move(apply)) {
  if (dim <= 0) throw std::invalid_argument("SpdOperator: dim must be >= 1");
  if (!apply_) throw std::invalid_argument("SpdOperator: empty apply");
}

const Matrix& SpdOperator::matrix() const {
  if (!dense_) throw std::logic_error("SpdOperator: no materialized matrix");
  return *dense_;
}

void SpdOperator::check_dim(const Vector& u) const {
  if (u.size() != dim_) {
    throw std::invalid_argument("SpdOperator: dimension mismatch");
  }
}

void SpdOperator::apply(const Vector& u, Vector& out) const {
  check_dim(u);
  if (dense_) {
    out.noalias() = (*dense_) * u;
  } else {
    apply_(u, out);
  }
}

Vector SpdOperator::apply(const Vector& u) const {
  Vector out(dim_);
  apply(u, out);
  return out;
}

double SpdOperator::quadratic_form(const Vector& u) const {
  check_dim(u);
  if (dense_) return u.dot((*dense_) * u);
  Vector hu(dim_);
  apply_(u, hu);
  return u.dot(hu);
}

double SpdOperator::norm(const Vector& u) const {
  return std::sqrt(std::max(0.0, quadratic_form(u)));
}

double SpdOperator::dual_norm(const Vector& v) const {
  check_dim(v);
  if (v.isZero(0.0)) return 0.0;
  return std::sqrt(std::max(0.0, v.dot(solve(v))));
}

const Eigen::LLT<Matrix>& SpdOperator::llt() const {
  if (!llt_) {
    llt_.emplace(*dense_);
    if (llt_->info() != Eigen::Success) {
      throw std::runtime_error("SpdOperator: Cholesky failed, H not SPD");
    }
  }
  return *llt_;
}

Vector SpdOperator::solve(const Vector& rhs) const {
  check_dim(rhs);
  if (dense_) return llt().solve(rhs);
  return cg_solve(rhs);
}

// Plain CG for the operator form, run to near machine precision. Used for
// dual norms when H is only available as an apply callback.
Vector SpdOperator::cg_solve(const Vector& rhs) const {
  Vector x = Vector::Zero(dim_);
  Vector r = rhs;
  Vector p = r;
  Vector hp(dim_);
  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) return x;
  const double tol = 1e-13 * rhs_norm;
  double rr = r.squaredNorm();
  const Eigen::Index cap = 10 * dim_ + 20;
  for (Eigen::Index it = 0; it < cap; ++it) {
    if (std::sqrt(rr) <= tol) return x;
    apply_(p, hp);
    const double php = p.dot(hp);
    if (php <= 0.0) {
      throw std::runtime_error("SpdOperator: operator not positive definite");
    }
    const double alpha = rr / php;
    x += alpha * p;
    r -= alpha * hp;
    const double rr_next = r.squaredNorm();
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }
  if (std::sqrt(rr) > 1e-8 * rhs_norm) {
    throw std::runtime_error("SpdOperator: CG solve failed to converge");
  }
  return x;
}

}  // namespace rbpdn
