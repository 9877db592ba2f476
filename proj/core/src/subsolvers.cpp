#include "rbpdn/subsolvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rbpdn {

namespace {

void check_eta(double eta) {
  if (eta < 0.0 || eta > 0.25) {
    throw std::invalid_argument("subsolvers: eta must lie in [0, 1/4]");
  }
}

// Deterministic pseudorandom start vector for the power iteration.
Vector power_start(Eigen::Index dim) {
  std::uint64_t state = 0x9e3779b97f4a7c15ull ^ (0x632be59bd9b4e019ull *
                                                 static_cast<std::uint64_t>(dim + 1));
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    v(i) = (static_cast<double>(state >> 11) * 0x1.0p-53) - 0.5;
  }
  const double n = v.norm();
  if (n == 0.0) v(0) = 1.0; else v /= n;
  return v;
}

}  // namespace

double soft_threshold(double z, double tau) {
  if (z > tau) return z - tau;
  if (z < -tau) return z + tau;
  return 0.0;
}

Vector soft_threshold(const Vector& z, double tau) {
  if (tau < 0.0) {
    throw std::invalid_argument("soft_threshold: tau must be >= 0");
  }
  Vector out(z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    out(j) = soft_threshold(z(j), tau);
  }
  return out;
}

Vector l1_min_norm_residual(const Vector& r, const Vector& u, double gamma) {
  if (r.size() != u.size()) {
    throw std::invalid_argument("l1_min_norm_residual: dimension mismatch");
  }
  Vector out(r.size());
  for (Eigen::Index j = 0; j < r.size(); ++j) {
    if (u(j) > 0.0) {
      out(j) = r(j) + gamma;
    } else if (u(j) < 0.0) {
      out(j) = r(j) - gamma;
    } else {
      out(j) = r(j) - std::clamp(r(j), -gamma, gamma);
    }
  }
  return out;
}

DirectionCertificate cg_inexact_newton(const SpdOperator& H, const Vector& rhs,
                                       double mu, double eta,
                                       CgDiagnostics* diagnostics) {
  check_eta(eta);
  if (mu <= 0.0) {
    throw std::invalid_argument("cg_inexact_newton: mu must be > 0");
  }
  if (rhs.size() != H.dim()) {
    throw std::invalid_argument("cg_inexact_newton: dimension mismatch");
  }
  const Eigen::Index n = H.dim();
  DirectionCertificate cert;
  cert.bound_used = InexactnessBound::cheap_sigma_check;
  if (rhs.isZero(0.0)) {
    cert.d = Vector::Zero(n);
    cert.v = Vector::Zero(n);
    return cert;
  }

  const double floor_tol = std::max(1e-12, 1e-12 * rhs.norm());
  const Eigen::Index cap = n + 50;
  Vector d = Vector::Zero(n);
  Vector r = rhs;
  Vector p = r;
  Vector hp(n);
  double rr = r.squaredNorm();
  int iters = 0;
  bool breakdown = false;

  while (iters < cap) {
    H.apply(p, hp);
    const double php = p.dot(hp);
    if (php <= 0.0) {
      breakdown = true;
      break;
    }
    const double alpha = rr / php;
    d += alpha * p;
    r -= alpha * hp;
    ++iters;
    const double rr_next = r.squaredNorm();
    if (!std::isfinite(rr_next)) {
      breakdown = true;
      break;
    }
    if (diagnostics) {
      diagnostics->residual_norms.push_back(std::sqrt(rr_next));
      diagnostics->iterates.push_back(d);
    }
    const double dHd = std::max(0.0, d.dot(rhs) - d.dot(r));
    const double thresh =
        eta > 0.0 ? eta * std::sqrt(mu * dHd) : floor_tol;
    if (std::sqrt(rr_next) <= thresh) {
      // Confirm against the true residual; the CG recurrence drifts.
      Vector v = rhs - H.apply(d);
      const double dHd_x = std::max(0.0, d.dot(rhs) - d.dot(v));
      const double thresh_x =
          eta > 0.0 ? eta * std::sqrt(mu * dHd_x) : floor_tol;
      if (v.norm() <= thresh_x) {
        cert.d = std::move(d);
        cert.lambda = std::sqrt(dHd_x);
        cert.v = std::move(v);
        cert.inner_iterations = iters;
        return cert;
      }
      r = std::move(v);
      rr = r.squaredNorm();
      p = r;
      continue;
    }
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }

  Vector v = rhs - H.apply(d);
  const double dHd = std::max(0.0, d.dot(rhs) - d.dot(v));
  cert.d = std::move(d);
  cert.lambda = std::sqrt(dHd);
  cert.v = std::move(v);
  cert.inner_iterations = iters;
  cert.converged = false;
  (void)breakdown;
  return cert;
}

DirectionCertificate fista_block_subproblem(const SpdOperator& H, double Lmax,
                                            const Vector& grad,
                                            const Vector& x_block,
                                            double gamma, double eta,
                                            double sigma_lower) {
  check_eta(eta);
  if (Lmax <= 0.0) {
    throw std::invalid_argument("fista_block_subproblem: Lmax must be > 0");
  }
  if (gamma <= 0.0) {
    throw std::invalid_argument("fista_block_subproblem: gamma must be > 0");
  }
  if (sigma_lower <= 0.0) {
    throw std::invalid_argument(
        "fista_block_subproblem: sigma_lower must be > 0");
  }
  if (grad.size() != H.dim() || x_block.size() != H.dim()) {
    throw std::invalid_argument("fista_block_subproblem: dimension mismatch");
  }
  const Eigen::Index n = H.dim();
  const double floor_tol = std::max(1e-12, 1e-12 * grad.norm());
  constexpr int kCap = 10000;
  constexpr int kCheckEvery = 5;

  DirectionCertificate cert;
  cert.bound_used = InexactnessBound::cheap_sigma_check;

  // Stationarity at d = 0?
  {
    Vector v0 = -l1_min_norm_residual(grad, x_block, gamma);
    if (v0.norm() <= floor_tol) {
      cert.d = Vector::Zero(n);
      cert.v = std::move(v0);
      return cert;
    }
  }

  const double step = 1.0 / Lmax;
  Vector u = x_block;  // iterate in x+d space; d = u - x_block
  Vector y = u;
  Vector hd(n);
  double t = 1.0;
  for (int k = 1; k <= kCap; ++k) {
    H.apply(y - x_block, hd);
    Vector u_next = soft_threshold(y - step * (hd + grad), step * gamma);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = u_next + ((t - 1.0) / t_next) * (u_next - u);
    u = std::move(u_next);
    t = t_next;

    if (k % kCheckEvery == 0 || k == kCap) {
      Vector d = u - x_block;
      H.apply(d, hd);
      Vector v = -l1_min_norm_residual(hd + grad, u, gamma);
      const double dHd = std::max(0.0, d.dot(hd));
      const double lambda = std::sqrt(dHd);
      const double vnorm = v.norm();
      if (!std::isfinite(lambda) || !std::isfinite(vnorm)) {
        cert.d = std::move(d);
        cert.lambda = lambda;
        cert.v = std::move(v);
        cert.inner_iterations = k;
        cert.converged = false;  // iterates blew up (Lmax below the curvature)
        return cert;
      }
      const double thresh =
          eta > 0.0 ? eta * std::sqrt(sigma_lower) * lambda : floor_tol;
      if (vnorm <= thresh || k == kCap) {
        cert.d = std::move(d);
        cert.lambda = lambda;
        cert.v = std::move(v);
        cert.inner_iterations = k;
        cert.converged = vnorm <= thresh;
        return cert;
      }
    }
  }
  return cert;  // unreachable
}

double power_iteration_lmax(const SpdOperator::ApplyFn& apply,
                            Eigen::Index dim) {
  if (dim < 1) {
    throw std::invalid_argument("power_iteration_lmax: dim must be >= 1");
  }
  Vector v = power_start(dim);
  Vector w(dim);
  double est = 0.0;
  constexpr int kMinIters = 30;
  constexpr int kMaxIters = 200;
  for (int it = 0; it < kMaxIters; ++it) {
    apply(v, w);
    const double nw = w.norm();
    if (nw == 0.0) break;  // v in the kernel; PSD + random v => operator ~ 0
    const double prev = est;
    est = nw;
    v = w / nw;
    if (it + 1 >= kMinIters && std::abs(est - prev) <= 1e-9 * est) break;
  }
  return std::max(1.01 * est, 1e-300);
}

double power_iteration_lmax(const SpdOperator& H) {
  return power_iteration_lmax(
      [&H](const Vector& u, Vector& out) { H.apply(u, out); }, H.dim());
}

bool certificate_dual_norm_holds(const SpdOperator& H,
                                 const DirectionCertificate& cert, double eta,
                                 double slack) {
  const double dual = H.dual_norm(cert.v);
  return dual <= eta * cert.lambda + slack * std::max(1.0, cert.lambda);
}

}  // namespace rbpdn
