#include "rbpdn/duality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rbpdn/subsolvers.hpp"

namespace rbpdn {

namespace {

// -(1/m) sum log(1 - m s_i) - sum s_i log(m s_i / (1 - m s_i)) from an
// explicit dual point. Domain-checked.
double dual_log_terms(const ProblemSpec& spec, const DualPoint& sp) {
  const auto m = spec.samples();
  if (sp.s.size() != m) {
    throw std::invalid_argument("dual: s has wrong length");
  }
  const double md = static_cast<double>(m);
  double log_term = 0.0;
  double entropy_term = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double ms = md * sp.s(i);
    if (!(ms > 0.0 && ms < 1.0)) {
      throw std::invalid_argument("dual: m s_i outside (0, 1)");
    }
    log_term += std::log1p(-ms);
    entropy_term += sp.s(i) * std::log(ms / (1.0 - ms));
  }
  return -log_term / md - entropy_term;
}

Vector dual_combination(const ProblemSpec& spec, const Vector& s) {
  // u = sum_i s_i y_i w^i = W^T (s .* y)
  return spec.data.W.transpose() * s.cwiseProduct(spec.data.y);
}

}  // namespace

DualPoint dual_point(const ProblemSpec& spec, const Vector& x) {
  const Vector z = margins(spec, x);
  const double md = static_cast<double>(spec.samples());
  const double hi = std::nextafter(1.0, 0.0);
  DualPoint sp;
  sp.s.resize(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double sig = std::clamp(detail::sigmoid(-z(i)), 1e-300, hi);
    sp.s(i) = sig / md;
  }
  return sp;
}

double dual_value_rlr(const ProblemSpec& spec, const DualPoint& sp) {
  const Vector u = dual_combination(spec, sp.s);
  return dual_log_terms(spec, sp) - u.squaredNorm() / (2.0 * spec.mu);
}

double dual_value_srlr(const ProblemSpec& spec, const DualPoint& sp) {
  const Vector u = dual_combination(spec, sp.s);
  const Vector h = soft_threshold(u, spec.gamma) / spec.mu;
  return dual_log_terms(spec, sp) + 0.5 * spec.mu * h.squaredNorm() +
         spec.gamma * h.lpNorm<1>() - u.dot(h);
}

double duality_gap_from_margins(const ProblemSpec& spec, const Vector& z,
                                const Vector& x) {
  const auto m = spec.samples();
  const double md = static_cast<double>(m);
  // Expressed through the margins: m s_i = sigmoid(-z_i),
  // log(1 - m s_i) = -softplus(-z_i), log(m s_i / (1 - m s_i)) = -z_i.
  Vector s(m);
  double log_term = 0.0;
  double entropy_term = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    s(i) = detail::sigmoid(-z(i)) / md;
    log_term += detail::softplus(-z(i));
    entropy_term += s(i) * z(i);
  }
  const double primal = F_value_from_margins(spec, z, x);
  const Vector u = dual_combination(spec, s);
  double dual = log_term / md + entropy_term;
  if (spec.gamma > 0.0) {
    const Vector h = soft_threshold(u, spec.gamma) / spec.mu;
    dual += 0.5 * spec.mu * h.squaredNorm() + spec.gamma * h.lpNorm<1>() -
            u.dot(h);
  } else {
    dual -= u.squaredNorm() / (2.0 * spec.mu);
  }
  return primal - dual;
}

double duality_gap(const ProblemSpec& spec, const Vector& x) {
  return duality_gap_from_margins(spec, margins(spec, x), x);
}

}  // namespace rbpdn
