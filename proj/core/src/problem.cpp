#include "rbpdn/problem.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace rbpdn {

namespace detail {

double sigmoid(double t) {
  if (t >= 0.0) {
    return 1.0 / (1.0 + std::exp(-t));
  }
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double softplus(double t) {
  if (t <= 0.0) return std::log1p(std::exp(t));
  return t + std::log1p(std::exp(-t));
}

}  // namespace detail

BlockPartition BlockPartition::contiguous(Eigen::Index dim, int n) {
  if (dim < 1 || n < 1 || static_cast<Eigen::Index>(n) > dim) {
    throw std::invalid_argument("BlockPartition: need 1 <= n <= dim");
  }
  BlockPartition part;
  part.offsets.reserve(n);
  part.sizes.reserve(n);
  const Eigen::Index base = dim / n;
  const Eigen::Index rem = dim % n;
  Eigen::Index offset = 0;
  for (int i = 0; i < n; ++i) {
    const Eigen::Index size = base + (i < rem ? 1 : 0);
    part.offsets.push_back(offset);
    part.sizes.push_back(size);
    offset += size;
  }
  return part;
}

Eigen::Index BlockPartition::total_dim() const {
  Eigen::Index total = 0;
  for (const auto s : sizes) total += s;
  return total;
}

void BlockPartition::validate(Eigen::Index dim) const {
  if (offsets.size() != sizes.size() || offsets.empty()) {
    throw std::invalid_argument("BlockPartition: malformed");
  }
  Eigen::Index expect = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1 || offsets[i] != expect) {
      throw std::invalid_argument("BlockPartition: blocks must be contiguous "
                                  "disjoint and nonempty");
    }
    expect += sizes[i];
  }
  if (expect != dim) {
    throw std::invalid_argument("BlockPartition: blocks do not cover 0..N-1");
  }
}

ProblemSpec make_problem(Dataset data, double mu, double gamma, int n_blocks,
                         ScScaleMode scale_mode) {
  if (mu <= 0.0) throw std::invalid_argument("make_problem: mu must be > 0");
  if (gamma < 0.0) {
    throw std::invalid_argument("make_problem: gamma must be >= 0");
  }
  data.validate();
  ProblemSpec spec;
  spec.partition = BlockPartition::contiguous(data.dim(), n_blocks);
  double row_max = 0.0;
  for (Eigen::Index i = 0; i < data.samples(); ++i) {
    row_max = std::max(row_max, data.W.row(i).norm());
  }
  spec.data = std::move(data);
  spec.mu = mu;
  spec.gamma = gamma;
  spec.sigma_lower = mu;
  spec.sc_parameter = row_max / std::sqrt(mu);
  spec.scale_mode = scale_mode;
  return spec;
}

Vector margins(const ProblemSpec& spec, const Vector& x) {
  if (x.size() != spec.dim()) {
    throw std::invalid_argument("margins: dimension mismatch");
  }
  return (spec.data.W * x).cwiseProduct(spec.data.y);
}

double f_value_from_margins(const ProblemSpec& spec, const Vector& z,
                            const Vector& x) {
  double loss = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    loss += detail::softplus(-z(i));
  }
  return loss / static_cast<double>(spec.samples()) +
         0.5 * spec.mu * x.squaredNorm();
}

double f_value(const ProblemSpec& spec, const Vector& x) {
  return f_value_from_margins(spec, margins(spec, x), x);
}

Vector f_grad_block_from_margins(const ProblemSpec& spec, const Vector& z,
                                 const Vector& x, int block) {
  const auto offset = spec.partition.offsets.at(block);
  const auto size = spec.partition.sizes.at(block);
  Vector t(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    t(i) = spec.data.y(i) * detail::sigmoid(-z(i));
  }
  Vector g = spec.data.W.middleCols(offset, size).transpose() * t;
  g *= -1.0 / static_cast<double>(spec.samples());
  g += spec.mu * x.segment(offset, size);
  return g;
}

Vector f_grad(const ProblemSpec& spec, const Vector& x,
              std::optional<int> block) {
  const Vector z = margins(spec, x);
  if (block) return f_grad_block_from_margins(spec, z, x, *block);
  Vector t(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    t(i) = spec.data.y(i) * detail::sigmoid(-z(i));
  }
  Vector g = spec.data.W.transpose() * t;
  g *= -1.0 / static_cast<double>(spec.samples());
  g += spec.mu * x;
  return g;
}

SpdOperator block_hessian_from_margins(const ProblemSpec& spec,
                                       const Vector& z, int block) {
  const auto offset = spec.partition.offsets.at(block);
  const auto size = spec.partition.sizes.at(block);
  const auto m = spec.samples();
  Vector sqrt_weights(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double s = detail::sigmoid(z(i));
    sqrt_weights(i) = std::sqrt(s * (1.0 - s));
  }
  if (size <= spec.materialize_threshold) {
    Matrix B = sqrt_weights.asDiagonal() * spec.data.W.middleCols(offset, size);
    Matrix H = Matrix::Zero(size, size);
    H.selfadjointView<Eigen::Lower>().rankUpdate(B.transpose(),
                                                 1.0 / static_cast<double>(m));
    H.triangularView<Eigen::StrictlyUpper>() = H.transpose();
    H.diagonal().array() += spec.mu;
    return SpdOperator(std::move(H));
  }
  auto weights = std::make_shared<Vector>(sqrt_weights.cwiseProduct(sqrt_weights));
  const double mu = spec.mu;
  const Matrix* W = &spec.data.W;
  return SpdOperator(size, [W, offset, size, weights, mu, m](const Vector& u,
                                                             Vector& out) {
    Vector t = W->middleCols(offset, size) * u;
    t.array() *= weights->array();
    out.noalias() = W->middleCols(offset, size).transpose() * t;
    out /= static_cast<double>(m);
    out += mu * u;
  });
}

SpdOperator block_hessian(const ProblemSpec& spec, const Vector& x,
                          int block) {
  return block_hessian_from_margins(spec, margins(spec, x), block);
}

double F_value_from_margins(const ProblemSpec& spec, const Vector& z,
                            const Vector& x) {
  return f_value_from_margins(spec, z, x) +
         spec.gamma * x.lpNorm<1>();
}

double F_value(const ProblemSpec& spec, const Vector& x) {
  return F_value_from_margins(spec, margins(spec, x), x);
}

double standardize_scale(const ProblemSpec& spec) {
  if (spec.sc_parameter == 0.0) return 1.0;
  return 0.25 * spec.sc_parameter * spec.sc_parameter;
}

}  // namespace rbpdn
