#include "rbpdn/model.hpp"

#include <cmath>
#include <stdexcept>

namespace rbpdn {

LogisticModel::LogisticModel(const ProblemSpec& spec,
                             int margin_refresh_interval)
    : spec_(spec),
      refresh_interval_(margin_refresh_interval),
      slots_(kSlots),
      block_lmax_(spec.partition.sizes.size(), -1.0) {
  spec_.partition.validate(spec_.dim());
  if (refresh_interval_ < 1) {
    throw std::invalid_argument("LogisticModel: refresh interval must be >= 1");
  }
  if (spec_.scale_mode == ScScaleMode::rescale) {
    scale_ = standardize_scale(spec_);
  }
}

const LogisticModel::Slot& LogisticModel::checked(int slot) const {
  const auto& s = slots_.at(static_cast<std::size_t>(slot));
  if (!s.active) throw std::logic_error("LogisticModel: slot not set");
  return s;
}

void LogisticModel::set_point(int slot, const Vector& x) {
  if (x.size() != spec_.dim()) {
    throw std::invalid_argument("LogisticModel: dimension mismatch");
  }
  auto& s = slots_.at(static_cast<std::size_t>(slot));
  s.x = x;
  s.margins = margins(spec_, x);
  s.active = true;
}

void LogisticModel::add_to_block(int slot, int block, const Vector& delta) {
  auto& s = slots_.at(static_cast<std::size_t>(slot));
  if (!s.active) throw std::logic_error("LogisticModel: slot not set");
  const auto offset = spec_.partition.offsets.at(block);
  const auto size = spec_.partition.sizes.at(block);
  if (delta.size() != size) {
    throw std::invalid_argument("LogisticModel: delta size mismatch");
  }
  s.x.segment(offset, size) += delta;
  s.margins += (spec_.data.W.middleCols(offset, size) * delta)
                   .cwiseProduct(spec_.data.y);
  if (++updates_since_refresh_ >= refresh_interval_) {
    updates_since_refresh_ = 0;
    for (auto& slot_state : slots_) {
      if (slot_state.active) {
        slot_state.margins = margins(spec_, slot_state.x);
      }
    }
  }
}

void LogisticModel::set_combination(int dst, double a, int s1, double b,
                                    int s2) {
  const Slot& p = checked(s1);
  const Slot& q = checked(s2);
  auto& out = slots_.at(static_cast<std::size_t>(dst));
  // Aliasing with s1/s2 is fine: these are pure linear combinations.
  out.x = a * p.x + b * q.x;
  out.margins = a * p.margins + b * q.margins;
  out.active = true;
}

const Vector& LogisticModel::point(int slot) const { return checked(slot).x; }

double LogisticModel::smooth_value(int slot) const {
  const Slot& s = checked(slot);
  return scale_ * f_value_from_margins(spec_, s.margins, s.x);
}

Vector LogisticModel::block_gradient(int slot, int block) const {
  const Slot& s = checked(slot);
  Vector g = f_grad_block_from_margins(spec_, s.margins, s.x, block);
  if (scale_ != 1.0) g *= scale_;
  return g;
}

SpdOperator LogisticModel::block_hessian(int slot, int block) const {
  const Slot& s = checked(slot);
  SpdOperator H = block_hessian_from_margins(spec_, s.margins, block);
  if (scale_ == 1.0) return H;
  if (H.is_dense()) {
    return SpdOperator(Matrix(scale_ * H.matrix()));
  }
  const double c = scale_;
  auto inner = std::make_shared<SpdOperator>(std::move(H));
  return SpdOperator(inner->dim(), [inner, c](const Vector& u, Vector& out) {
    inner->apply(u, out);
    out *= c;
  });
}

double LogisticModel::block_lipschitz_bound(int block) const {
  double& cached = block_lmax_.at(static_cast<std::size_t>(block));
  if (cached < 0.0) {
    const auto offset = spec_.partition.offsets.at(block);
    const auto size = spec_.partition.sizes.at(block);
    const Matrix& W = spec_.data.W;
    cached = power_iteration_lmax(
        [&W, offset, size](const Vector& u, Vector& out) {
          out.noalias() = W.middleCols(offset, size).transpose() *
                          (W.middleCols(offset, size) * u);
        },
        size);
  }
  // Logistic curvature weights are at most 1/4.
  return scale_ * (cached / (4.0 * static_cast<double>(spec_.samples())) +
                   spec_.mu);
}

double LogisticModel::objective_unscaled(int slot) const {
  const Slot& s = checked(slot);
  return F_value_from_margins(spec_, s.margins, s.x);
}

double LogisticModel::duality_gap(int slot) const {
  const Slot& s = checked(slot);
  return duality_gap_from_margins(spec_, s.margins, s.x);
}

}  // namespace rbpdn
