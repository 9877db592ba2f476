#pragma once

#include <memory>
#include <vector>

#include "rbpdn/duality.hpp"
#include "rbpdn/problem.hpp"
#include "rbpdn/subsolvers.hpp"

namespace rbpdn {

/// Evaluation surface the randomized block solvers drive. A model holds a
/// small number of point slots (the damped Newton solver evolves one, the
/// accelerated baseline evolves two plus a scratch slot) and may cache
/// per-slot state. All f-side quantities are reported on the working scale
/// (objective_scale() * f); the unscaled objective and the duality gap are
/// exposed separately for termination and reporting.
class BlockModel {
 public:
  static constexpr int kPrimary = 0;
  static constexpr int kSecondary = 1;
  static constexpr int kScratch = 2;
  static constexpr int kSlots = 3;

  virtual ~BlockModel() = default;

  virtual Eigen::Index dim() const = 0;
  virtual const BlockPartition& blocks() const = 0;
  /// l1 weight on the working scale; 0 means the problem is smooth.
  virtual double l1_weight() const = 0;
  /// Lower bound on lambda_min of the (scaled) Hessian.
  virtual double sigma_lower() const = 0;
  virtual double objective_scale() const = 0;

  virtual void set_point(int slot, const Vector& x) = 0;
  /// point[slot].segment(block) += delta, updating slot caches.
  virtual void add_to_block(int slot, int block, const Vector& delta) = 0;
  /// point[dst] = a * point[s1] + b * point[s2].
  virtual void set_combination(int dst, double a, int s1, double b,
                               int s2) = 0;
  virtual const Vector& point(int slot) const = 0;

  /// Scaled smooth value at the slot.
  virtual double smooth_value(int slot) const = 0;
  /// Scaled objective (smooth + l1) at the slot.
  double objective(int slot) const {
    return smooth_value(slot) + l1_weight() * point(slot).lpNorm<1>();
  }
  /// Scaled block gradient of the smooth part.
  virtual Vector block_gradient(int slot, int block) const = 0;
  /// Scaled block Hessian of the smooth part.
  virtual SpdOperator block_hessian(int slot, int block) const = 0;
  /// Global upper bound on lambda_max of the scaled block Hessian,
  /// valid at every point.
  virtual double block_lipschitz_bound(int block) const = 0;

  /// User-facing objective (original scale).
  virtual double objective_unscaled(int slot) const = 0;
  /// Duality gap at the slot (original scale).
  virtual double duality_gap(int slot) const = 0;
};

/// BlockModel over a logistic ProblemSpec. Caches per-slot margins
/// y_i <w^i, x> and updates them incrementally on block moves (margins are
/// linear in x, so slot combinations combine them directly); they are
/// recomputed from scratch every `margin_refresh_interval` updates to bound
/// floating-point drift. With ScScaleMode::rescale the smooth part is
/// multiplied by standardize_scale(spec), which makes it standard
/// self-concordant; the l1 weight and sigma_lower scale along with it.
class LogisticModel final : public BlockModel {
 public:
  explicit LogisticModel(const ProblemSpec& spec,
                         int margin_refresh_interval = 1000);

  Eigen::Index dim() const override { return spec_.dim(); }
  const BlockPartition& blocks() const override { return spec_.partition; }
  double l1_weight() const override { return scale_ * spec_.gamma; }
  double sigma_lower() const override { return scale_ * spec_.sigma_lower; }
  double objective_scale() const override { return scale_; }

  void set_point(int slot, const Vector& x) override;
  void add_to_block(int slot, int block, const Vector& delta) override;
  void set_combination(int dst, double a, int s1, double b, int s2) override;
  const Vector& point(int slot) const override;

  double smooth_value(int slot) const override;
  Vector block_gradient(int slot, int block) const override;
  SpdOperator block_hessian(int slot, int block) const override;
  double block_lipschitz_bound(int block) const override;

  double objective_unscaled(int slot) const override;
  double duality_gap(int slot) const override;

  const ProblemSpec& spec() const { return spec_; }

 private:
  struct Slot {
    Vector x;
    Vector margins;
    bool active = false;
  };
  const Slot& checked(int slot) const;

  const ProblemSpec& spec_;
  double scale_ = 1.0;
  int refresh_interval_;
  int updates_since_refresh_ = 0;
  std::vector<Slot> slots_;
  mutable std::vector<double> block_lmax_;  // lazy lambda_max(W_i^T W_i)
};

}  // namespace rbpdn
