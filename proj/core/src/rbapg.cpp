#include "rbpdn/rbapg.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace rbpdn {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

BlockLipschitz block_lipschitz(const ProblemSpec& spec) {
  const int n = spec.partition.count();
  const Matrix& W = spec.data.W;
  BlockLipschitz bounds;
  bounds.L.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto offset = spec.partition.offsets[static_cast<std::size_t>(i)];
    const auto size = spec.partition.sizes[static_cast<std::size_t>(i)];
    const double gram_lmax = power_iteration_lmax(
        [&W, offset, size](const Vector& u, Vector& out) {
          out.noalias() = W.middleCols(offset, size).transpose() *
                          (W.middleCols(offset, size) * u);
        },
        size);
    bounds.L(i) =
        gram_lmax / (4.0 * static_cast<double>(spec.samples())) + spec.mu;
  }
  return bounds;
}

SolveResult rbapg_solve_model(BlockModel& model, const Vector& x0,
                              const SolverConfig& config,
                              RbapgVariant variant) {
  if (config.tol <= 0.0 || config.gap_check_interval < 1 ||
      config.max_iter < 0) {
    throw std::invalid_argument("rbapg: bad config");
  }
  const int n = model.blocks().count();
  std::vector<double> p = config.probabilities;
  if (p.empty()) p.assign(static_cast<std::size_t>(n), 1.0 / n);
  if (static_cast<int>(p.size()) != n) {
    throw std::invalid_argument("rbapg: probabilities size != block count");
  }
  double p_sum = 0.0;
  for (const double pi : p) {
    if (pi <= 0.0) {
      throw std::invalid_argument("rbapg: probabilities must be positive");
    }
    p_sum += pi;
  }
  if (std::abs(p_sum - 1.0) > 1e-12) {
    throw std::invalid_argument("rbapg: probabilities must sum to 1");
  }
  std::mt19937_64 rng(config.seed);
  const auto start = Clock::now();
  const double gamma = model.l1_weight();

  Vector L(n);
  double max_L = 0.0;
  for (int i = 0; i < n; ++i) {
    L(i) = model.block_lipschitz_bound(i);
    max_L = std::max(max_L, L(i));
  }
  const double sigma_ratio = model.sigma_lower() / max_L;
  const double alpha = std::sqrt(sigma_ratio) / static_cast<double>(n);

  constexpr int kX = BlockModel::kPrimary;
  constexpr int kZ = BlockModel::kSecondary;
  constexpr int kY = BlockModel::kScratch;
  model.set_point(kX, x0);
  if (variant == RbapgVariant::accelerated) model.set_point(kZ, x0);

  SolveResult result;
  result.objective_scale = model.objective_scale();
  result.initial_objective = model.objective_unscaled(kX);

  SolveStatus status = SolveStatus::max_iter;
  double last_gap = 0.0;
  bool gap_at_final = false;
  int steps = 0;
  for (int k = 0; k < config.max_iter; ++k) {
    const int block = sample_block(p, rng);
    const auto offset = model.blocks().offsets.at(block);
    const auto size = model.blocks().sizes.at(block);
    const double Li = L(block);

    if (variant == RbapgVariant::accelerated) {
      // y = (x + alpha z) / (1 + alpha)
      model.set_combination(kY, 1.0 / (1.0 + alpha), kX, alpha / (1.0 + alpha),
                            kZ);
      const Vector grad = model.block_gradient(kY, block);
      const Vector w_block =
          (1.0 - alpha) * model.point(kZ).segment(offset, size) +
          alpha * model.point(kY).segment(offset, size);
      const double prox_weight = static_cast<double>(n) * alpha * Li;
      Vector z_block = w_block - grad / prox_weight;
      if (gamma > 0.0) z_block = soft_threshold(z_block, gamma / prox_weight);
      const Vector delta = z_block - w_block;

      model.set_combination(kZ, 1.0 - alpha, kZ, alpha, kY);
      model.add_to_block(kZ, block, delta);
      model.set_combination(kX, 1.0, kY, 0.0, kY);
      model.add_to_block(kX, block,
                         Vector(static_cast<double>(n) * alpha * delta));
    } else {
      const Vector grad = model.block_gradient(kX, block);
      Vector target = model.point(kX).segment(offset, size) - grad / Li;
      if (gamma > 0.0) target = soft_threshold(target, gamma / Li);
      model.add_to_block(
          kX, block, Vector(target - model.point(kX).segment(offset, size)));
    }
    steps = k + 1;

    IterationRecord rec;
    rec.k = k;
    rec.block = block;
    rec.lambda = 0.0;  // no local-norm certificate for gradient steps
    rec.F = model.objective_unscaled(kX);
    const bool check = ((k + 1) % config.gap_check_interval) == 0;
    if (check) {
      last_gap = model.duality_gap(kX);
      rec.gap = last_gap;
      gap_at_final = true;
    } else {
      gap_at_final = false;
    }
    rec.elapsed_seconds = seconds_since(start);
    result.trace.push_back(std::move(rec));
    if (check && last_gap <= config.tol) {
      status = SolveStatus::converged;
      break;
    }
  }

  result.x_final = model.point(kX);
  result.status = status;
  result.iterations = steps;
  result.final_gap = gap_at_final ? last_gap : model.duality_gap(kX);
  return result;
}

SolveResult rbapg_solve(const ProblemSpec& spec, const Vector& x0,
                        const SolverConfig& config, RbapgVariant variant) {
  LogisticModel model(spec, config.margin_refresh_interval);
  return rbapg_solve_model(model, x0, config, variant);
}

}  // namespace rbpdn
