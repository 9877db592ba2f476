#include "rbpdn/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rbpdn {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<double> resolve_probabilities(const SolverConfig& config, int n) {
  std::vector<double> p = config.probabilities;
  if (p.empty()) {
    p.assign(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
    return p;
  }
  if (static_cast<int>(p.size()) != n) {
    throw std::invalid_argument("solver: probabilities size != block count");
  }
  double sum = 0.0;
  for (const double pi : p) {
    if (pi <= 0.0) {
      throw std::invalid_argument("solver: probabilities must be positive");
    }
    sum += pi;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("solver: probabilities must sum to 1");
  }
  return p;
}

void validate_config(const SolverConfig& config) {
  if (config.eta < 0.0 || config.eta > 0.25) {
    throw std::invalid_argument("solver: eta must lie in [0, 1/4]");
  }
  if (config.tol <= 0.0) {
    throw std::invalid_argument("solver: tol must be > 0");
  }
  if (config.gap_check_interval < 1) {
    throw std::invalid_argument("solver: gap_check_interval must be >= 1");
  }
  if (config.max_iter < 0) {
    throw std::invalid_argument("solver: max_iter must be >= 0");
  }
}

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iter: return "max_iter";
    case SolveStatus::subsolver_failure: return "subsolver_failure";
  }
  return "unknown";
}

int sample_block(const std::vector<double>& p, std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    cumulative += p[i];
    if (u < cumulative) return static_cast<int>(i);
  }
  return static_cast<int>(p.size()) - 1;
}

DirectionCertificate block_direction(const BlockModel& model, int slot,
                                     int block, double eta) {
  const Vector grad = model.block_gradient(slot, block);
  const SpdOperator H = model.block_hessian(slot, block);
  if (model.l1_weight() == 0.0) {
    return cg_inexact_newton(H, -grad, model.sigma_lower(), eta);
  }
  const auto offset = model.blocks().offsets.at(block);
  const auto size = model.blocks().sizes.at(block);
  const Vector x_block = model.point(slot).segment(offset, size);
  return fista_block_subproblem(H, model.block_lipschitz_bound(block), grad,
                                x_block, model.l1_weight(), eta,
                                model.sigma_lower());
}

SolveResult rbpdn_solve_model(BlockModel& model, const Vector& x0,
                              const SolverConfig& config) {
  validate_config(config);
  const int n = model.blocks().count();
  const std::vector<double> p = resolve_probabilities(config, n);
  std::mt19937_64 rng(config.seed);
  const auto start = Clock::now();

  model.set_point(BlockModel::kPrimary, x0);
  SolveResult result;
  result.objective_scale = model.objective_scale();
  result.initial_objective = model.objective_unscaled(BlockModel::kPrimary);
  result.trace.reserve(static_cast<std::size_t>(
      std::min(config.max_iter, 1 << 20)));

  SolveStatus status = SolveStatus::max_iter;
  double last_gap = 0.0;
  bool gap_at_final = false;
  int steps = 0;
  for (int k = 0; k < config.max_iter; ++k) {
    if (config.on_iterate) {
      config.on_iterate(k, model.point(BlockModel::kPrimary));
    }
    const int block = sample_block(p, rng);
    DirectionCertificate cert =
        block_direction(model, BlockModel::kPrimary, block, config.eta);
    if (!cert.converged) {
      status = SolveStatus::subsolver_failure;
      result.failed_iteration = k;
      break;
    }
    if (config.certificate_observer) {
      config.certificate_observer(k, block, cert);
    }
    if (cert.lambda > 0.0) {
      model.add_to_block(BlockModel::kPrimary, block,
                         Vector(cert.d / (1.0 + cert.lambda)));
    }
    steps = k + 1;

    IterationRecord rec;
    rec.k = k;
    rec.block = block;
    rec.lambda = cert.lambda;
    rec.F = model.objective_unscaled(BlockModel::kPrimary);
    const bool check = ((k + 1) % config.gap_check_interval) == 0;
    if (check) {
      last_gap = model.duality_gap(BlockModel::kPrimary);
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

  result.x_final = model.point(BlockModel::kPrimary);
  result.status = status;
  result.iterations = steps;
  result.final_gap =
      gap_at_final ? last_gap : model.duality_gap(BlockModel::kPrimary);
  return result;
}

SolveResult rbpdn_solve(const ProblemSpec& spec, const Vector& x0,
                        const SolverConfig& config) {
  LogisticModel model(spec, config.margin_refresh_interval);
  return rbpdn_solve_model(model, x0, config);
}

std::pair<Vector, IterationRecord> rbpdn_step(const ProblemSpec& spec,
                                              const Vector& x,
                                              const SolverConfig& config,
                                              std::mt19937_64& rng) {
  validate_config(config);
  LogisticModel model(spec, config.margin_refresh_interval);
  model.set_point(BlockModel::kPrimary, x);
  const int n = model.blocks().count();
  const std::vector<double> p = resolve_probabilities(config, n);
  const auto start = Clock::now();

  const int block = sample_block(p, rng);
  DirectionCertificate cert =
      block_direction(model, BlockModel::kPrimary, block, config.eta);
  if (!cert.converged) {
    throw std::runtime_error("rbpdn_step: block subproblem did not converge");
  }
  if (cert.lambda > 0.0) {
    model.add_to_block(BlockModel::kPrimary, block,
                       Vector(cert.d / (1.0 + cert.lambda)));
  }
  IterationRecord rec;
  rec.k = 0;
  rec.block = block;
  rec.lambda = cert.lambda;
  rec.F = model.objective_unscaled(BlockModel::kPrimary);
  rec.elapsed_seconds = seconds_since(start);
  return {model.point(BlockModel::kPrimary), rec};
}

SolveResult pdn_solve(const ProblemSpec& spec, const Vector& x0,
                      const SolverConfig& config) {
  ProblemSpec single = spec;
  single.partition = BlockPartition::contiguous(spec.dim(), 1);
  SolverConfig pdn_config = config;
  pdn_config.probabilities.clear();  // uniform over the single block
  return rbpdn_solve(single, x0, pdn_config);
}

void write_trace_csv(std::ostream& os, const SolveResult& result) {
  os << "iter,block,lambda,F,gap,elapsed_seconds\n";
  char buf[128];
  for (const auto& rec : result.trace) {
    if (rec.gap.has_value()) {
      std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g,%.6f", rec.k,
                    rec.block, rec.lambda, rec.F, *rec.gap,
                    rec.elapsed_seconds);
    } else {
      std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,,%.6f", rec.k,
                    rec.block, rec.lambda, rec.F, rec.elapsed_seconds);
    }
    os << buf << "\n";
  }
}

void write_trace_csv(const std::string& path, const SolveResult& result) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("trace: cannot open " + path);
  write_trace_csv(os, result);
  if (!os) throw std::runtime_error("trace: write failed for " + path);
}

}  // namespace rbpdn
