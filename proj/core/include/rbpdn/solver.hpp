#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "rbpdn/model.hpp"

namespace rbpdn {

struct SolverConfig {
  double eta = 0.25;                   // inexactness level, in [0, 1/4]
  std::vector<double> probabilities;   // empty: uniform over blocks
  double tol = 1e-3;                   // duality-gap threshold
  int gap_check_interval = 10;
  int max_iter = 100000;
  std::uint64_t seed = 0;
  int margin_refresh_interval = 1000;

  // Optional instrumentation; both default to disabled.
  std::function<void(int k, const Vector& x)> on_iterate;
  std::function<void(int k, int block, const DirectionCertificate&)>
      certificate_observer;
};

struct IterationRecord {
  int k = 0;
  int block = 0;
  double lambda = 0.0;          // local norm of the step direction
  double F = 0.0;               // objective after the step (original scale)
  std::optional<double> gap;    // present only at gap-check iterations
  double elapsed_seconds = 0.0;
};

enum class SolveStatus { converged, max_iter, subsolver_failure };

struct SolveResult {
  Vector x_final;
  SolveStatus status = SolveStatus::max_iter;
  std::vector<IterationRecord> trace;
  int iterations = 0;
  double final_gap = 0.0;
  double initial_objective = 0.0;  // F(x0), original scale
  double objective_scale = 1.0;    // factor applied to f while solving
  int failed_iteration = -1;       // set on subsolver_failure
};

const char* to_string(SolveStatus status);

/// Draws an index with the given probabilities, advancing the engine by one
/// raw output. The probabilities must be positive and sum to 1 (1e-12).
int sample_block(const std::vector<double>& p, std::mt19937_64& rng);

/// Inexact proximal Newton direction for one block at the slot's current
/// point: conjugate gradient when the model is smooth, FISTA on the
/// quadratic-plus-l1 subproblem otherwise.
DirectionCertificate block_direction(const BlockModel& model, int slot,
                                     int block, double eta);

/// Randomized block proximal damped Newton loop over an arbitrary model:
/// sample a block, solve the block subproblem inexactly, move by
/// d / (1 + lambda), check the duality gap every gap_check_interval
/// iterations.
SolveResult rbpdn_solve_model(BlockModel& model, const Vector& x0,
                              const SolverConfig& config);

/// RBPDN on a logistic ProblemSpec.
SolveResult rbpdn_solve(const ProblemSpec& spec, const Vector& x0,
                        const SolverConfig& config);

/// One RBPDN step from x (fresh caches); returns the next iterate and its
/// record.
std::pair<Vector, IterationRecord> rbpdn_step(const ProblemSpec& spec,
                                              const Vector& x,
                                              const SolverConfig& config,
                                              std::mt19937_64& rng);

/// Proximal damped Newton: RBPDN over the single-block partition. With
/// gamma = 0 this is the classical damped Newton method.
SolveResult pdn_solve(const ProblemSpec& spec, const Vector& x0,
                      const SolverConfig& config);

/// Trace CSV with columns iter,block,lambda,F,gap,elapsed_seconds (gap blank
/// away from check iterations). Doubles are serialized losslessly.
void write_trace_csv(std::ostream& os, const SolveResult& result);
void write_trace_csv(const std::string& path, const SolveResult& result);

}  // namespace rbpdn
