// Microbenchmarks for the solver hot path at the desk experiment scale
// (m = 1000, N = 3000, 10 blocks).

#include <benchmark/benchmark.h>

#include <random>

#include "rbpdn/duality.hpp"
#include "rbpdn/model.hpp"
#include "rbpdn/solver.hpp"

namespace {

using namespace rbpdn;

const ProblemSpec& desk_spec(double gamma) {
  static const ProblemSpec rlr =
      make_problem(generate_dataset(1000, 3000, 1), 1e-5, 0.0, 10);
  static const ProblemSpec srlr =
      make_problem(generate_dataset(1000, 3000, 1), 1e-5, 1e-4, 10);
  return gamma > 0.0 ? srlr : rlr;
}

Vector warm_point(const ProblemSpec& spec) {
  // a few solver steps away from the origin, so the curvature is generic
  SolverConfig config;
  config.max_iter = 5;
  config.tol = 1e-12;
  return rbpdn_solve(spec, Vector::Zero(spec.dim()), config).x_final;
}

void BM_BlockHessianMaterialize(benchmark::State& state) {
  const ProblemSpec& spec = desk_spec(0.0);
  const Vector x = warm_point(spec);
  const Vector z = margins(spec, x);
  int block = 0;
  for (auto _ : state) {
    SpdOperator H = block_hessian_from_margins(spec, z, block);
    benchmark::DoNotOptimize(H.matrix().data());
    block = (block + 1) % spec.partition.count();
  }
}
BENCHMARK(BM_BlockHessianMaterialize)->Unit(benchmark::kMillisecond);

void BM_CgBlockDirection(benchmark::State& state) {
  const ProblemSpec& spec = desk_spec(0.0);
  LogisticModel model(spec);
  model.set_point(BlockModel::kPrimary, warm_point(spec));
  int block = 0;
  for (auto _ : state) {
    const DirectionCertificate cert =
        block_direction(model, BlockModel::kPrimary, block, 0.25);
    benchmark::DoNotOptimize(cert.lambda);
    block = (block + 1) % spec.partition.count();
  }
}
BENCHMARK(BM_CgBlockDirection)->Unit(benchmark::kMillisecond);

void BM_FistaBlockDirection(benchmark::State& state) {
  const ProblemSpec& spec = desk_spec(1e-4);
  LogisticModel model(spec);
  model.set_point(BlockModel::kPrimary, warm_point(spec));
  int block = 0;
  for (auto _ : state) {
    const DirectionCertificate cert =
        block_direction(model, BlockModel::kPrimary, block, 0.25);
    benchmark::DoNotOptimize(cert.lambda);
    block = (block + 1) % spec.partition.count();
  }
}
BENCHMARK(BM_FistaBlockDirection)->Unit(benchmark::kMillisecond);

void BM_DualityGap(benchmark::State& state) {
  const ProblemSpec& spec = desk_spec(0.0);
  const Vector x = warm_point(spec);
  const Vector z = margins(spec, x);
  for (auto _ : state) {
    benchmark::DoNotOptimize(duality_gap_from_margins(spec, z, x));
  }
}
BENCHMARK(BM_DualityGap)->Unit(benchmark::kMillisecond);

void BM_MarginBlockUpdate(benchmark::State& state) {
  const ProblemSpec& spec = desk_spec(0.0);
  LogisticModel model(spec);
  model.set_point(BlockModel::kPrimary, warm_point(spec));
  const auto size = spec.partition.sizes[0];
  Vector delta = Vector::Constant(size, 1e-9);
  for (auto _ : state) {
    model.add_to_block(BlockModel::kPrimary, 0, delta);
    delta = -delta;
  }
}
BENCHMARK(BM_MarginBlockUpdate)->Unit(benchmark::kMicrosecond);

void BM_RbpdnIteration(benchmark::State& state) {
  const ProblemSpec& spec = desk_spec(0.0);
  SolverConfig config;
  config.tol = 1e-12;
  std::mt19937_64 rng(3);
  Vector x = warm_point(spec);
  for (auto _ : state) {
    auto [next, record] = rbpdn_step(spec, x, config, rng);
    benchmark::DoNotOptimize(record.lambda);
    x = std::move(next);
  }
}
BENCHMARK(BM_RbpdnIteration)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
