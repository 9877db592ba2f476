#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "rbpdn/rbapg.hpp"
#include "support/quadratic_model.hpp"
#include "support/test_util.hpp"

using namespace rbpdn;

namespace {

ProblemSpec random_spec(std::uint64_t seed, Eigen::Index m, Eigen::Index dim,
                        double mu, double gamma, int blocks) {
  return make_problem(generate_dataset(m, dim, seed), mu, gamma, blocks);
}

}  // namespace

TEST_CASE("block_lipschitz hand values") {
  ProblemSpec single;
  single.data.W.resize(1, 2);
  single.data.W << 1.0, 0.0;
  single.data.y.resize(1);
  single.data.y << 1.0;
  single.mu = 0.1;
  single.partition = BlockPartition::contiguous(2, 1);
  const BlockLipschitz bounds = block_lipschitz(single);
  REQUIRE(bounds.L.size() == 1);
  CHECK(bounds.L(0) >= 0.35);
  CHECK(bounds.L(0) <= 0.3536);  // 1.01 power-iteration safety factor

  // orthonormal rows: lambda_max(W^T W) = 1
  ProblemSpec ortho;
  ortho.data.W = Matrix::Identity(4, 4);
  ortho.data.y = Vector::Ones(4);
  ortho.mu = 0.05;
  ortho.partition = BlockPartition::contiguous(4, 1);
  const BlockLipschitz ob = block_lipschitz(ortho);
  CHECK(ob.L(0) >= 1.0 / 16.0 + 0.05);
  CHECK(ob.L(0) <= 1.01 * (1.0 / 16.0) + 0.05 + 1e-12);
}

TEST_CASE("block_lipschitz dominates the block curvature everywhere") {
  const ProblemSpec spec = random_spec(401, 30, 40, 1e-3, 0.0, 4);
  const BlockLipschitz bounds = block_lipschitz(spec);
  auto rng = testing::make_rng(402);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = testing::random_vector(rng, 40, -2.0, 2.0);
    for (int i = 0; i < 4; ++i) {
      const SpdOperator H = block_hessian(spec, x, i);
      const double lmax = Eigen::SelfAdjointEigenSolver<Matrix>(H.matrix())
                              .eigenvalues()
                              .maxCoeff();
      CHECK(bounds.L(i) >= lmax);
      CHECK(bounds.L(i) >= spec.mu);
    }
  }
}

TEST_CASE("accelerated scheme drives the quadratic to zero") {
  testing::QuadraticModel model(6, 2);
  auto rng = testing::make_rng(411);
  const Vector x0 = testing::random_vector(rng, 6, -1.0, 1.0);
  SolverConfig config;
  config.max_iter = 4000;
  config.tol = 1e-10;
  config.gap_check_interval = 10;
  const SolveResult result = rbapg_solve_model(model, x0, config);
  CHECK(result.status == SolveStatus::converged);
  CHECK(result.final_gap <= 1e-10);
  CHECK(result.x_final.norm() <= 1e-4);
}

TEST_CASE("plain variant never increases the objective") {
  const ProblemSpec spec = random_spec(421, 40, 24, 1e-2, 1e-2, 3);
  SolverConfig config;
  config.max_iter = 400;
  config.tol = 1e-12;
  config.seed = 5;
  const SolveResult result = rbapg_solve(spec, Vector::Zero(24), config,
                                         RbapgVariant::plain);
  double prev = result.initial_objective;
  for (const auto& rec : result.trace) {
    CHECK(rec.F <= prev + 1e-12);
    prev = rec.F;
  }
}

TEST_CASE("plain variant step matches a direct proximal-gradient step") {
  const ProblemSpec spec = random_spec(431, 25, 12, 1e-2, 5e-3, 1);
  SolverConfig config;
  config.max_iter = 1;
  config.tol = 1e-12;
  config.seed = 9;
  const SolveResult result = rbapg_solve(spec, Vector::Zero(12), config,
                                         RbapgVariant::plain);
  // direct implementation through the problem surface
  LogisticModel model(spec);
  const double L = model.block_lipschitz_bound(0);
  const Vector g = f_grad(spec, Vector::Zero(12));
  const Vector expected =
      soft_threshold(Vector(Vector::Zero(12) - g / L), spec.gamma / L);
  CHECK((result.x_final - expected).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("accelerated runs converge on logistic problems with valid gaps") {
  for (const double gamma : {0.0, 1e-2}) {
    const ProblemSpec spec = random_spec(441, 60, 40, 1e-2, gamma, 4);
    SolverConfig config;
    config.max_iter = 20000;
    config.tol = 1e-4;
    config.seed = 2;
    const SolveResult result = rbapg_solve(spec, Vector::Zero(40), config);
    REQUIRE(result.status == SolveStatus::converged);
    CHECK(result.final_gap <= config.tol);
    for (const auto& rec : result.trace) {
      if (rec.gap) CHECK(*rec.gap >= -1e-10);
    }
  }
}

TEST_CASE("rbapg traces are deterministic in the seed") {
  const ProblemSpec spec = random_spec(451, 30, 20, 1e-2, 1e-3, 2);
  SolverConfig config;
  config.max_iter = 200;
  config.tol = 1e-9;
  config.seed = 17;
  const SolveResult a = rbapg_solve(spec, Vector::Zero(20), config);
  const SolveResult b = rbapg_solve(spec, Vector::Zero(20), config);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].block == b.trace[i].block);
    CHECK(a.trace[i].F == b.trace[i].F);
  }
  CHECK((a.x_final - b.x_final).cwiseAbs().maxCoeff() == 0.0);
}
