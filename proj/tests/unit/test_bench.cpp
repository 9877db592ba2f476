#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rbpdn/bench.hpp"

using namespace rbpdn;

TEST_CASE("method and problem names round-trip") {
  for (const Method m : {Method::rbpdn, Method::rbapg, Method::pdn}) {
    CHECK(parse_method(to_string(m)) == m);
  }
  for (const ProblemKind k : {ProblemKind::rlr, ProblemKind::srlr}) {
    CHECK(parse_problem(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_method("newton"), std::invalid_argument);
  CHECK_THROWS_AS(parse_problem("ridge"), std::invalid_argument);
}

TEST_CASE("solution_cardinality applies the zero threshold") {
  Vector x(4);
  x << 0.0, 1e-11, -1e-9, 2.0;
  CHECK(solution_cardinality(x) == 2);
  CHECK(solution_cardinality(x, 1e-12) == 3);
}

TEST_CASE("run_bench emits per-run rows and matching per-dim averages") {
  BenchPlan plan;
  plan.dims = {24};
  plan.copies = 2;
  plan.m = 30;
  plan.mu = 1e-2;
  plan.problem = ProblemKind::srlr;
  plan.gamma = 1e-2;
  plan.blocks = 3;
  plan.tol = 1e-3;
  plan.max_iter = 20000;
  plan.methods = {Method::rbpdn, Method::rbapg};
  plan.seed_base = 7;

  const BenchResults results = run_bench(plan);
  REQUIRE(results.runs.size() == 4);
  REQUIRE(results.summaries.size() == 2);
  for (const auto& summary : results.summaries) {
    double iters = 0.0, obj = 0.0, card = 0.0;
    int count = 0;
    for (const auto& run : results.runs) {
      if (run.method != summary.method) continue;
      CHECK(run.status == "converged");
      CHECK(run.final_gap <= plan.tol);
      iters += run.iterations;
      obj += run.objective;
      card += static_cast<double>(run.cardinality);
      ++count;
    }
    REQUIRE(count == 2);
    CHECK(summary.iters_avg == doctest::Approx(iters / 2).epsilon(1e-15));
    CHECK(summary.obj_avg == doctest::Approx(obj / 2).epsilon(1e-15));
    CHECK(summary.card_avg == doctest::Approx(card / 2).epsilon(1e-15));
    CHECK(summary.converged == 2);
  }
  // the two methods agree on the objective to benchmark accuracy
  CHECK(std::abs(results.summaries[0].obj_avg -
                 results.summaries[1].obj_avg) <= 2 * plan.tol);
}

TEST_CASE("bench CSVs are bit-reproducible without timing columns") {
  BenchPlan plan;
  plan.dims = {16};
  plan.copies = 1;
  plan.m = 20;
  plan.mu = 1e-2;
  plan.problem = ProblemKind::rlr;
  plan.blocks = 2;
  plan.tol = 1e-3;
  plan.max_iter = 10000;
  plan.methods = {Method::rbpdn};
  plan.seed_base = 3;
  plan.include_timing = false;

  auto render = [&]() {
    const BenchResults results = run_bench(plan);
    std::ostringstream summary, runs;
    write_summary_csv(summary, results, plan.include_timing);
    write_runs_csv(runs, results, plan.include_timing);
    return summary.str() + "\n---\n" + runs.str();
  };
  const std::string first = render();
  const std::string second = render();
  CHECK(first == second);
  CHECK(first.find("converged") != std::string::npos);
}

TEST_CASE("summary CSV schema and iteration rounding") {
  BenchResults results;
  BenchSummary s;
  s.dim = 3000;
  s.method = Method::rbpdn;
  s.problem = ProblemKind::rlr;
  s.copies = 2;
  s.iters_avg = 3.5;  // rounds away from zero
  s.cpu_avg = 0.25;
  s.obj_avg = 0.23;
  s.card_avg = 10.0;
  s.gap_avg = 5e-4;
  s.converged = 2;
  results.summaries.push_back(s);
  std::ostringstream os;
  write_summary_csv(os, results);
  std::istringstream is(os.str());
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  CHECK(header ==
        "dim,method,problem,copies,iters_avg,cpu_avg_s,obj_avg,card_avg,"
        "gap_final_avg,status");
  CHECK(row.rfind("3000,rbpdn,rlr,2,4,0.250000,", 0) == 0);
  CHECK(row.find("2/2") != std::string::npos);
}

TEST_CASE("invalid plans are rejected") {
  BenchPlan plan;
  plan.dims.clear();
  CHECK_THROWS_AS(run_bench(plan), std::invalid_argument);
  plan.dims = {8};
  plan.copies = 0;
  CHECK_THROWS_AS(run_bench(plan), std::invalid_argument);
}
