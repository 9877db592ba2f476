// Command-line harness: dataset generation, single solves with trace
// output, and multi-copy benchmarks producing summary + per-run CSVs.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "rbpdn/bench.hpp"
#include "rbpdn/dataset.hpp"
#include "rbpdn/duality.hpp"
#include "rbpdn/rbapg.hpp"
#include "rbpdn/solver.hpp"

namespace {

bool ends_with(const std::string& value, const std::string& suffix) {
  return value.size() >= suffix.size() &&
         value.compare(value.size() - suffix.size(), suffix.size(), suffix) ==
             0;
}

rbpdn::ScScaleMode parse_scale(const std::string& name) {
  if (name == "none") return rbpdn::ScScaleMode::none;
  if (name == "auto") return rbpdn::ScScaleMode::rescale;
  throw CLI::ValidationError("--sc-scale", "expected none or auto");
}

struct GenArgs {
  std::int64_t m = 1000;
  std::int64_t dim = 3000;
  std::uint64_t seed = 0;
  std::string out;
};

struct SolveArgs {
  std::string problem = "rlr";
  std::string data;
  double mu = 1e-5;
  double gamma = 1e-4;
  int blocks = 10;
  std::string method = "rbpdn";
  double eta = 0.25;
  double tol = 1e-3;
  int gap_interval = 10;
  int max_iter = 200000;
  std::uint64_t seed = 0;
  std::string trace;
  std::string sc_scale = "none";
};

struct BenchArgs {
  std::string problem = "rlr";
  std::string dims = "3000";
  int copies = 10;
  std::int64_t m = 1000;
  double mu = 1e-5;
  double gamma = 1e-4;
  int blocks = 10;
  std::string methods = "rbpdn,rbapg";
  std::uint64_t seed_base = 0;
  std::string out = "results.csv";
  double eta = 0.25;
  double tol = 1e-3;
  int gap_interval = 10;
  int max_iter = 200000;
  std::string sc_scale = "none";
  bool no_timing = false;
};

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> parts;
  std::string current;
  for (const char c : text) {
    if (c == ',') {
      if (!current.empty()) parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) parts.push_back(current);
  return parts;
}

int run_gen(const GenArgs& args) {
  const rbpdn::Dataset data = rbpdn::generate_dataset(
      args.m, args.dim, args.seed);
  if (ends_with(args.out, ".csv")) {
    rbpdn::save_dataset_csv(data, args.out);
  } else {
    rbpdn::save_dataset_binary(data, args.out);
  }
  std::printf("wrote %lld x %lld dataset to %s\n",
              static_cast<long long>(data.samples()),
              static_cast<long long>(data.dim()), args.out.c_str());
  return 0;
}

int run_solve(const SolveArgs& args) {
  rbpdn::Dataset data = rbpdn::load_dataset(args.data);
  const auto kind = rbpdn::parse_problem(args.problem);
  const double gamma = kind == rbpdn::ProblemKind::srlr ? args.gamma : 0.0;
  const rbpdn::ProblemSpec spec =
      rbpdn::make_problem(std::move(data), args.mu, gamma, args.blocks,
                          parse_scale(args.sc_scale));

  rbpdn::SolverConfig config;
  config.eta = args.eta;
  config.tol = args.tol;
  config.gap_check_interval = args.gap_interval;
  config.max_iter = args.max_iter;
  config.seed = args.seed;

  const rbpdn::Vector x0 = rbpdn::Vector::Zero(spec.dim());
  rbpdn::SolveResult result;
  switch (rbpdn::parse_method(args.method)) {
    case rbpdn::Method::rbpdn:
      result = rbpdn::rbpdn_solve(spec, x0, config);
      break;
    case rbpdn::Method::rbapg:
      result = rbpdn::rbapg_solve(spec, x0, config);
      break;
    case rbpdn::Method::pdn:
      result = rbpdn::pdn_solve(spec, x0, config);
      break;
  }
  if (!args.trace.empty()) rbpdn::write_trace_csv(args.trace, result);

  const double objective = rbpdn::F_value(spec, result.x_final);
  const double elapsed =
      result.trace.empty() ? 0.0 : result.trace.back().elapsed_seconds;
  std::printf("status=%s iterations=%d objective=%.6f gap=%.3e "
              "cardinality=%lld elapsed_s=%.3f\n",
              rbpdn::to_string(result.status), result.iterations, objective,
              result.final_gap,
              static_cast<long long>(rbpdn::solution_cardinality(
                  result.x_final)),
              elapsed);
  return result.status == rbpdn::SolveStatus::converged ? 0 : 2;
}

int run_bench_cmd(const BenchArgs& args) {
  rbpdn::BenchPlan plan;
  plan.dims.clear();
  for (const auto& token : split_csv(args.dims)) {
    plan.dims.push_back(static_cast<Eigen::Index>(std::stoll(token)));
  }
  plan.copies = args.copies;
  plan.m = args.m;
  plan.methods.clear();
  for (const auto& token : split_csv(args.methods)) {
    plan.methods.push_back(rbpdn::parse_method(token));
  }
  plan.problem = rbpdn::parse_problem(args.problem);
  plan.mu = args.mu;
  plan.gamma = args.gamma;
  plan.tol = args.tol;
  plan.blocks = args.blocks;
  plan.eta = args.eta;
  plan.gap_check_interval = args.gap_interval;
  plan.max_iter = args.max_iter;
  plan.seed_base = args.seed_base;
  plan.scale_mode = parse_scale(args.sc_scale);
  plan.include_timing = !args.no_timing;

  const rbpdn::BenchResults results = rbpdn::run_bench(plan);
  rbpdn::write_bench_csvs(results, args.out, plan.include_timing);
  rbpdn::write_summary_csv(std::cout, results, plan.include_timing);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized block proximal damped Newton solver for "
               "regularized logistic regression"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic dataset");
  gen_cmd->add_option("--m", gen.m, "Number of samples")->required();
  gen_cmd->add_option("--dim", gen.dim, "Number of features")->required();
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_option("--out", gen.out,
                      "Output path (.csv writes CSV, otherwise binary)")
      ->required();

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run a single solve");
  solve_cmd->add_option("--problem", solve.problem, "rlr|srlr");
  solve_cmd->add_option("--data", solve.data, "Dataset path")->required();
  solve_cmd->add_option("--mu", solve.mu, "l2 weight");
  solve_cmd->add_option("--gamma", solve.gamma, "l1 weight (srlr)");
  solve_cmd->add_option("--blocks", solve.blocks, "Number of blocks");
  solve_cmd->add_option("--method", solve.method, "rbpdn|rbapg|pdn");
  solve_cmd->add_option("--eta", solve.eta, "Inexactness level in [0, 1/4]");
  solve_cmd->add_option("--tol", solve.tol, "Duality-gap tolerance");
  solve_cmd->add_option("--gap-interval", solve.gap_interval,
                        "Gap check interval");
  solve_cmd->add_option("--max-iter", solve.max_iter, "Iteration cap");
  solve_cmd->add_option("--seed", solve.seed, "RNG seed");
  solve_cmd->add_option("--trace", solve.trace, "Trace CSV output path");
  solve_cmd->add_option("--sc-scale", solve.sc_scale, "none|auto");

  BenchArgs bench;
  auto* bench_cmd =
      app.add_subcommand("bench", "Multi-copy benchmark with CSV output");
  bench_cmd->add_option("--problem", bench.problem, "rlr|srlr");
  bench_cmd->add_option("--dims", bench.dims, "Comma-separated dims");
  bench_cmd->add_option("--copies", bench.copies, "Dataset copies per dim");
  bench_cmd->add_option("--m", bench.m, "Number of samples");
  bench_cmd->add_option("--mu", bench.mu, "l2 weight");
  bench_cmd->add_option("--gamma", bench.gamma, "l1 weight (srlr)");
  bench_cmd->add_option("--blocks", bench.blocks, "Number of blocks");
  bench_cmd->add_option("--methods", bench.methods,
                        "Comma-separated subset of rbpdn,rbapg,pdn");
  bench_cmd->add_option("--seed-base", bench.seed_base, "Base seed");
  bench_cmd->add_option("--out", bench.out, "Summary CSV path")->required();
  bench_cmd->add_option("--eta", bench.eta, "Inexactness level");
  bench_cmd->add_option("--tol", bench.tol, "Duality-gap tolerance");
  bench_cmd->add_option("--gap-interval", bench.gap_interval,
                        "Gap check interval");
  bench_cmd->add_option("--max-iter", bench.max_iter, "Iteration cap");
  bench_cmd->add_option("--sc-scale", bench.sc_scale, "none|auto");
  bench_cmd->add_flag("--no-timing", bench.no_timing,
                      "Blank the timing columns (bit-reproducible CSVs)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) return run_gen(gen);
    if (solve_cmd->parsed()) return run_solve(solve);
    if (bench_cmd->parsed()) return run_bench_cmd(bench);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
