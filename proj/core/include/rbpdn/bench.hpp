#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rbpdn/rbapg.hpp"
#include "rbpdn/solver.hpp"

namespace rbpdn {

enum class Method { rbpdn, rbapg, pdn };
enum class ProblemKind { rlr, srlr };

const char* to_string(Method method);
const char* to_string(ProblemKind kind);
Method parse_method(const std::string& name);
ProblemKind parse_problem(const std::string& name);

/// Multi-copy benchmark plan: for each (dim, copy) a dataset is generated
/// with seed seed_base + copy and every method is run from x0 = 0.
struct BenchPlan {
  std::vector<Eigen::Index> dims;
  int copies = 10;
  Eigen::Index m = 1000;
  std::vector<Method> methods = {Method::rbpdn, Method::rbapg};
  ProblemKind problem = ProblemKind::rlr;
  double mu = 1e-5;
  double gamma = 1e-4;  // used only for srlr
  double tol = 1e-3;
  int blocks = 10;
  double eta = 0.25;
  int gap_check_interval = 10;
  int max_iter = 200000;
  std::uint64_t seed_base = 0;
  ScScaleMode scale_mode = ScScaleMode::none;
  /// When false the timing columns are left blank, which makes the CSV
  /// output bit-reproducible across runs.
  bool include_timing = true;
};

struct BenchRun {
  Eigen::Index dim = 0;
  Method method = Method::rbpdn;
  ProblemKind problem = ProblemKind::rlr;
  int copy = 0;
  std::uint64_t seed = 0;
  int iterations = 0;
  double cpu_seconds = 0.0;
  double objective = 0.0;
  Eigen::Index cardinality = 0;
  double final_gap = 0.0;
  std::string status;
};

struct BenchSummary {
  Eigen::Index dim = 0;
  Method method = Method::rbpdn;
  ProblemKind problem = ProblemKind::rlr;
  int copies = 0;
  double iters_avg = 0.0;  // exact mean; the summary CSV rounds it
  double cpu_avg = 0.0;
  double obj_avg = 0.0;
  double card_avg = 0.0;
  double gap_avg = 0.0;
  int converged = 0;
};

struct BenchResults {
  std::vector<BenchRun> runs;
  std::vector<BenchSummary> summaries;
};

/// Entries of x with magnitude above the zero threshold.
Eigen::Index solution_cardinality(const Vector& x, double threshold = 1e-10);

/// Runs the plan; individual run failures are recorded per-row and never
/// abort the plan. Runs execute in deterministic plan order.
BenchResults run_bench(const BenchPlan& plan);

/// Summary CSV:
/// dim,method,problem,copies,iters_avg,cpu_avg_s,obj_avg,card_avg,gap_final_avg,status
/// (iters_avg rounded to the nearest integer; status is converged/copies).
void write_summary_csv(std::ostream& os, const BenchResults& results,
                       bool include_timing = true);

/// Per-run CSV:
/// dim,method,problem,copy,seed,iterations,cpu_s,objective,cardinality,final_gap,status
void write_runs_csv(std::ostream& os, const BenchResults& results,
                    bool include_timing = true);

void write_bench_csvs(const BenchResults& results, const std::string& out_path,
                      bool include_timing = true);

}  // namespace rbpdn
