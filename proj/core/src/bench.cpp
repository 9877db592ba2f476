#include "rbpdn/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "rbpdn/dataset.hpp"

namespace rbpdn {

namespace {

using Clock = std::chrono::steady_clock;

std::string runs_path_for(const std::string& out_path) {
  const auto dot = out_path.rfind('.');
  if (dot == std::string::npos) return out_path + ".runs";
  return out_path.substr(0, dot) + ".runs" + out_path.substr(dot);
}

}  // namespace

const char* to_string(Method method) {
  switch (method) {
    case Method::rbpdn: return "rbpdn";
    case Method::rbapg: return "rbapg";
    case Method::pdn: return "pdn";
  }
  return "unknown";
}

const char* to_string(ProblemKind kind) {
  return kind == ProblemKind::rlr ? "rlr" : "srlr";
}

Method parse_method(const std::string& name) {
  if (name == "rbpdn") return Method::rbpdn;
  if (name == "rbapg") return Method::rbapg;
  if (name == "pdn") return Method::pdn;
  throw std::invalid_argument("unknown method: " + name);
}

ProblemKind parse_problem(const std::string& name) {
  if (name == "rlr") return ProblemKind::rlr;
  if (name == "srlr") return ProblemKind::srlr;
  throw std::invalid_argument("unknown problem: " + name);
}

Eigen::Index solution_cardinality(const Vector& x, double threshold) {
  Eigen::Index count = 0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (std::abs(x(j)) > threshold) ++count;
  }
  return count;
}

BenchResults run_bench(const BenchPlan& plan) {
  if (plan.dims.empty() || plan.copies < 1 || plan.mu <= 0.0 ||
      plan.gamma < 0.0) {
    throw std::invalid_argument("run_bench: invalid plan");
  }
  const double gamma =
      plan.problem == ProblemKind::srlr ? plan.gamma : 0.0;

  BenchResults results;
  for (const auto dim : plan.dims) {
    for (int copy = 0; copy < plan.copies; ++copy) {
      const std::uint64_t seed = plan.seed_base + static_cast<std::uint64_t>(copy);
      Dataset data = generate_dataset(plan.m, dim, seed);
      ProblemSpec spec =
          make_problem(std::move(data), plan.mu, gamma, plan.blocks,
                       plan.scale_mode);
      for (std::size_t mi = 0; mi < plan.methods.size(); ++mi) {
        const Method method = plan.methods[mi];
        SolverConfig config;
        config.eta = plan.eta;
        config.tol = plan.tol;
        config.gap_check_interval = plan.gap_check_interval;
        config.max_iter = plan.max_iter;
        config.seed = seed;

        BenchRun run;
        run.dim = dim;
        run.method = method;
        run.problem = plan.problem;
        run.copy = copy;
        run.seed = seed;
        const Vector x0 = Vector::Zero(dim);
        const auto start = Clock::now();
        try {
          SolveResult solved;
          switch (method) {
            case Method::rbpdn: solved = rbpdn_solve(spec, x0, config); break;
            case Method::rbapg: solved = rbapg_solve(spec, x0, config); break;
            case Method::pdn: solved = pdn_solve(spec, x0, config); break;
          }
          run.iterations = solved.iterations;
          run.objective = F_value(spec, solved.x_final);
          run.cardinality = solution_cardinality(solved.x_final);
          run.final_gap = solved.final_gap;
          run.status = to_string(solved.status);
        } catch (const std::exception& e) {
          run.status = std::string("error: ") + e.what();
        }
        run.cpu_seconds =
            std::chrono::duration<double>(Clock::now() - start).count();
        results.runs.push_back(std::move(run));
      }
    }
    // Per-dim averages over the copies, one summary row per method.
    for (std::size_t mi = 0; mi < plan.methods.size(); ++mi) {
      BenchSummary summary;
      summary.dim = dim;
      summary.method = plan.methods[mi];
      summary.problem = plan.problem;
      summary.copies = plan.copies;
      int count = 0;
      for (const auto& run : results.runs) {
        if (run.dim != dim || run.method != plan.methods[mi]) continue;
        summary.iters_avg += run.iterations;
        summary.cpu_avg += run.cpu_seconds;
        summary.obj_avg += run.objective;
        summary.card_avg += static_cast<double>(run.cardinality);
        summary.gap_avg += run.final_gap;
        if (run.status == "converged") ++summary.converged;
        ++count;
      }
      if (count > 0) {
        summary.iters_avg /= count;
        summary.cpu_avg /= count;
        summary.obj_avg /= count;
        summary.card_avg /= count;
        summary.gap_avg /= count;
      }
      results.summaries.push_back(summary);
    }
  }
  return results;
}

void write_summary_csv(std::ostream& os, const BenchResults& results,
                       bool include_timing) {
  os << "dim,method,problem,copies,iters_avg,cpu_avg_s,obj_avg,card_avg,"
        "gap_final_avg,status\n";
  char buf[256];
  for (const auto& s : results.summaries) {
    char cpu[32] = "";
    if (include_timing) std::snprintf(cpu, sizeof(cpu), "%.6f", s.cpu_avg);
    std::snprintf(buf, sizeof(buf), "%lld,%s,%s,%d,%lld,%s,%.17g,%.17g,%.17g,%d/%d",
                  static_cast<long long>(s.dim), to_string(s.method),
                  to_string(s.problem), s.copies,
                  static_cast<long long>(std::llround(s.iters_avg)), cpu,
                  s.obj_avg, s.card_avg, s.gap_avg, s.converged, s.copies);
    os << buf << "\n";
  }
}

void write_runs_csv(std::ostream& os, const BenchResults& results,
                    bool include_timing) {
  os << "dim,method,problem,copy,seed,iterations,cpu_s,objective,cardinality,"
        "final_gap,status\n";
  char buf[320];
  for (const auto& r : results.runs) {
    char cpu[32] = "";
    if (include_timing) std::snprintf(cpu, sizeof(cpu), "%.6f", r.cpu_seconds);
    std::snprintf(buf, sizeof(buf),
                  "%lld,%s,%s,%d,%llu,%d,%s,%.17g,%lld,%.17g,%s",
                  static_cast<long long>(r.dim), to_string(r.method),
                  to_string(r.problem), r.copy,
                  static_cast<unsigned long long>(r.seed), r.iterations, cpu,
                  r.objective, static_cast<long long>(r.cardinality),
                  r.final_gap, r.status.c_str());
    os << buf << "\n";
  }
}

void write_bench_csvs(const BenchResults& results, const std::string& out_path,
                      bool include_timing) {
  {
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("bench: cannot open " + out_path);
    write_summary_csv(os, results, include_timing);
  }
  const std::string runs_path = runs_path_for(out_path);
  std::ofstream os(runs_path);
  if (!os) throw std::runtime_error("bench: cannot open " + runs_path);
  write_runs_csv(os, results, include_timing);
}

}  // namespace rbpdn
