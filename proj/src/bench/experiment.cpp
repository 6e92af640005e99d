#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mmopt/bench.hpp"

namespace mmopt::bench {

namespace {

struct RunOutput {
  SummaryRow row;
  std::string trace_csv;  // empty when the problem has no trace
};

std::string trace_text(const SolveTrace& trace) {
  std::ostringstream out;
  trace.write_csv(out);
  return out.str();
}

PdOptions pd_options(const ExperimentConfig& cfg, PdOptions base) {
  base.stop = cfg.stop_or(base.stop);
  return base;
}

void fill_from_run(SummaryRow& row, const PdResult& run, double loss) {
  row.status = to_string(run.status);
  row.loss = loss;
  row.iterations = run.trace.size();
}

RunOutput run_once(const ExperimentConfig& cfg, std::uint64_t seed) {
  RunOutput out;
  out.row.problem = to_string(cfg.problem);
  out.row.dims = cfg.dims();
  out.row.seed = seed;
  Rng rng(seed);

  const auto start = std::chrono::steady_clock::now();
  switch (cfg.problem) {
    case ProblemKind::lp_toy: {
      const auto lp = lp_toy();
      BarrierOptions options;
      options.safeguard = cfg.safeguard;
      if (cfg.max_iter) options.max_iter = *cfg.max_iter;
      if (cfg.tol_step) options.tol_step = *cfg.tol_step;
      const auto result = barrier_solve(make_linear_program(lp.a, lp.b, lp.c, cfg.rho0.value_or(1.0)), lp.x0, options);
      out.row.status = to_string(result.status);
      out.row.loss = lp.c.dot(result.x);
      out.row.iterations = result.trace.size();
      out.trace_csv = emit_table(barrier_table(result), TableFormat::csv);
      break;
    }
    case ProblemKind::table2: {
      const auto inst = table2_instance();
      PdOptions options = pd_options(cfg, PdOptions{});
      options.keep_iterates = true;
      const auto run =
          solve_intersection_projection(inst.y, inst.sets, inst.delta, cfg.schedule_or(table2_schedule()), options);
      FeasibilityOptions dyk;
      dyk.max_iter = std::max<std::size_t>(1, run.trace.size());
      const auto dykstra = dykstra_project(inst.y, inst.sets, dyk);
      const std::vector<Vec> pd_iterates(run.iterates.begin() + 1, run.iterates.end());
      fill_from_run(out.row, run, run.trace.empty() ? 0.0 : run.trace.back().f);
      out.trace_csv = emit_table(table2_table(dykstra.iterates, pd_iterates), TableFormat::csv);
      break;
    }
    case ProblemKind::binary_pwl: {
      const auto inst = generate_binary_pwl(cfg.d, rng);
      const auto sched = cfg.schedule_or(binary_pwl_schedule(lipschitz_bp(inst.w, inst.b)));
      const auto result = solve_binary_pwl(inst.w, inst.b, sched, cfg.max_iter.value_or(200));
      fill_from_run(out.row, result.run, result.value);
      out.trace_csv = trace_text(result.run.trace);
      break;
    }
    case ProblemKind::nqp: {
      const auto inst = generate_nqp(cfg.d, rng);
      const auto sched = cfg.schedule_or(nqp_schedule(lipschitz_nqp(inst.a, inst.b, cfg.precondition)));
      const auto result = solve_nqp(inst.a, inst.b, sched, cfg.precondition, pd_options(cfg, quadratic_options()));
      fill_from_run(out.row, result.run, result.value);
      out.trace_csv = trace_text(result.run.trace);
      break;
    }
    case ProblemKind::l0: {
      const auto inst = generate_l0(cfg.m, cfg.n, rng);
      const auto sched = cfg.schedule_or(l0_schedule(inst.x, inst.y));
      const auto result = solve_l0(inst.x, inst.y, cfg.k, sched, pd_options(cfg, quadratic_options()));
      fill_from_run(out.row, result.run, result.value);
      out.trace_csv = trace_text(result.run.trace);
      break;
    }
    case ProblemKind::matcomp: {
      const auto inst = generate_matcomp(cfg.rows, cfg.cols, cfg.rank, cfg.observed, rng);
      const auto sched = cfg.schedule_or(matcomp_schedule(inst.problem));
      const auto result = solve_matcomp(inst.problem, sched, pd_options(cfg, quadratic_options()));
      fill_from_run(out.row, result.run, result.value);
      out.trace_csv = trace_text(result.run.trace);
      break;
    }
    case ProblemKind::precision: {
      const auto inst = generate_precision(cfg.p, rng);
      const PrecisionProblem prob{inst.s, inst.k};
      const auto sched = cfg.schedule_or(precision_schedule(inst.s));
      const auto result = solve_precision(prob, sched, pd_options(cfg, PdOptions{}));
      fill_from_run(out.row, result.run, result.value);
      out.trace_csv = trace_text(result.run.trace);
      break;
    }
  }
  out.row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentSummary summary;
  std::filesystem::path dir;
  if (!cfg.out.empty()) {
    dir = cfg.out;
    std::filesystem::create_directories(dir);
  }

  std::size_t converged = 0;
  std::size_t finite = 0;
  double loss_sum = 0.0, iter_sum = 0.0, seconds_sum = 0.0;
  for (std::size_t r = 0; r < cfg.repeats; ++r) {
    const std::uint64_t seed = stream_seed(cfg.seed, r);
    RunOutput run;
    try {
      run = run_once(cfg, seed);
    } catch (const std::exception& e) {
      run.row.problem = to_string(cfg.problem);
      run.row.dims = cfg.dims();
      run.row.seed = seed;
      run.row.status = std::string("error: ") + e.what();
      run.row.loss = std::nan("");
    }
    if (run.row.status == "converged") ++converged;
    if (std::isfinite(run.row.loss)) {
      ++finite;
      loss_sum += run.row.loss;
    }
    iter_sum += static_cast<double>(run.row.iterations);
    seconds_sum += run.row.seconds;

    if (cfg.trace && !dir.empty() && !run.trace_csv.empty()) {
      const auto path = dir / (to_string(cfg.problem) + "_" + std::to_string(r) + "_trace.csv");
      std::ofstream(path) << run.trace_csv;
      summary.files_written.push_back(path.string());
    }
    summary.rows.push_back(std::move(run.row));
  }

  const auto count = static_cast<double>(cfg.repeats);
  summary.mean.problem = to_string(cfg.problem);
  summary.mean.dims = cfg.dims();
  summary.mean.status = std::to_string(converged) + "/" + std::to_string(cfg.repeats) + " converged";
  summary.mean.loss = finite > 0 ? loss_sum / static_cast<double>(finite) : std::nan("");
  summary.mean.iterations = static_cast<std::size_t>(std::llround(iter_sum / count));
  summary.mean.seconds = seconds_sum / count;

  if (!dir.empty()) {
    const auto path = dir / "summary.csv";
    std::ofstream(path) << emit_table(summary_table(summary), TableFormat::csv);
    summary.files_written.push_back(path.string());
  }
  return summary;
}

}  // namespace mmopt::bench
