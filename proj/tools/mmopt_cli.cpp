// Command-line front end for the solvers and the experiment runner.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mmopt/barrier.hpp"
#include "mmopt/bench.hpp"
#include "mmopt/feasibility.hpp"
#include "mmopt/io.hpp"
#include "mmopt/penalty.hpp"
#include "mmopt/problems.hpp"
#include "mmopt/proxdist.hpp"
#include "mmopt/sets.hpp"

namespace fs = std::filesystem;
using namespace mmopt;

namespace {

// Flags shared by every subcommand.
struct Common {
  double rho0 = 0, alpha = 0, rho_max = 0, eps0 = 0, beta = 0, eps_min = 0;
  std::size_t max_iter = 0;
  double tol_step = 0, tol_feas = 0;
  std::uint64_t seed = 1;
  std::string config;
  std::string out;
  bool trace = false;
  std::map<std::string, CLI::Option*> opts;

  void attach(CLI::App* app) {
    auto add = [&](const std::string& name, auto& target, const std::string& help) {
      opts[name] = app->add_option("--" + name, target, help)->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    };
    add("rho0", rho0, "initial penalty weight");
    add("alpha", alpha, "penalty growth factor per iteration");
    add("rho-max", rho_max, "penalty cap");
    add("eps0", eps0, "initial smoothing");
    add("beta", beta, "smoothing decay factor per iteration");
    add("eps-min", eps_min, "smoothing floor");
    add("max-iter", max_iter, "iteration cap");
    add("tol-step", tol_step, "step-size tolerance");
    add("tol-feas", tol_feas, "constraint-distance tolerance");
    add("seed", seed, "master random seed");
    add("config", config, "key = value configuration file (command line wins)");
    add("out", out, "output directory");
    opts["trace"] = app->add_flag("--trace", trace, "write the per-iteration trace")
                        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  }

  [[nodiscard]] bool given(const std::string& name) const { return opts.at(name)->count() > 0; }

  [[nodiscard]] TuningSchedule schedule(TuningSchedule s) const {
    if (given("rho0")) s.rho0 = rho0;
    if (given("alpha")) s.alpha = alpha;
    if (given("rho-max")) s.rho_max = rho_max;
    if (given("eps0")) s.eps0 = eps0;
    if (given("beta")) s.beta = beta;
    if (given("eps-min")) s.eps_min = eps_min;
    s.validate();
    return s;
  }

  [[nodiscard]] PdOptions pd(PdOptions o = {}) const {
    if (given("max-iter")) o.stop.max_iter = max_iter;
    if (given("tol-step")) o.stop.tol_step = tol_step;
    if (given("tol-feas")) o.stop.tol_feas = tol_feas;
    return o;
  }

  [[nodiscard]] fs::path out_dir() const {
    fs::path dir(out);
    fs::create_directories(dir);
    return dir;
  }

  void emit_trace(const SolveTrace& t) const {
    if (!trace) return;
    if (out.empty()) {
      t.write_csv(std::cout);
    } else {
      std::ofstream f(out_dir() / "trace.csv");
      t.write_csv(f);
    }
  }

  void emit_solution(const std::string& file, const Mat& m) const {
    if (out.empty()) return;
    write_matrix_file((out_dir() / file).string(), m);
  }
};

Vec parse_point(const std::string& text) {
  std::istringstream in(text);
  std::vector<double> values;
  for (std::string tok; in >> tok;) values.push_back(std::stod(tok));
  if (values.empty()) throw std::invalid_argument("empty point");
  return Eigen::Map<const Vec>(values.data(), static_cast<Eigen::Index>(values.size()));
}

std::vector<ProjectableSet> parse_sets(const std::vector<std::string>& texts) {
  std::vector<ProjectableSet> sets;
  for (const auto& t : texts) sets.push_back(parse_set(t));
  if (sets.empty()) throw std::invalid_argument("at least one --set is required");
  return sets;
}

void print_result(const std::string& status, std::size_t iterations, double value, const Mat& x,
                  const std::string& message = {}) {
  std::cout << "status: " << status << "\niterations: " << iterations << "\nobjective: " << bench::format_fixed(value, 10)
            << '\n';
  if (!message.empty()) std::cout << "note: " << message << '\n';
  std::cout << "solution:\n";
  write_matrix(std::cout, x);
}

// Rewrites the config file into --key=value tokens placed right after the
// subcommand, so explicit command-line flags (parsed later) take precedence.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.size() < 2) return args;

  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  std::vector<std::string> injected;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = line.substr(0, line.find('#'));
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "config") throw std::runtime_error(path + ": nested config is not allowed");
    injected.push_back("--" + key + "=" + value);
  }
  args.insert(args.begin() + 2, injected.begin(), injected.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majorization-minimization solvers: adaptive barrier and proximal distance methods"};
  app.require_subcommand(1);

  // barrier-lp
  Common c_lp;
  auto* lp_cmd = app.add_subcommand("barrier-lp", "standard-form LP by the adaptive barrier method");
  c_lp.attach(lp_cmd);
  std::string lp_file;
  bool lp_toy = false;
  bool lp_safeguard = true;
  lp_cmd->add_option("--lp", lp_file, "LP file with A, b, c (and optional x0) blocks");
  lp_cmd->add_flag("--toy", lp_toy, "use the built-in six-variable example");
  lp_cmd->add_flag("--safeguard,!--no-safeguard", lp_safeguard, "damped self-concordant step (default on)");

  // project-intersection
  Common c_pi;
  auto* pi_cmd = app.add_subcommand("project-intersection", "projection of a point onto an intersection of sets");
  c_pi.attach(pi_cmd);
  std::string pi_point;
  std::vector<std::string> pi_sets;
  double pi_delta = 1.0;
  pi_cmd->add_option("--point", pi_point, "point to project, e.g. \"-1 2\"")->required();
  pi_cmd->add_option("--set", pi_sets, "set description (repeatable), e.g. \"ball 0 0 1\"")->required();
  pi_cmd->add_option("--delta", pi_delta, "smoothing of the distance objective");

  // feasibility
  Common c_fe;
  auto* fe_cmd = app.add_subcommand("feasibility", "averaged, alternating or Dykstra projections");
  c_fe.attach(fe_cmd);
  std::string fe_point, fe_method = "dykstra";
  std::vector<std::string> fe_sets;
  fe_cmd->add_option("--point", fe_point, "starting point")->required();
  fe_cmd->add_option("--set", fe_sets, "set description (repeatable)")->required();
  fe_cmd->add_option("--method", fe_method, "averaged | alternating | dykstra")
      ->check(CLI::IsMember({"averaged", "alternating", "dykstra"}));

  // binary-pwl
  Common c_bp;
  auto* bp_cmd = app.add_subcommand("binary-pwl", "binary piecewise-linear minimization");
  c_bp.attach(bp_cmd);
  std::string bp_w, bp_b;
  bp_cmd->add_option("--weights", bp_w, "symmetric nonnegative weight matrix file")->required();
  bp_cmd->add_option("--b", bp_b, "linear coefficient vector file")->required();

  // nqp
  Common c_nq;
  auto* nq_cmd = app.add_subcommand("nqp", "nonnegative quadratic programming");
  c_nq.attach(nq_cmd);
  std::string nq_a, nq_b;
  bool nq_pre = true;
  nq_cmd->add_option("--a", nq_a, "positive definite matrix file")->required();
  nq_cmd->add_option("--b", nq_b, "linear term vector file")->required();
  nq_cmd->add_flag("--precondition,!--no-precondition", nq_pre, "rescale to unit diagonal (default on)");

  // l0-reg
  Common c_l0;
  auto* l0_cmd = app.add_subcommand("l0-reg", "least squares with at most k nonzero coefficients");
  c_l0.attach(l0_cmd);
  std::string l0_x, l0_y;
  std::size_t l0_k = 1;
  l0_cmd->add_option("--x", l0_x, "design matrix file")->required();
  l0_cmd->add_option("--y", l0_y, "response vector file")->required();
  l0_cmd->add_option("--k", l0_k, "sparsity level")->required();

  // matcomp
  Common c_mc;
  auto* mc_cmd = app.add_subcommand("matcomp", "low-rank matrix completion");
  c_mc.attach(mc_cmd);
  std::string mc_y;
  std::size_t mc_rank = 1;
  mc_cmd->add_option("--y", mc_y, "matrix file with nan marking missing entries")->required();
  mc_cmd->add_option("--rank", mc_rank, "target rank")->required();

  // sparse-precision
  Common c_sp;
  auto* sp_cmd = app.add_subcommand("sparse-precision", "sparse inverse covariance estimation");
  c_sp.attach(sp_cmd);
  std::string sp_s;
  std::size_t sp_k = 0;
  sp_cmd->add_option("--s", sp_s, "sample covariance file")->required();
  sp_cmd->add_option("--k", sp_k, "nonzero entries allowed above the diagonal")->required();

  // bench
  Common c_be;
  auto* be_cmd = app.add_subcommand("bench", "generate instances and run seeded experiments");
  c_be.attach(be_cmd);
  std::map<std::string, std::string> be_values;
  std::string be_format = "aligned";
  for (const char* key : {"problem", "d", "m", "n", "k", "rows", "cols", "rank", "observed", "p", "repeats",
                          "precondition", "safeguard"}) {
    be_cmd->add_option(std::string("--") + key, be_values[key])
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  }
  be_cmd->get_option("--problem")->required()->description(
      "lp-toy | table2 | binary-pwl | nqp | l0 | matcomp | precision");
  be_cmd->add_option("--format", be_format, "csv | aligned")->check(CLI::IsMember({"csv", "aligned"}));

  try {
    const auto args = expand_config(argc, argv);
    std::vector<const char*> ptrs;
    for (const auto& a : args) ptrs.push_back(a.c_str());
    app.parse(static_cast<int>(ptrs.size()), ptrs.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*lp_cmd) {
      LpData lp;
      if (lp_toy) {
        const auto toy = bench::lp_toy();
        lp = {toy.a, toy.b, toy.c, toy.x0};
      } else if (!lp_file.empty()) {
        lp = read_lp_file(lp_file);
      } else {
        throw std::invalid_argument("barrier-lp needs --lp FILE or --toy");
      }
      BarrierOptions options;
      options.safeguard = lp_safeguard;
      if (c_lp.given("max-iter")) options.max_iter = c_lp.max_iter;
      if (c_lp.given("tol-step")) options.tol_step = c_lp.tol_step;
      const double rho = c_lp.given("rho0") ? c_lp.rho0 : 1.0;
      const auto result = barrier_solve(make_linear_program(lp.a, lp.b, lp.c, rho), lp_start(lp), options);
      std::cout << bench::emit_table(bench::barrier_table(result), bench::TableFormat::aligned);
      print_result(to_string(result.status), result.trace.size(), lp.c.dot(result.x), result.x, result.message);
      c_lp.emit_solution("x.txt", result.x);
      if (c_lp.trace && !c_lp.out.empty()) {
        std::ofstream(c_lp.out_dir() / "trace.csv")
            << bench::emit_table(bench::barrier_table(result), bench::TableFormat::csv);
      }
      return result.status == SolveStatus::converged || result.status == SolveStatus::max_iterations ? 0 : 1;
    }

    if (*pi_cmd) {
      const Vec y = parse_point(pi_point);
      const auto sets = parse_sets(pi_sets);
      const auto run = solve_intersection_projection(y, sets, pi_delta,
                                                     c_pi.schedule(bench::table2_schedule()), c_pi.pd());
      print_result(to_string(run.status), run.trace.size(), run.trace.empty() ? 0.0 : run.trace.back().f,
                   run.x.transpose(), run.message);
      c_pi.emit_solution("x.txt", run.x);
      c_pi.emit_trace(run.trace);
      return 0;
    }

    if (*fe_cmd) {
      const Vec x0 = parse_point(fe_point);
      const auto sets = parse_sets(fe_sets);
      FeasibilityOptions options;
      if (c_fe.given("max-iter")) options.max_iter = c_fe.max_iter;
      if (c_fe.given("tol-step")) options.tol = c_fe.tol_step;
      FeasibilityResult result;
      if (fe_method == "averaged") {
        const Vec weights = Vec::Constant(static_cast<Eigen::Index>(sets.size()), 1.0 / static_cast<double>(sets.size()));
        result = run_averaged_projections(x0, sets, weights, options);
      } else if (fe_method == "alternating") {
        result = run_alternating_projections(x0, sets, options);
      } else {
        result = dykstra_project(x0, sets, options);
      }
      double dist = 0.0;
      for (const auto& s : sets) dist += std::pow(set_distance(result.x, s), 2);
      print_result(to_string(result.status), result.iterations, std::sqrt(dist), result.x.transpose());
      if (c_fe.trace) {
        bench::Table table;
        table.columns.push_back("step");
        for (Eigen::Index j = 0; j < x0.size(); ++j) table.columns.push_back("x" + std::to_string(j + 1));
        for (std::size_t i = 0; i < result.iterates.size(); ++i) {
          std::vector<std::string> row{std::to_string(i + 1)};
          for (Eigen::Index j = 0; j < x0.size(); ++j) row.push_back(bench::format_fixed(result.iterates[i][j]));
          table.rows.push_back(std::move(row));
        }
        if (c_fe.out.empty()) {
          std::cout << bench::emit_table(table, bench::TableFormat::aligned);
        } else {
          std::ofstream(c_fe.out_dir() / "iterates.csv") << bench::emit_table(table, bench::TableFormat::csv);
        }
      }
      c_fe.emit_solution("x.txt", result.x);
      return 0;
    }

    if (*bp_cmd) {
      const Mat w = read_matrix_file(bp_w);
      const Vec b = read_vector_file(bp_b);
      const auto sched = c_bp.schedule(binary_pwl_schedule(lipschitz_bp(w, b)));
      const auto result = solve_binary_pwl(w, b, sched, c_bp.given("max-iter") ? c_bp.max_iter : 200);
      print_result(to_string(result.run.status), result.run.trace.size(), result.value, result.x.transpose());
      c_bp.emit_solution("x.txt", result.x);
      c_bp.emit_trace(result.run.trace);
      return 0;
    }

    if (*nq_cmd) {
      const Mat a = read_matrix_file(nq_a);
      const Vec b = read_vector_file(nq_b);
      const auto sched = c_nq.schedule(nqp_schedule(lipschitz_nqp(a, b, nq_pre)));
      const auto result = solve_nqp(a, b, sched, nq_pre, c_nq.pd(quadratic_options()));
      print_result(to_string(result.run.status), result.run.trace.size(), result.value, result.x.transpose());
      c_nq.emit_solution("x.txt", result.x);
      c_nq.emit_trace(result.run.trace);
      return 0;
    }

    if (*l0_cmd) {
      const Mat x = read_matrix_file(l0_x);
      const Vec y = read_vector_file(l0_y);
      const auto sched = c_l0.schedule(c_l0.given("rho-max") ? nqp_schedule(10.0 * c_l0.rho_max) : l0_schedule(x, y));
      const auto result = solve_l0(x, y, l0_k, sched, c_l0.pd(quadratic_options()));
      print_result(to_string(result.run.status), result.run.trace.size(), result.value, result.x.transpose());
      c_l0.emit_solution("beta.txt", result.x);
      c_l0.emit_trace(result.run.trace);
      return 0;
    }

    if (*mc_cmd) {
      const auto prob = CompletionProblem::from_matrix(read_matrix_file(mc_y), mc_rank);
      const auto result = solve_matcomp(prob, c_mc.schedule(matcomp_schedule(prob)), c_mc.pd(quadratic_options()));
      print_result(to_string(result.run.status), result.run.trace.size(), result.value, result.x);
      c_mc.emit_solution("x.txt", result.x);
      c_mc.emit_trace(result.run.trace);
      return 0;
    }

    if (*sp_cmd) {
      const PrecisionProblem prob{read_matrix_file(sp_s), sp_k};
      prob.validate();
      const auto result = solve_precision(prob, c_sp.schedule(precision_schedule(prob.s)), c_sp.pd());
      print_result(to_string(result.run.status), result.run.trace.size(), result.value, result.x, result.run.message);
      c_sp.emit_solution("theta.txt", result.x);
      c_sp.emit_trace(result.run.trace);
      return 0;
    }

    if (*be_cmd) {
      bench::ExperimentConfig cfg;
      for (const auto& [key, value] : be_values) {
        if (be_cmd->get_option("--" + key)->count() > 0) cfg.set(key, value);
      }
      for (const char* key : {"rho0", "alpha", "rho-max", "eps0", "beta", "eps-min", "max-iter", "tol-step", "tol-feas"}) {
        if (c_be.given(key)) cfg.set(key, c_be.opts.at(key)->as<std::string>());
      }
      cfg.seed = c_be.seed;
      cfg.out = c_be.out;
      cfg.trace = c_be.trace;
      const auto summary = bench::run_experiment(cfg);
      std::cout << bench::emit_table(bench::summary_table(summary), bench::parse_table_format(be_format));
      for (const auto& f : summary.files_written) std::cerr << "wrote " << f << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
