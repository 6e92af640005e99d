#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "mmopt/bench.hpp"

namespace mmopt::bench {

namespace {

std::string normalize_key(std::string key) {
  key.erase(0, key.find_first_not_of('-'));
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  unsigned long long out = 0;
  try {
    if (value.empty() || value[0] == '-') throw std::invalid_argument(value);
    out = std::stoull(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw std::invalid_argument(key + ": expected a count, got '" + value + "'");
  return static_cast<std::size_t>(out);
}

double parse_real(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw std::invalid_argument(key + ": expected a number, got '" + value + "'");
  return out;
}

bool parse_flag(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw std::invalid_argument(key + ": expected true or false, got '" + value + "'");
}

}  // namespace

ProblemKind parse_problem_kind(const std::string& name) {
  if (name == "lp-toy") return ProblemKind::lp_toy;
  if (name == "table2") return ProblemKind::table2;
  if (name == "binary-pwl" || name == "bp") return ProblemKind::binary_pwl;
  if (name == "nqp") return ProblemKind::nqp;
  if (name == "l0" || name == "l0-reg") return ProblemKind::l0;
  if (name == "matcomp") return ProblemKind::matcomp;
  if (name == "precision" || name == "sparse-precision") return ProblemKind::precision;
  throw std::invalid_argument("unknown problem kind '" + name + "'");
}

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::lp_toy:
      return "lp-toy";
    case ProblemKind::table2:
      return "table2";
    case ProblemKind::binary_pwl:
      return "binary-pwl";
    case ProblemKind::nqp:
      return "nqp";
    case ProblemKind::l0:
      return "l0";
    case ProblemKind::matcomp:
      return "matcomp";
    case ProblemKind::precision:
      return "precision";
  }
  return "unknown";
}

void ExperimentConfig::set(const std::string& raw_key, const std::string& value) {
  const std::string key = normalize_key(raw_key);
  if (key == "problem") {
    problem = parse_problem_kind(value);
  } else if (key == "d") {
    d = parse_count(key, value);
  } else if (key == "m") {
    m = parse_count(key, value);
  } else if (key == "n") {
    n = parse_count(key, value);
  } else if (key == "k") {
    k = parse_count(key, value);
  } else if (key == "rows") {
    rows = parse_count(key, value);
  } else if (key == "cols") {
    cols = parse_count(key, value);
  } else if (key == "rank") {
    rank = parse_count(key, value);
  } else if (key == "observed") {
    observed = parse_real(key, value);
  } else if (key == "p") {
    p = parse_count(key, value);
  } else if (key == "seed") {
    seed = parse_count(key, value);
  } else if (key == "repeats") {
    repeats = parse_count(key, value);
  } else if (key == "precondition") {
    precondition = parse_flag(key, value);
  } else if (key == "safeguard") {
    safeguard = parse_flag(key, value);
  } else if (key == "rho0") {
    rho0 = parse_real(key, value);
  } else if (key == "alpha") {
    alpha = parse_real(key, value);
  } else if (key == "rho-max") {
    rho_max = parse_real(key, value);
  } else if (key == "eps0") {
    eps0 = parse_real(key, value);
  } else if (key == "beta") {
    beta = parse_real(key, value);
  } else if (key == "eps-min") {
    eps_min = parse_real(key, value);
  } else if (key == "max-iter") {
    max_iter = parse_count(key, value);
  } else if (key == "tol-step") {
    tol_step = parse_real(key, value);
  } else if (key == "tol-feas") {
    tol_feas = parse_real(key, value);
  } else if (key == "out") {
    out = value;
  } else if (key == "trace") {
    trace = parse_flag(key, value);
  } else {
    throw std::invalid_argument("unknown configuration key '" + raw_key + "'");
  }
}

void ExperimentConfig::validate() const {
  if (d < 1 || m < 1 || n < 1 || k < 1 || rows < 1 || cols < 1 || rank < 1 || p < 1) {
    throw std::invalid_argument("all dimensions must be at least 1");
  }
  if (repeats < 1) throw std::invalid_argument("repeats must be at least 1");
  if (problem == ProblemKind::l0 && k > n) throw std::invalid_argument("sparsity k exceeds n");
  if (!(observed > 0.0 && observed <= 1.0)) throw std::invalid_argument("observed fraction must lie in (0, 1]");
  if (max_iter && *max_iter < 1) throw std::invalid_argument("max-iter must be at least 1");
  schedule_or(TuningSchedule{}).validate();
}

TuningSchedule ExperimentConfig::schedule_or(const TuningSchedule& fallback) const {
  TuningSchedule s = fallback;
  if (rho0) s.rho0 = *rho0;
  if (alpha) s.alpha = *alpha;
  if (rho_max) s.rho_max = *rho_max;
  if (eps0) s.eps0 = *eps0;
  if (beta) s.beta = *beta;
  if (eps_min) s.eps_min = *eps_min;
  return s;
}

StopRule ExperimentConfig::stop_or(const StopRule& fallback) const {
  StopRule s = fallback;
  if (max_iter) s.max_iter = *max_iter;
  if (tol_step) s.tol_step = *tol_step;
  if (tol_feas) s.tol_feas = *tol_feas;
  return s;
}

std::string ExperimentConfig::dims() const {
  std::ostringstream out;
  switch (problem) {
    case ProblemKind::lp_toy:
      out << "3x6";
      break;
    case ProblemKind::table2:
      out << "2";
      break;
    case ProblemKind::binary_pwl:
    case ProblemKind::nqp:
      out << "d=" << d;
      break;
    case ProblemKind::l0:
      out << "m=" << m << " n=" << n << " k=" << k;
      break;
    case ProblemKind::matcomp:
      out << rows << 'x' << cols << " r=" << rank << " obs=" << observed;
      break;
    case ProblemKind::precision:
      out << "p=" << p;
      break;
  }
  return out.str();
}

}  // namespace mmopt::bench
