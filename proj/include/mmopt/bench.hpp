#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mmopt/barrier.hpp"
#include "mmopt/feasibility.hpp"
#include "mmopt/linalg.hpp"
#include "mmopt/penalty.hpp"
#include "mmopt/problems.hpp"
#include "mmopt/sets.hpp"

namespace mmopt::bench {

// ---------------------------------------------------------------------------
// Random numbers
//
// mt19937_64 has a fixed output sequence on every platform; the normal
// deviates are drawn with our own polar method because the standard
// distributions are implementation-defined.

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of experiment `index` under a master seed; independent of run order.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double normal();
  Vec normal_vector(Eigen::Index n);
  Mat normal_matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// ---------------------------------------------------------------------------
// Instance generators

struct LpInstance {
  Mat a;
  Vec b;
  Vec c;
  Vec x0;
};

/// Six-variable standard-form LP with optimum -1.5 at (1/2, 1/2, 1/2, 0, 0, 0).
LpInstance lp_toy();

struct IntersectionInstance {
  Vec y;
  std::vector<ProjectableSet> sets;
  double delta = 1.0;
};

/// y = (-1, 2) against the unit ball (listed first) and the halfspace x1 >= 0.
IntersectionInstance table2_instance();

/// rho = 2 throughout and eps_n = 4^-n.
TuningSchedule table2_schedule();

/// Random unit ball and halfspace through the origin containing a common
/// point, with y drawn outside.
IntersectionInstance random_ball_halfspace(Rng& rng, Eigen::Index dim);

struct BinaryPwlInstance {
  Mat w;
  Vec b;
};

/// b standard normal times d; upper triangle of W the absolute values of
/// standard normals, mirrored.
BinaryPwlInstance generate_binary_pwl(std::size_t d, Rng& rng);

struct NqpInstance {
  Mat a;
  Vec b;
};

/// A = M'M + I with M standard normal; b standard normal.
NqpInstance generate_nqp(std::size_t d, Rng& rng);

struct L0Instance {
  Mat x;
  Vec y;
  Vec beta;  // generating coefficients
};

/// X standard normal, beta_i = 1/i for i <= 10, y = X beta + noise.
L0Instance generate_l0(std::size_t m, std::size_t n, Rng& rng);

struct MatcompInstance {
  Mat truth;
  CompletionProblem problem;
};

/// truth = U V' with standard normal factors of the given rank; each entry
/// observed independently with probability `observed` (at least one kept).
MatcompInstance generate_matcomp(std::size_t rows, std::size_t cols, std::size_t rank, double observed,
                                 Rng& rng);

struct PrecisionInstance {
  Mat precision;  // L L' + 0.01 M M'
  Mat s;          // its inverse
  std::size_t k = 0;
};

/// L lower triangular with the diagonal and three subdiagonals standard
/// normal; k counts the nonzero above-diagonal entries of L L'.
PrecisionInstance generate_precision(std::size_t p, Rng& rng);

// ---------------------------------------------------------------------------
// Experiments

enum class ProblemKind { lp_toy, table2, binary_pwl, nqp, l0, matcomp, precision };

ProblemKind parse_problem_kind(const std::string& name);
std::string to_string(ProblemKind kind);

struct ExperimentConfig {
  ProblemKind problem = ProblemKind::nqp;
  std::size_t d = 8;      // binary_pwl, nqp
  std::size_t m = 20;     // l0 rows
  std::size_t n = 8;      // l0 columns
  std::size_t k = 2;      // l0 sparsity
  std::size_t rows = 20;  // matcomp
  std::size_t cols = 25;
  std::size_t rank = 2;
  double observed = 0.2;
  std::size_t p = 8;  // precision
  std::uint64_t seed = 1;
  std::size_t repeats = 1;
  bool precondition = true;
  bool safeguard = true;
  std::optional<double> rho0, alpha, rho_max, eps0, beta, eps_min;
  std::optional<std::size_t> max_iter;
  std::optional<double> tol_step, tol_feas;
  std::string out;  // directory; empty disables file output
  bool trace = false;

  /// Assigns one key (flag names without dashes, '-' or '_' separators).
  /// Unknown keys and malformed values throw std::invalid_argument.
  void set(const std::string& key, const std::string& value);
  void validate() const;

  /// Problem default schedule with any explicit overrides applied.
  [[nodiscard]] TuningSchedule schedule_or(const TuningSchedule& fallback) const;
  [[nodiscard]] StopRule stop_or(const StopRule& fallback) const;
  [[nodiscard]] std::string dims() const;
};

struct SummaryRow {
  std::string problem;
  std::string dims;
  std::uint64_t seed = 0;
  std::string status;
  double loss = 0.0;
  std::size_t iterations = 0;
  double seconds = 0.0;
};

struct ExperimentSummary {
  std::vector<SummaryRow> rows;
  SummaryRow mean;  // seed 0; status "k/N converged"
  std::vector<std::string> files_written;
};

/// One run per repeat r with seed stream_seed(cfg.seed, r). Solver failures
/// are recorded in the row status rather than thrown.
ExperimentSummary run_experiment(const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Tables

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  bool operator==(const Table&) const = default;
};

enum class TableFormat { csv, aligned };

TableFormat parse_table_format(const std::string& name);

/// Fixed-point with `decimals` places.
std::string format_fixed(double value, int decimals = 5);

std::string emit_table(const Table& table, TableFormat format);
Table parse_csv_table(const std::string& text);

Table summary_table(const std::vector<SummaryRow>& rows, bool include_timing = true);
/// Summary rows followed by the mean row.
Table summary_table(const ExperimentSummary& summary, bool include_timing = true);

/// Columns n, f, ||dx||, t.
Table barrier_table(const BarrierResult& result);

/// Columns n, dykstra_x1, dykstra_x2, pd_x1, pd_x2; one row per iterate.
Table table2_table(const std::vector<Vec>& dykstra, const std::vector<Vec>& proxdist);

}  // namespace mmopt::bench
