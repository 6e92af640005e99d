#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "mmopt/linalg.hpp"

namespace mmopt {

// Euclidean projections onto closed sets.
//
// Nonconvex sets have multi-valued projections at some points. Every routine
// here resolves ties deterministically: lowest index wins for the sparsity
// kinds, and rounding goes downward at exact midpoints.

Vec project_nonneg(const Vec& x);
Vec project_box(const Vec& x, const Vec& lower, const Vec& upper);

/// Closed ball; points inside (including the center) are returned unchanged.
Vec project_ball(const Vec& x, const Vec& center, double radius);

/// Halfspace {y : normal . y >= offset}.
Vec project_halfspace(const Vec& x, const Vec& normal, double offset);

/// Nearest vertex of {0,1}^d. Entries <= 0.5 go to 0.
Vec project_binary(const Vec& x);

/// Nearest integer point. Half-integers round down.
Vec project_integer(const Vec& x);

/// Keeps the k entries of largest magnitude.
Vec project_sparsity(const Vec& x, std::size_t k);

/// Truncated singular value decomposition to rank k.
Mat project_rank(const Mat& x, std::size_t k);

/// Keeps the k largest above-diagonal magnitudes of a symmetric matrix (and
/// their mirror images). The diagonal is untouched. Above-diagonal entries are
/// ordered row-major for tie-breaking.
Mat project_edge_sparsity(const Mat& m, std::size_t k);

/// Nearest member of a finite point set; the first listed point wins ties.
Vec project_finite(const Vec& x, const std::vector<Vec>& points);

enum class SetKind {
  nonneg,
  box,
  ball,
  halfspace,
  hypercube_vertices,
  integer_lattice,
  sparsity,
  rank,
  edge_sparsity,
  finite,
};

/// A closed set with a Euclidean projection. Matrix kinds (rank and
/// edge-sparsity) act on column-major flattened matrices.
class ProjectableSet {
 public:
  static ProjectableSet nonneg();
  static ProjectableSet box(Vec lower, Vec upper);
  static ProjectableSet ball(Vec center, double radius);
  static ProjectableSet halfspace(Vec normal, double offset);
  static ProjectableSet hypercube_vertices();
  static ProjectableSet integer_lattice();
  static ProjectableSet sparsity(std::size_t k);
  static ProjectableSet rank(std::size_t rows, std::size_t cols, std::size_t k);
  static ProjectableSet edge_sparsity(std::size_t p, std::size_t k);
  static ProjectableSet finite(std::vector<Vec> points);

  [[nodiscard]] SetKind kind() const;
  [[nodiscard]] bool is_convex() const;
  [[nodiscard]] Vec project(const Vec& x) const;

  /// Exact test for the discrete kinds; `tol` slack for the continuous ones.
  [[nodiscard]] bool contains(const Vec& x, double tol = 1e-12) const;

  [[nodiscard]] std::string describe() const;

 private:
  struct Nonneg {};
  struct Box {
    Vec lower, upper;
  };
  struct Ball {
    Vec center;
    double radius;
  };
  struct Halfspace {
    Vec normal;
    double offset;
  };
  struct Hypercube {};
  struct Lattice {};
  struct Sparsity {
    std::size_t k;
  };
  struct Rank {
    std::size_t rows, cols, k;
  };
  struct EdgeSparsity {
    std::size_t p, k;
  };
  struct Finite {
    std::vector<Vec> points;
  };
  using Shape = std::variant<Nonneg, Box, Ball, Halfspace, Hypercube, Lattice, Sparsity, Rank,
                             EdgeSparsity, Finite>;

  explicit ProjectableSet(Shape shape) : shape_(std::move(shape)) {}

  Shape shape_;
};

double set_distance(const Vec& x, const ProjectableSet& set);

/// Parses a one-line description such as "ball 0 0 1" or "halfspace 1 0 0".
/// Grammar (whitespace separated, dimension inferred where needed):
///   nonneg | binary | integer | sparsity K | rank ROWS COLS K
///   | edge-sparsity P K | ball C1 .. Cd R | halfspace N1 .. Nd OFFSET
///   | box L1 .. Ld U1 .. Ud | finite D P11 .. P1D P21 ..
ProjectableSet parse_set(const std::string& text);

}  // namespace mmopt
