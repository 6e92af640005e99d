#include "mmopt/sets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mmopt {
namespace {

// Indices sorted by decreasing magnitude; equal magnitudes keep index order.
std::vector<std::size_t> order_by_magnitude(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(values[a]) > std::abs(values[b]);
  });
  return order;
}

std::size_t count_nonzero(const Vec& x) {
  return static_cast<std::size_t>((x.array() != 0.0).count());
}

void require_same_size(const Vec& x, const Vec& y, const char* what) {
  if (x.size() != y.size()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

Eigen::Map<const Mat> as_matrix(const Vec& x, std::size_t rows, std::size_t cols) {
  if (static_cast<std::size_t>(x.size()) != rows * cols) {
    throw std::invalid_argument("flattened matrix has the wrong number of entries");
  }
  return {x.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)};
}

Vec flatten(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

}  // namespace

Vec project_nonneg(const Vec& x) { return x.cwiseMax(0.0); }

Vec project_box(const Vec& x, const Vec& lower, const Vec& upper) {
  require_same_size(x, lower, "project_box");
  require_same_size(x, upper, "project_box");
  return x.cwiseMax(lower).cwiseMin(upper);
}

Vec project_ball(const Vec& x, const Vec& center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  require_same_size(x, center, "project_ball");
  const Vec offset = x - center;
  const double norm = offset.norm();
  if (norm <= radius) return x;
  return center + (radius / norm) * offset;
}

Vec project_halfspace(const Vec& x, const Vec& normal, double offset) {
  require_same_size(x, normal, "project_halfspace");
  const double nn = normal.squaredNorm();
  if (nn == 0.0) throw std::invalid_argument("halfspace normal must be nonzero");
  const double slack = normal.dot(x) - offset;
  if (slack >= 0.0) return x;
  return x - (slack / nn) * normal;
}

Vec project_binary(const Vec& x) {
  return x.unaryExpr([](double v) { return v > 0.5 ? 1.0 : 0.0; });
}

Vec project_integer(const Vec& x) {
  return x.unaryExpr([](double v) { return std::ceil(v - 0.5); });
}

Vec project_sparsity(const Vec& x, std::size_t k) {
  const auto n = static_cast<std::size_t>(x.size());
  if (k > n) throw std::invalid_argument("sparsity level exceeds dimension");
  if (k == n) return x;
  const std::vector<double> values(x.data(), x.data() + n);
  const auto order = order_by_magnitude(values);
  Vec out = Vec::Zero(x.size());
  for (std::size_t i = 0; i < k; ++i) out[order[i]] = x[order[i]];
  return out;
}

Mat project_rank(const Mat& x, std::size_t k) {
  if (k < 1) throw std::invalid_argument("rank projection needs k >= 1");
  const auto full = static_cast<std::size_t>(std::min(x.rows(), x.cols()));
  if (k >= full) return x;
  Eigen::BDCSVD<Mat> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success || !svd.singularValues().allFinite()) {
    throw NumericalError("singular value decomposition failed");
  }
  const auto r = static_cast<Eigen::Index>(k);
  return svd.matrixU().leftCols(r) * svd.singularValues().head(r).asDiagonal() *
         svd.matrixV().leftCols(r).transpose();
}

Mat project_edge_sparsity(const Mat& m, std::size_t k) {
  require_symmetric(m, "edge-sparsity input");
  const auto p = static_cast<std::size_t>(m.rows());
  const std::size_t slots = p * (p - (p > 0 ? 1 : 0)) / 2;
  if (k > slots) throw std::invalid_argument("edge budget exceeds number of above-diagonal slots");
  if (k == slots) return m;

  std::vector<double> upper;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> where;
  upper.reserve(slots);
  where.reserve(slots);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      upper.push_back(m(i, j));
      where.emplace_back(i, j);
    }
  }
  const auto order = order_by_magnitude(upper);
  Mat out = m.diagonal().asDiagonal();
  for (std::size_t s = 0; s < k; ++s) {
    const auto [i, j] = where[order[s]];
    out(i, j) = m(i, j);
    out(j, i) = m(i, j);
  }
  return out;
}

Vec project_finite(const Vec& x, const std::vector<Vec>& points) {
  if (points.empty()) throw std::invalid_argument("finite set is empty");
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_same_size(x, points[i], "project_finite");
    const double d = (x - points[i]).squaredNorm();
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  return points[best];
}

ProjectableSet ProjectableSet::nonneg() { return ProjectableSet(Nonneg{}); }

ProjectableSet ProjectableSet::box(Vec lower, Vec upper) {
  require_same_size(lower, upper, "box");
  if ((lower.array() > upper.array()).any()) {
    throw std::invalid_argument("box lower bound exceeds upper bound");
  }
  return ProjectableSet(Box{std::move(lower), std::move(upper)});
}

ProjectableSet ProjectableSet::ball(Vec center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  return ProjectableSet(Ball{std::move(center), radius});
}

ProjectableSet ProjectableSet::halfspace(Vec normal, double offset) {
  if (normal.squaredNorm() == 0.0) throw std::invalid_argument("halfspace normal must be nonzero");
  return ProjectableSet(Halfspace{std::move(normal), offset});
}

ProjectableSet ProjectableSet::hypercube_vertices() { return ProjectableSet(Hypercube{}); }
ProjectableSet ProjectableSet::integer_lattice() { return ProjectableSet(Lattice{}); }
ProjectableSet ProjectableSet::sparsity(std::size_t k) { return ProjectableSet(Sparsity{k}); }

ProjectableSet ProjectableSet::rank(std::size_t rows, std::size_t cols, std::size_t k) {
  if (k < 1) throw std::invalid_argument("rank set needs k >= 1");
  return ProjectableSet(Rank{rows, cols, k});
}

ProjectableSet ProjectableSet::edge_sparsity(std::size_t p, std::size_t k) {
  if (p > 0 && k > p * (p - 1) / 2) {
    throw std::invalid_argument("edge budget exceeds number of above-diagonal slots");
  }
  return ProjectableSet(EdgeSparsity{p, k});
}

ProjectableSet ProjectableSet::finite(std::vector<Vec> points) {
  if (points.empty()) throw std::invalid_argument("finite set is empty");
  return ProjectableSet(Finite{std::move(points)});
}

SetKind ProjectableSet::kind() const {
  return static_cast<SetKind>(shape_.index());
}

bool ProjectableSet::is_convex() const {
  switch (kind()) {
    case SetKind::nonneg:
    case SetKind::box:
    case SetKind::ball:
    case SetKind::halfspace:
      return true;
    default:
      return false;
  }
}

Vec ProjectableSet::project(const Vec& x) const {
  struct Visitor {
    const Vec& x;
    Vec operator()(const Nonneg&) const { return project_nonneg(x); }
    Vec operator()(const Box& s) const { return project_box(x, s.lower, s.upper); }
    Vec operator()(const Ball& s) const { return project_ball(x, s.center, s.radius); }
    Vec operator()(const Halfspace& s) const { return project_halfspace(x, s.normal, s.offset); }
    Vec operator()(const Hypercube&) const { return project_binary(x); }
    Vec operator()(const Lattice&) const { return project_integer(x); }
    Vec operator()(const Sparsity& s) const { return project_sparsity(x, s.k); }
    Vec operator()(const Rank& s) const {
      return flatten(project_rank(as_matrix(x, s.rows, s.cols), s.k));
    }
    Vec operator()(const EdgeSparsity& s) const {
      return flatten(project_edge_sparsity(as_matrix(x, s.p, s.p), s.k));
    }
    Vec operator()(const Finite& s) const { return project_finite(x, s.points); }
  };
  return std::visit(Visitor{x}, shape_);
}

bool ProjectableSet::contains(const Vec& x, double tol) const {
  struct Visitor {
    const Vec& x;
    double tol;
    bool operator()(const Nonneg&) const { return x.size() == 0 || x.minCoeff() >= -tol; }
    bool operator()(const Box& s) const {
      return ((x - s.lower).array() >= -tol).all() && ((s.upper - x).array() >= -tol).all();
    }
    bool operator()(const Ball& s) const { return (x - s.center).norm() <= s.radius + tol; }
    bool operator()(const Halfspace& s) const {
      return s.normal.dot(x) - s.offset >= -tol * std::max(1.0, s.normal.norm());
    }
    bool operator()(const Hypercube&) const {
      return (x.array() == 0.0 || x.array() == 1.0).all();
    }
    bool operator()(const Lattice&) const { return (x.array() == x.array().floor()).all(); }
    bool operator()(const Sparsity& s) const { return count_nonzero(x) <= s.k; }
    bool operator()(const Rank& s) const {
      const auto m = as_matrix(x, s.rows, s.cols);
      if (s.k >= static_cast<std::size_t>(std::min(m.rows(), m.cols()))) return true;
      Eigen::BDCSVD<Mat> svd(m);
      const Vec& sv = svd.singularValues();
      const double scale = std::max(1.0, sv.size() > 0 ? sv[0] : 0.0);
      return sv[static_cast<Eigen::Index>(s.k)] <= tol * scale;
    }
    bool operator()(const EdgeSparsity& s) const {
      const auto m = as_matrix(x, s.p, s.p);
      if (!is_symmetric(m, 0.0)) return false;
      std::size_t nz = 0;
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i + 1; j < m.cols(); ++j) nz += m(i, j) != 0.0 ? 1 : 0;
      return nz <= s.k;
    }
    bool operator()(const Finite& s) const {
      return std::any_of(s.points.begin(), s.points.end(),
                         [&](const Vec& p) { return p.size() == x.size() && p == x; });
    }
  };
  return std::visit(Visitor{x, tol}, shape_);
}

std::string ProjectableSet::describe() const {
  std::ostringstream os;
  struct Visitor {
    std::ostringstream& os;
    void operator()(const Nonneg&) const { os << "nonneg"; }
    void operator()(const Box& s) const { os << "box(dim=" << s.lower.size() << ")"; }
    void operator()(const Ball& s) const {
      os << "ball(center=" << s.center.transpose() << ", radius=" << s.radius << ")";
    }
    void operator()(const Halfspace& s) const {
      os << "halfspace(normal=" << s.normal.transpose() << ", offset=" << s.offset << ")";
    }
    void operator()(const Hypercube&) const { os << "binary"; }
    void operator()(const Lattice&) const { os << "integer"; }
    void operator()(const Sparsity& s) const { os << "sparsity(k=" << s.k << ")"; }
    void operator()(const Rank& s) const {
      os << "rank(" << s.rows << "x" << s.cols << ", k=" << s.k << ")";
    }
    void operator()(const EdgeSparsity& s) const {
      os << "edge-sparsity(p=" << s.p << ", k=" << s.k << ")";
    }
    void operator()(const Finite& s) const { os << "finite(" << s.points.size() << " points)"; }
  };
  std::visit(Visitor{os}, shape_);
  return os.str();
}

double set_distance(const Vec& x, const ProjectableSet& set) {
  return (x - set.project(x)).norm();
}

ProjectableSet parse_set(const std::string& text) {
  std::istringstream in(text);
  std::string kind;
  if (!(in >> kind)) throw std::invalid_argument("empty set description");
  std::vector<double> nums;
  for (double v; in >> v;) nums.push_back(v);
  if (!in.eof()) throw std::invalid_argument("malformed set description: " + text);

  auto as_count = [&](std::size_t i) {
    if (i >= nums.size() || nums[i] < 0 || nums[i] != std::floor(nums[i])) {
      throw std::invalid_argument("set description needs a nonnegative integer: " + text);
    }
    return static_cast<std::size_t>(nums[i]);
  };
  auto slice = [&](std::size_t from, std::size_t count) {
    Vec v(static_cast<Eigen::Index>(count));
    for (std::size_t i = 0; i < count; ++i) v[static_cast<Eigen::Index>(i)] = nums[from + i];
    return v;
  };

  if (kind == "nonneg" && nums.empty()) return ProjectableSet::nonneg();
  if (kind == "binary" && nums.empty()) return ProjectableSet::hypercube_vertices();
  if (kind == "integer" && nums.empty()) return ProjectableSet::integer_lattice();
  if (kind == "sparsity" && nums.size() == 1) return ProjectableSet::sparsity(as_count(0));
  if (kind == "rank" && nums.size() == 3) {
    return ProjectableSet::rank(as_count(0), as_count(1), as_count(2));
  }
  if (kind == "edge-sparsity" && nums.size() == 2) {
    return ProjectableSet::edge_sparsity(as_count(0), as_count(1));
  }
  if (kind == "ball" && nums.size() >= 2) {
    return ProjectableSet::ball(slice(0, nums.size() - 1), nums.back());
  }
  if (kind == "halfspace" && nums.size() >= 2) {
    return ProjectableSet::halfspace(slice(0, nums.size() - 1), nums.back());
  }
  if (kind == "box" && !nums.empty() && nums.size() % 2 == 0) {
    const std::size_t d = nums.size() / 2;
    return ProjectableSet::box(slice(0, d), slice(d, d));
  }
  if (kind == "finite" && !nums.empty()) {
    const std::size_t d = as_count(0);
    if (d == 0 || (nums.size() - 1) % d != 0 || nums.size() == 1) {
      throw std::invalid_argument("finite set coordinates do not match dimension: " + text);
    }
    std::vector<Vec> points;
    for (std::size_t i = 1; i < nums.size(); i += d) points.push_back(slice(i, d));
    return ProjectableSet::finite(std::move(points));
  }
  throw std::invalid_argument("unrecognized set description: " + text);
}

}  // namespace mmopt
