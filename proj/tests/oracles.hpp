#pragma once

// Brute-force reference solvers shared by the unit and acceptance tests.

#include <cstddef>
#include <limits>
#include <vector>

#include "mmopt/linalg.hpp"
#include "mmopt/problems.hpp"

namespace oracle {

using mmopt::Mat;
using mmopt::Vec;

struct Solution {
  Vec x;
  double value = std::numeric_limits<double>::infinity();
};

inline std::vector<Eigen::Index> support_of(unsigned mask, Eigen::Index d) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (mask & (1u << i)) idx.push_back(i);
  }
  return idx;
}

// Minimize 1/2 x'Ax + b'x over x >= 0 by checking KKT conditions on every
// candidate active set.
inline Solution nqp_active_set(const Mat& a, const Vec& b) {
  const Eigen::Index d = b.size();
  Solution best;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    const auto free = support_of(mask, d);
    Vec x = Vec::Zero(d);
    if (!free.empty()) {
      const auto n = static_cast<Eigen::Index>(free.size());
      Mat sub(n, n);
      Vec rhs(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        rhs[i] = -b[free[i]];
        for (Eigen::Index j = 0; j < n; ++j) sub(i, j) = a(free[i], free[j]);
      }
      const Vec xs = sub.llt().solve(rhs);
      if ((xs.array() < 0.0).any()) continue;
      for (Eigen::Index i = 0; i < n; ++i) x[free[i]] = xs[i];
    }
    const Vec grad = a * x + b;
    bool ok = true;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (!(mask & (1u << i)) && grad[i] < -1e-12) ok = false;
    }
    if (!ok) continue;
    const double value = mmopt::nqp_value(a, b, x);
    if (value < best.value) best = {x, value};
  }
  return best;
}

inline Solution binary_enumeration(const Mat& w, const Vec& b) {
  const Eigen::Index d = b.size();
  Solution best;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    Vec x = Vec::Zero(d);
    for (Eigen::Index i : support_of(mask, d)) x[i] = 1.0;
    const double value = mmopt::binary_pwl_value(w, b, x);
    if (value < best.value) best = {x, value};
  }
  return best;
}

// Least squares over every support of size k; value is half the residual sum of squares.
inline Solution best_subset(const Mat& x, const Vec& y, int k) {
  const Eigen::Index n = x.cols();
  Solution best;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    const auto cols = support_of(mask, n);
    Mat sub(x.rows(), k);
    for (int j = 0; j < k; ++j) sub.col(j) = x.col(cols[j]);
    const Vec coef = sub.colPivHouseholderQr().solve(y);
    const double value = 0.5 * (y - sub * coef).squaredNorm();
    if (value < best.value) {
      Vec full = Vec::Zero(n);
      for (int j = 0; j < k; ++j) full[cols[j]] = coef[j];
      best = {full, value};
    }
  }
  return best;
}

}  // namespace oracle
