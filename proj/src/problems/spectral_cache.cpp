#include <stdexcept>

#include "mmopt/problems.hpp"

namespace mmopt {

SpectralCache SpectralCache::from_symmetric(const Mat& a) {
  require_symmetric(a, "cached matrix");
  auto eig = symmetric_eigen(a);
  SpectralCache cache;
  cache.values_ = std::move(eig.values);
  cache.vectors_ = std::move(eig.vectors);
  return cache;
}

SpectralCache SpectralCache::from_design(const Mat& x) {
  if (x.size() == 0) throw std::invalid_argument("empty design matrix");
  Eigen::BDCSVD<Mat> svd(x, Eigen::ComputeFullV);
  const Vec sv = svd.singularValues();  // descending
  if (!sv.allFinite()) throw NumericalError("SVD of the design matrix failed");
  const Eigen::Index n = x.cols();
  Vec squared = Vec::Zero(n);
  squared.head(sv.size()) = sv.cwiseAbs2();

  // Reverse to ascending order to match from_symmetric.
  SpectralCache cache;
  cache.values_ = squared.reverse();
  cache.vectors_ = svd.matrixV().rowwise().reverse();
  return cache;
}

Vec SpectralCache::solve_shifted(const Vec& r, double w) const {
  if (r.size() != values_.size()) throw std::invalid_argument("right-hand side has the wrong size");
  const Vec shifted = values_.array() + w;
  if (!(shifted.minCoeff() > 0.0)) throw NumericalError("shifted matrix is singular");
  return vectors_ * (vectors_.transpose() * r).cwiseQuotient(shifted);
}

Mat SpectralCache::reconstruct() const { return vectors_ * values_.asDiagonal() * vectors_.transpose(); }

}  // namespace mmopt
