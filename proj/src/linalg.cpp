#include "mmopt/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace mmopt {

SymmetricEigen symmetric_eigen(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(a);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigendecomposition failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

bool is_symmetric(const Mat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < a.rows(); ++i) {
      if (std::abs(a(i, j) - a(j, i)) > tol * scale) return false;
    }
  }
  return true;
}

void require_symmetric(const Mat& a, const std::string& what) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument(what + " must be square");
  }
  if (!is_symmetric(a)) {
    throw std::invalid_argument(what + " must be symmetric");
  }
}

bool all_finite(const Vec& v) { return v.allFinite(); }

}  // namespace mmopt
