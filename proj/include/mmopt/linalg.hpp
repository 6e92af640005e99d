#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mmopt {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Raised when a decomposition or root finder cannot produce a usable result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigenpairs of a symmetric matrix, eigenvalues ascending.
struct SymmetricEigen {
  Vec values;
  Mat vectors;
};

SymmetricEigen symmetric_eigen(const Mat& a);

bool is_symmetric(const Mat& a, double tol = 1e-12);

/// Throws std::invalid_argument naming `what` if `a` is not square and symmetric.
void require_symmetric(const Mat& a, const std::string& what);

bool all_finite(const Vec& v);

}  // namespace mmopt
