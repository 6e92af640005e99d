#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "mmopt/linalg.hpp"

namespace mmopt {

// Plain-text matrices: one row per line, whitespace-delimited entries.
// Blank lines and lines starting with '#' are skipped; "nan" is accepted.

Mat read_matrix(std::istream& in);
Mat read_matrix_file(const std::string& path);
/// A single row or a single column, returned as a vector.
Vec read_vector_file(const std::string& path);

void write_matrix(std::ostream& out, const Mat& m);
void write_vector(std::ostream& out, const Vec& v);  // one entry per line
void write_matrix_file(const std::string& path, const Mat& m);

/// Standard-form LP in named blocks:
///   A <rows> <cols>   followed by rows*cols numbers, row-major
///   b <rows>
///   c <cols>
///   x0 <cols>         optional strictly positive start
struct LpData {
  Mat a;
  Vec b;
  Vec c;
  std::optional<Vec> x0;
};

LpData read_lp(std::istream& in);
LpData read_lp_file(const std::string& path);

/// x0 if present, else the least-norm solution of A x = b when it is
/// strictly positive; throws otherwise.
Vec lp_start(const LpData& lp);

}  // namespace mmopt
