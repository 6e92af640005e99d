#include "mmopt/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace mmopt {

namespace {

double parse_number(const std::string& token) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + token + "'");
  }
  if (used != token.size()) throw std::invalid_argument("not a number: '" + token + "'");
  return value;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

}  // namespace

Mat read_matrix(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::vector<double> row;
    for (std::string token; fields >> token;) row.push_back(parse_number(token));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::invalid_argument("ragged matrix: row " + std::to_string(rows.size() + 1));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("empty matrix");
  Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Mat read_matrix_file(const std::string& path) {
  auto in = open_input(path);
  return read_matrix(in);
}

Vec read_vector_file(const std::string& path) {
  const Mat m = read_matrix_file(path);
  if (m.rows() != 1 && m.cols() != 1) throw std::invalid_argument(path + " is not a vector");
  return m.reshaped();
}

void write_matrix(std::ostream& out, const Mat& m) {
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
  out.precision(old);
}

void write_vector(std::ostream& out, const Vec& v) { write_matrix(out, Mat(v)); }

void write_matrix_file(const std::string& path, const Mat& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_matrix(out, m);
}

LpData read_lp(std::istream& in) {
  // Strip comments, then read a flat token stream.
  std::ostringstream cleaned;
  std::string line;
  while (std::getline(in, line)) cleaned << line.substr(0, line.find('#')) << '\n';
  std::istringstream tokens(cleaned.str());

  LpData lp;
  bool have_a = false, have_b = false, have_c = false;
  auto read_values = [&](Eigen::Index count, const std::string& block) {
    std::vector<double> values(static_cast<std::size_t>(count));
    for (auto& v : values) {
      std::string token;
      if (!(tokens >> token)) throw std::invalid_argument("block " + block + " is truncated");
      v = parse_number(token);
    }
    return values;
  };
  auto read_size = [&](const std::string& block) {
    long long n = 0;
    if (!(tokens >> n) || n < 1) throw std::invalid_argument("block " + block + " needs a positive size");
    return static_cast<Eigen::Index>(n);
  };

  for (std::string name; tokens >> name;) {
    if (name == "A") {
      const Eigen::Index r = read_size(name);
      const Eigen::Index c = read_size(name);
      const auto values = read_values(r * c, name);
      lp.a = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
          values.data(), r, c);
      have_a = true;
    } else if (name == "b" || name == "c" || name == "x0") {
      const Eigen::Index n = read_size(name);
      const auto values = read_values(n, name);
      Vec v = Eigen::Map<const Vec>(values.data(), n);
      if (name == "b") {
        lp.b = std::move(v);
        have_b = true;
      } else if (name == "c") {
        lp.c = std::move(v);
        have_c = true;
      } else {
        lp.x0 = std::move(v);
      }
    } else {
      throw std::invalid_argument("unknown LP block '" + name + "'");
    }
  }
  if (!have_a || !have_b || !have_c) throw std::invalid_argument("LP file needs A, b and c blocks");
  if (lp.a.rows() != lp.b.size() || lp.a.cols() != lp.c.size()) {
    throw std::invalid_argument("LP block sizes disagree");
  }
  if (lp.x0 && lp.x0->size() != lp.c.size()) throw std::invalid_argument("x0 has the wrong length");
  return lp;
}

LpData read_lp_file(const std::string& path) {
  auto in = open_input(path);
  return read_lp(in);
}

Vec lp_start(const LpData& lp) {
  if (lp.x0) return *lp.x0;
  const Vec x = lp.a.transpose() * (lp.a * lp.a.transpose()).ldlt().solve(lp.b);
  if (!((x.array() > 0.0).all()) || (lp.a * x - lp.b).norm() > 1e-10) {
    throw std::invalid_argument("no strictly positive start found; supply an x0 block");
  }
  return x;
}

}  // namespace mmopt
