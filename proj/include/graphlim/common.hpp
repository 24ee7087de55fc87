#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace graphlim {

// Raised for malformed or out-of-contract inputs (CLI exit code 2).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an exact algorithm is asked to exceed its size limit (CLI exit code 3).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultTol = 1e-9;

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {
    if (rows < 0 || cols < 0) throw InputError("Matrix: negative dimension");
  }

  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

  bool is_symmetric(double tol = 0.0) const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    return true;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Reproducible seed with a derivation path: identical master+path gives an
// identical byte stream, and children derived along distinct paths are
// statistically independent.
struct Seed {
  std::uint64_t master = 0;
  std::vector<std::uint64_t> path{};

  Seed child(std::uint64_t step) const {
    Seed s = *this;
    s.path.push_back(step);
    return s;
  }

  std::uint64_t stream() const {
    std::uint64_t s = mix64(master ^ 0x8e1f3ad364a5c9b1ULL);
    for (std::uint64_t p : path) s = mix64(s ^ mix64(p ^ 0x5bf03635d1d2c9efULL));
    return s;
  }

  std::mt19937_64 rng() const { return std::mt19937_64(stream()); }
};

}  // namespace graphlim
