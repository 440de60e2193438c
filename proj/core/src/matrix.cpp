#include "gkm/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "gkm/error.hpp"

namespace gkm {

SquareMatrix::SquareMatrix(std::size_t n, double fill) : n_(n), data_(n * n, fill) {}

SquareMatrix::SquareMatrix(std::size_t n, std::vector<double> row_major)
    : n_(n), data_(std::move(row_major)) {
  if (data_.size() != n * n) {
    throw DimensionMismatch("SquareMatrix storage", n * n, data_.size());
  }
}

bool SquareMatrix::is_symmetric(double tol) const noexcept {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    }
  }
  return true;
}

double SquareMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace gkm
