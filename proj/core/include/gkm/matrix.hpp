#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gkm {

/// Dense row-major n x n matrix of doubles.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0);
  SquareMatrix(std::size_t n, std::vector<double> row_major);

  std::size_t size() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * n_, n_};
  }
  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  bool is_symmetric(double tol = 0.0) const noexcept;
  double max_abs() const noexcept;

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

}  // namespace gkm
