#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gkm {

/// Two operands whose sizes must agree did not.
class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(const std::string& what, std::size_t expected, std::size_t actual);

  std::size_t expected() const noexcept { return expected_; }
  std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

/// A requested size exceeds the dense-storage limits of the library.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Adaptive quadrature stopped at its refinement limit before reaching tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_tolerance);

  double achieved_tolerance() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// A non-finite value appeared while time stepping.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, std::size_t step);

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Time step too large for the explicit upwind scheme.
class CflViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file or document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gkm
