#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "gkm/initial_density.hpp"
#include "gkm/meanfield.hpp"

namespace gkm {

/// Cell-averaged densities rho(u, x) on n x-cells and g u-cells of width 2pi/g.
class DensityField {
 public:
  /// Checks non-negativity and per x-cell normalization within 1e-10.
  DensityField(std::size_t n, std::size_t g, std::vector<double> values);

  std::size_t n() const noexcept { return n_; }
  std::size_t g() const noexcept { return g_; }
  double du() const noexcept;
  double u_center(std::size_t k) const noexcept;
  double operator()(std::size_t i, std::size_t k) const noexcept { return values_[i * g_ + k]; }
  std::span<const double> row(std::size_t i) const noexcept { return {values_.data() + i * g_, g_}; }
  std::span<const double> values() const noexcept { return values_; }

  /// du * sum_k rho(i, k), compensated.
  double cell_mass(std::size_t i) const;

  /// Family of m atoms per x-cell at the exact quantiles (k + 1/2)/m of the
  /// piecewise-constant density.
  MeasureFamily quantile_family(std::size_t m) const;

 private:
  std::size_t n_;
  std::size_t g_;
  std::vector<double> values_;
};

/// u-cell averages of rho0(., x_i) with x_i the cell representative.
DensityField discretize_density(const InitialDensity& rho0, std::size_t n, std::size_t g);

struct FvOptions {
  double horizon = 1.0;
  double dt = 1e-2;
  std::size_t record_every = 1;
};

struct FvSolution {
  std::vector<double> times;
  std::vector<DensityField> fields;
};

/// Velocity at arbitrary u for every x-cell, from the midpoint rule in u.
std::vector<double> fv_velocity(const VelocityFieldSpec& spec, const DensityField& rho,
                                std::span<const double> u_points);

/// First-order conservative upwind scheme with forward Euler in time.
///
/// Throws CflViolation unless dt <= 0.9 * du (|V| <= 1 bounds the Courant number).
FvSolution solve_fv(const VelocityFieldSpec& spec, const DensityField& rho0,
                    const FvOptions& options);

/// Smooth test function w(t,u) with its partial derivatives.
struct TestFunction {
  std::function<double(double, double)> value;
  std::function<double(double, double)> dt;
  std::function<double(double, double)> du;
};

/// max over test functions and x-cells of the weak-form defect
/// |int int rho (w_t + V w_u) du dt + int w(0) rho(0) du - int w(T) rho(T) du|,
/// trapezoid rule in t over the recorded times, midpoint in u.
/// The last term vanishes for test functions supported away from T.
double weak_residual(const FvSolution& solution, const VelocityFieldSpec& spec,
                     std::span<const TestFunction> tests);

}  // namespace gkm
