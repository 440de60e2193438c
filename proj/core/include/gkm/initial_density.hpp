#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gkm/measure.hpp"

namespace gkm {

/// Initial phase density rho0(u, x) on the circle, optionally varying with x.
///
/// `twist` rotates the density by 2pi * twist * x, which gives the
/// x-dependent variants; twist = 0 makes rho0 independent of x.
struct InitialDensity {
  enum class Kind { uniform, von_mises, two_cluster };

  Kind kind = Kind::uniform;
  double kappa = 0.0;        // von_mises concentration, or per-cluster concentration
  double mean = 0.0;         // von_mises center
  double theta1 = 0.0;       // two_cluster centers
  double theta2 = 0.0;
  double weight = 0.5;       // two_cluster mass of the first cluster
  double twist = 0.0;

  static InitialDensity uniform() { return {}; }
  static InitialDensity von_mises(double kappa, double mean, double twist = 0.0);
  /// Mixture weight * VM(theta1, kappa) + (1 - weight) * VM(theta2, kappa).
  static InitialDensity two_cluster(double theta1, double theta2, double weight,
                                    double kappa = 10.0, double twist = 0.0);

  /// Throws std::invalid_argument on negative concentration, weight outside
  /// [0,1] or non-finite parameters.
  void validate() const;

  double pdf(double u, double x) const;
};

/// Tabulated CDF of u -> rho0(u, x) on [0, 2pi) for one fixed x.
class ConditionalCdf {
 public:
  ConditionalCdf(const InitialDensity& density, double x, std::size_t grid = 1u << 14);

  /// F(u) for u in [0, 2pi].
  double cdf(double u) const;
  /// Smallest u with F(u) = q, for q in [0,1].
  double quantile(double q) const;

 private:
  double step_;
  std::vector<double> table_;  // F at grid nodes, table_.back() == 1
};

enum class InitMode { quantile, iid };

/// Cell representative x for cell i (0-based) of n: (i + 1) / n.
inline double cell_representative(std::size_t i, std::size_t n) {
  return static_cast<double>(i + 1) / static_cast<double>(n);
}

/// Flattened phases, cell-major: cell i owns entries [i*m, (i+1)*m).
///
/// Quantile mode places atom k at the conditional quantile (k + 1/2)/m;
/// iid mode draws by inverse CDF from a stream keyed by (seed, cell).
std::vector<double> initial_phases(const InitialDensity& density, std::size_t n, std::size_t m,
                                   InitMode mode, std::uint64_t seed = 0);

MeasureFamily initial_family(const InitialDensity& density, std::size_t n, std::size_t m,
                             InitMode mode, std::uint64_t seed = 0);

}  // namespace gkm
