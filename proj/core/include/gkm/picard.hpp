#pragma once

#include <cstddef>
#include <vector>

#include "gkm/meanfield.hpp"

namespace gkm {

struct PicardOptions {
  double horizon = 1.0;
  double dt = 1e-2;
  /// Weight of the exponentially discounted sup metric; must exceed 2.
  double alpha = 3.0;
  double tolerance = 1e-4;
  std::size_t max_iterations = 50;
};

struct PicardReport {
  /// d_alpha(mu^(k+1), mu^(k)) for k = 0, 1, ...
  std::vector<double> distances;
  /// distances[k] / distances[k-1]; entry 0 is NaN.
  std::vector<double> ratios;
  bool converged = false;
  std::size_t iterations = 0;

  double contraction_bound(double alpha) const { return 1.0 / (alpha - 1.0); }
};

struct PicardResult {
  MeasureTrajectory trajectory;
  PicardReport report;
};

/// Fixed point iteration mu^(k+1) = A[W_n, mu^(k)] starting from the
/// constant-in-time trajectory mu0.
///
/// Each iterate transports the atoms of mu0 along the characteristics of the
/// velocity field induced by the previous iterate, which is frozen on the
/// time grid and linearly interpolated in atom position at RK4 half steps.
/// Stops when d_alpha between successive iterates drops below the
/// tolerance; on hitting max_iterations it returns the last iterate with
/// converged = false.
PicardResult picard_solve(const VelocityFieldSpec& spec, const MeasureFamily& mu0,
                          const PicardOptions& options);

}  // namespace gkm
