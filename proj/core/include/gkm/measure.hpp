#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gkm/circle.hpp"

namespace gkm {

struct Atom {
  double position = 0.0;
  double mass = 0.0;
};

/// Atomic probability measure on the circle.
///
/// Positions are reduced to [0, 2pi); masses must be positive and sum to one
/// within 1e-12.
class CircleMeasure {
 public:
  explicit CircleMeasure(std::vector<Atom> atoms);

  static CircleMeasure dirac(double theta);
  /// Equal mass 1/m on each of the m positions.
  static CircleMeasure equal_weights(std::span<const double> positions);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  double total_mass() const noexcept;
  CircleMeasure rotated(double shift) const;

 private:
  std::vector<Atom> atoms_;
};

/// Bounded Lipschitz distance: sup over 1-Lipschitz f of |int f dmu - int f deta|.
///
/// Equal to the Wasserstein-1 distance on the circle, computed exactly as
/// min_t int |F_mu - F_eta - t|; the minimizer is a length-weighted median of
/// the cumulative difference (interval midpoint on ties).
double bl_distance(const CircleMeasure& mu, const CircleMeasure& eta);

/// Step function x -> mu^x on the unit interval, constant on n equal cells.
class MeasureFamily {
 public:
  explicit MeasureFamily(std::vector<CircleMeasure> cells);

  std::size_t n_cells() const noexcept { return cells_.size(); }
  const CircleMeasure& cell(std::size_t i) const { return cells_.at(i); }
  const std::vector<CircleMeasure>& cells() const noexcept { return cells_; }

  /// Each cell duplicated `factor` times: the same step function on a finer grid.
  MeasureFamily refined(std::size_t factor) const;

 private:
  std::vector<CircleMeasure> cells_;
};

/// Integral over x of bl_distance(mu^x, eta^x); requires equal cell counts.
double dbar(const MeasureFamily& a, const MeasureFamily& b);

/// dbar after refining both families to lcm of their cell counts.
double dbar_common_refinement(const MeasureFamily& a, const MeasureFamily& b);

/// Families sampled at strictly increasing times starting at 0.
struct MeasureTrajectory {
  std::vector<double> times;
  std::vector<MeasureFamily> families;

  std::size_t size() const noexcept { return times.size(); }
  void validate() const;
};

/// sup over shared sample times of e^{-alpha t} dbar(A_t, B_t).
double d_alpha(const MeasureTrajectory& a, const MeasureTrajectory& b, double alpha);

/// dbar(A_t, B_t) at each shared sample time.
std::vector<double> dbar_series(const MeasureTrajectory& a, const MeasureTrajectory& b);

/// Cell i (0-based) receives phases[i*m .. (i+1)*m) with mass 1/m each.
MeasureFamily empirical_from_phases(std::span<const double> phases, std::size_t n, std::size_t m);

}  // namespace gkm
