#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "gkm/matrix.hpp"

namespace gkm {

/// Graphon that is constant on each cell [i/n,(i+1)/n) x [j/n,(j+1)/n).
///
/// Values are symmetric and bounded by 1 in absolute value; both are checked
/// on construction.
class StepGraphon {
 public:
  explicit StepGraphon(SquareMatrix values);

  std::size_t n() const noexcept { return values_.size(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return values_(i, j); }
  const SquareMatrix& values() const noexcept { return values_; }

  double eval(double x, double y) const noexcept;

  /// Cell index of x in [0,1] at resolution n; x = 1 belongs to the last cell.
  static std::size_t cell_of(double x, std::size_t n) noexcept;

  friend bool operator==(const StepGraphon&, const StepGraphon&) = default;

 private:
  SquareMatrix values_;
};

enum class GraphonKind { constant, small_world, nearest_neighbor, step, custom };

std::string to_string(GraphonKind kind);

/// Symmetric bounded kernel on the unit square.
///
/// Built-in kinds validate their parameters on construction. A custom kernel
/// carries the caller's obligation to be symmetric, bounded by 1 and
/// continuous in L1 along rows; none of this is checked at evaluation time.
class Graphon {
 public:
  using Kernel = std::function<double(double, double)>;

  static Graphon constant(double p);
  /// 1-p on the band d(x,y) <= h of the unit circle, p elsewhere; p,h in (0,1/2).
  static Graphon small_world(double p, double h);
  /// 1 on the band d(x,y) <= h of the unit circle, 0 elsewhere; h in [0,1/2].
  static Graphon nearest_neighbor(double h);
  static Graphon step(StepGraphon values);
  static Graphon custom(Kernel kernel, std::string label = "custom");

  GraphonKind kind() const noexcept { return kind_; }
  double eval(double x, double y) const;

  /// Parameters of the built-in kinds. Empty when not applicable.
  std::optional<double> p() const noexcept;
  std::optional<double> h() const noexcept;
  const StepGraphon* step_values() const noexcept;
  const std::string& label() const noexcept { return label_; }

  bool is_band() const noexcept {
    return kind_ == GraphonKind::small_world || kind_ == GraphonKind::nearest_neighbor;
  }
  /// Value on and off the band for band kinds.
  double band_inside() const noexcept { return band_.inside; }
  double band_outside() const noexcept { return band_.outside; }

 private:
  struct Band {
    double inside = 0.0;
    double outside = 0.0;
    double half_width = 0.0;
  };

  Graphon() = default;

  GraphonKind kind_ = GraphonKind::constant;
  double constant_ = 0.0;
  Band band_;
  std::optional<StepGraphon> step_;
  Kernel kernel_;
  std::string label_;
};

struct QuadratureOptions {
  /// Stop once successive Richardson estimates differ by less than this.
  double tolerance = 1e-9;
  /// Largest per-side subdivision of a cell before giving up.
  std::size_t max_subdivisions = 512;
};

/// n x n matrix of cell averages n^2 * integral of W over each cell.
///
/// Closed forms for constant, band and step kinds; Richardson-extrapolated
/// midpoint quadrature for custom kernels. Throws QuadratureError when a custom
/// kernel does not converge within `options`.
StepGraphon cell_average(const Graphon& w, std::size_t n, const QuadratureOptions& options = {});

/// Alternative discretization W(i/n, j/n), i,j = 1..n.
StepGraphon midpoint_sample(const Graphon& w, std::size_t n);

enum class KernelNorm { L1, L2 };

/// L1 or L2 distance over the unit square on a resolution x resolution grid.
///
/// Each grid cell is integrated exactly whenever both kernels are constant or
/// share band geometry on it (step graphons whose n divides `resolution`,
/// constants, band kinds against either). Other cells fall back to an 8x8
/// midpoint rule.
double kernel_distance(const Graphon& w, const Graphon& u, KernelNorm norm,
                       std::size_t resolution);

/// sqrt(n^-2 * sum (A_ij - B_ij)^2).
double step_norm_2n(const StepGraphon& a, const StepGraphon& b);

namespace detail {

/// Area of {(x,y) in [x0,x0+s] x [y0,y0+s] : unit-circle distance(x,y) <= h}.
double band_area(double x0, double y0, double side, double h) noexcept;

}  // namespace detail

}  // namespace gkm
