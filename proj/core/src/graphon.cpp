#include "gkm/graphon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gkm/circle.hpp"
#include "gkm/error.hpp"

namespace gkm {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// 1-D overlap length of [a0,a1) and [b0,b1).
double overlap(double a0, double a1, double b0, double b1) noexcept {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

}  // namespace

// ---------------------------------------------------------------------------
// StepGraphon

StepGraphon::StepGraphon(SquareMatrix values) : values_(std::move(values)) {
  require(values_.size() >= 1, "StepGraphon: n must be positive");
  require(values_.is_symmetric(), "StepGraphon: matrix must be symmetric");
  for (double v : values_.data()) {
    require(std::isfinite(v) && std::abs(v) <= 1.0, "StepGraphon: entries must lie in [-1,1]");
  }
}

std::size_t StepGraphon::cell_of(double x, std::size_t n) noexcept {
  if (!(x > 0.0)) return 0;
  const auto i = static_cast<std::size_t>(x * static_cast<double>(n));
  return std::min(i, n - 1);
}

double StepGraphon::eval(double x, double y) const noexcept {
  return values_(cell_of(x, n()), cell_of(y, n()));
}

// ---------------------------------------------------------------------------
// Graphon

std::string to_string(GraphonKind kind) {
  switch (kind) {
    case GraphonKind::constant: return "constant";
    case GraphonKind::small_world: return "small_world";
    case GraphonKind::nearest_neighbor: return "nearest_neighbor";
    case GraphonKind::step: return "step";
    case GraphonKind::custom: return "custom";
  }
  return "unknown";
}

Graphon Graphon::constant(double p) {
  require(std::isfinite(p) && std::abs(p) <= 1.0, "constant graphon: |p| must be <= 1");
  Graphon g;
  g.kind_ = GraphonKind::constant;
  g.constant_ = p;
  g.label_ = "constant";
  return g;
}

Graphon Graphon::small_world(double p, double h) {
  require(p > 0.0 && p < 0.5, "small_world graphon: p must lie in (0, 1/2)");
  require(h > 0.0 && h < 0.5, "small_world graphon: h must lie in (0, 1/2)");
  Graphon g;
  g.kind_ = GraphonKind::small_world;
  g.band_ = {1.0 - p, p, h};
  g.constant_ = p;
  g.label_ = "small_world";
  return g;
}

Graphon Graphon::nearest_neighbor(double h) {
  require(h >= 0.0 && h <= 0.5, "nearest_neighbor graphon: h must lie in [0, 1/2]");
  Graphon g;
  g.kind_ = GraphonKind::nearest_neighbor;
  g.band_ = {1.0, 0.0, h};
  g.label_ = "nearest_neighbor";
  return g;
}

Graphon Graphon::step(StepGraphon values) {
  Graphon g;
  g.kind_ = GraphonKind::step;
  g.step_ = std::move(values);
  g.label_ = "step";
  return g;
}

Graphon Graphon::custom(Kernel kernel, std::string label) {
  require(static_cast<bool>(kernel), "custom graphon: kernel must be callable");
  Graphon g;
  g.kind_ = GraphonKind::custom;
  g.kernel_ = std::move(kernel);
  g.label_ = std::move(label);
  return g;
}

double Graphon::eval(double x, double y) const {
  switch (kind_) {
    case GraphonKind::constant:
      return constant_;
    case GraphonKind::small_world:
    case GraphonKind::nearest_neighbor:
      return unit_circle_distance(x, y) <= band_.half_width ? band_.inside : band_.outside;
    case GraphonKind::step:
      return step_->eval(x, y);
    case GraphonKind::custom:
      return kernel_(x, y);
  }
  return 0.0;
}

std::optional<double> Graphon::p() const noexcept {
  if (kind_ == GraphonKind::constant || kind_ == GraphonKind::small_world) return constant_;
  return std::nullopt;
}

std::optional<double> Graphon::h() const noexcept {
  if (is_band()) return band_.half_width;
  return std::nullopt;
}

const StepGraphon* Graphon::step_values() const noexcept {
  return step_ ? &*step_ : nullptr;
}

// ---------------------------------------------------------------------------
// Band geometry

namespace detail {

namespace {

// Area of {(X,Y) in [0,s]^2 : X - Y <= c}.
double half_plane_area(double c, double s) noexcept {
  if (c <= -s) return 0.0;
  if (c >= s) return s * s;
  if (c <= 0.0) return 0.5 * (s + c) * (s + c);
  return s * s - 0.5 * (s - c) * (s - c);
}

}  // namespace

double band_area(double x0, double y0, double side, double h) noexcept {
  // x - y lies in (-1,1); the band is the union of three disjoint strips in x - y.
  const double offset = x0 - y0;
  const std::array<std::array<double, 2>, 3> strips{{{-h, h}, {1.0 - h, 1.0 + h}, {-1.0 - h, -1.0 + h}}};
  double area = 0.0;
  for (const auto& [lo, hi] : strips) {
    area += half_plane_area(hi - offset, side) - half_plane_area(lo - offset, side);
  }
  return std::clamp(area, 0.0, side * side);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Discretization

namespace {

StepGraphon average_step(const StepGraphon& src, std::size_t n) {
  const std::size_t m = src.n();
  if (m == n) return src;
  // overlap[i][a] = |I_{n,i} cap I_{m,a}|
  std::vector<double> ov(n * m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double a0 = static_cast<double>(i) / static_cast<double>(n);
    const double a1 = static_cast<double>(i + 1) / static_cast<double>(n);
    for (std::size_t a = 0; a < m; ++a) {
      ov[i * m + a] = overlap(a0, a1, static_cast<double>(a) / static_cast<double>(m),
                              static_cast<double>(a + 1) / static_cast<double>(m));
    }
  }
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  SquareMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t a = 0; a < m; ++a) {
        const double wa = ov[i * m + a];
        if (wa == 0.0) continue;
        for (std::size_t b = 0; b < m; ++b) {
          const double wb = ov[j * m + b];
          if (wb != 0.0) acc += wa * wb * src(a, b);
        }
      }
      out(i, j) = out(j, i) = std::clamp(n2 * acc, -1.0, 1.0);
    }
  }
  return StepGraphon(std::move(out));
}

double midpoint_estimate(const Graphon& w, double x0, double y0, double side, std::size_t k) {
  const double hstep = side / static_cast<double>(k);
  double acc = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    const double x = x0 + (static_cast<double>(a) + 0.5) * hstep;
    for (std::size_t b = 0; b < k; ++b) {
      acc += w.eval(x, y0 + (static_cast<double>(b) + 0.5) * hstep);
    }
  }
  return acc / static_cast<double>(k * k);
}

// Richardson-extrapolated composite midpoint average of w over a square cell.
double adaptive_cell_mean(const Graphon& w, double x0, double y0, double side,
                          const QuadratureOptions& opt) {
  std::size_t k = 1;
  double m_prev = midpoint_estimate(w, x0, y0, side, k);
  double r_prev = std::numeric_limits<double>::quiet_NaN();
  double achieved = std::numeric_limits<double>::infinity();
  while (2 * k <= opt.max_subdivisions) {
    k *= 2;
    const double m_next = midpoint_estimate(w, x0, y0, side, k);
    const double r_next = (4.0 * m_next - m_prev) / 3.0;
    if (!std::isnan(r_prev)) {
      achieved = std::abs(r_next - r_prev);
      if (achieved < opt.tolerance) return r_next;
    }
    m_prev = m_next;
    r_prev = r_next;
  }
  throw QuadratureError("cell_average: custom kernel quadrature did not converge", achieved);
}

}  // namespace

StepGraphon cell_average(const Graphon& w, std::size_t n, const QuadratureOptions& options) {
  if (n == 0) throw std::invalid_argument("cell_average: n must be positive");
  const double nd = static_cast<double>(n);
  const double side = 1.0 / nd;
  switch (w.kind()) {
    case GraphonKind::constant:
      return StepGraphon(SquareMatrix(n, *w.p()));
    case GraphonKind::step:
      return average_step(*w.step_values(), n);
    case GraphonKind::small_world:
    case GraphonKind::nearest_neighbor: {
      SquareMatrix out(n);
      const double h = *w.h();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
          const double area = detail::band_area(static_cast<double>(i) * side,
                                                static_cast<double>(j) * side, side, h);
          const double mean =
              nd * nd * (w.band_inside() * area + w.band_outside() * (side * side - area));
          out(i, j) = out(j, i) = std::clamp(mean, -1.0, 1.0);
        }
      }
      return StepGraphon(std::move(out));
    }
    case GraphonKind::custom: {
      SquareMatrix out(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
          const double mean = adaptive_cell_mean(w, static_cast<double>(i) * side,
                                                 static_cast<double>(j) * side, side, options);
          if (!(std::abs(mean) <= 1.0 + 1e-12)) {
            throw std::invalid_argument("cell_average: custom kernel exceeds |W| <= 1");
          }
          out(i, j) = out(j, i) = std::clamp(mean, -1.0, 1.0);
        }
      }
      return StepGraphon(std::move(out));
    }
  }
  throw std::logic_error("cell_average: unknown graphon kind");
}

StepGraphon midpoint_sample(const Graphon& w, std::size_t n) {
  if (n == 0) throw std::invalid_argument("midpoint_sample: n must be positive");
  SquareMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = w.eval(static_cast<double>(i + 1) / static_cast<double>(n),
                              static_cast<double>(j + 1) / static_cast<double>(n));
      out(i, j) = out(j, i) = std::clamp(v, -1.0, 1.0);
    }
  }
  return StepGraphon(std::move(out));
}

// ---------------------------------------------------------------------------
// Distances

namespace {

// Exact value distribution of a kernel on one refinement cell: at most two
// (value, area) pieces. `band` marks the two-piece band split.
struct CellPieces {
  int count = 0;
  std::array<double, 2> value{};
  std::array<double, 2> area{};
  bool band = false;
};

std::optional<CellPieces> exact_pieces(const Graphon& w, std::size_t a, std::size_t b,
                                       std::size_t res) {
  const double side = 1.0 / static_cast<double>(res);
  const double full = side * side;
  switch (w.kind()) {
    case GraphonKind::constant:
      return CellPieces{1, {*w.p(), 0.0}, {full, 0.0}, false};
    case GraphonKind::step: {
      const StepGraphon& s = *w.step_values();
      const std::size_t n = s.n();
      const std::size_t i0 = a * n / res, i1 = ((a + 1) * n - 1) / res;
      const std::size_t j0 = b * n / res, j1 = ((b + 1) * n - 1) / res;
      if (i0 != i1 || j0 != j1) return std::nullopt;
      return CellPieces{1, {s(i0, j0), 0.0}, {full, 0.0}, false};
    }
    case GraphonKind::small_world:
    case GraphonKind::nearest_neighbor: {
      const double area = detail::band_area(static_cast<double>(a) * side,
                                            static_cast<double>(b) * side, side, *w.h());
      if (area <= 0.0) return CellPieces{1, {w.band_outside(), 0.0}, {full, 0.0}, false};
      if (area >= full) return CellPieces{1, {w.band_inside(), 0.0}, {full, 0.0}, false};
      return CellPieces{2, {w.band_inside(), w.band_outside()}, {area, full - area}, true};
    }
    case GraphonKind::custom:
      return std::nullopt;
  }
  return std::nullopt;
}

double power(double v, KernelNorm norm) { return norm == KernelNorm::L1 ? std::abs(v) : v * v; }

double cell_integral(const Graphon& w, const Graphon& u, std::size_t a, std::size_t b,
                     std::size_t res, KernelNorm norm) {
  const auto pw = exact_pieces(w, a, b, res);
  const auto pu = exact_pieces(u, a, b, res);
  if (pw && pu) {
    if (pw->count == 1 || pu->count == 1) {
      const CellPieces& single = pw->count == 1 ? *pw : *pu;
      const CellPieces& other = pw->count == 1 ? *pu : *pw;
      double acc = 0.0;
      for (int k = 0; k < other.count; ++k) {
        acc += other.area[k] * power(other.value[k] - single.value[0], norm);
      }
      return acc;
    }
    if (pw->band && pu->band && *w.h() == *u.h()) {
      return pw->area[0] * power(pw->value[0] - pu->value[0], norm) +
             pw->area[1] * power(pw->value[1] - pu->value[1], norm);
    }
  }
  constexpr std::size_t q = 8;
  const double side = 1.0 / static_cast<double>(res);
  const double hs = side / q;
  double acc = 0.0;
  for (std::size_t s = 0; s < q; ++s) {
    const double x = static_cast<double>(a) * side + (static_cast<double>(s) + 0.5) * hs;
    for (std::size_t t = 0; t < q; ++t) {
      const double y = static_cast<double>(b) * side + (static_cast<double>(t) + 0.5) * hs;
      acc += power(w.eval(x, y) - u.eval(x, y), norm);
    }
  }
  return acc * hs * hs;
}

}  // namespace

double kernel_distance(const Graphon& w, const Graphon& u, KernelNorm norm,
                       std::size_t resolution) {
  if (resolution == 0) throw std::invalid_argument("kernel_distance: resolution must be >= 1");
  double total = 0.0;
  for (std::size_t a = 0; a < resolution; ++a) {
    for (std::size_t b = 0; b < resolution; ++b) {
      total += cell_integral(w, u, a, b, resolution, norm);
    }
  }
  return norm == KernelNorm::L1 ? total : std::sqrt(total);
}

double step_norm_2n(const StepGraphon& a, const StepGraphon& b) {
  if (a.n() != b.n()) throw DimensionMismatch("step_norm_2n", a.n(), b.n());
  const auto da = a.values().data();
  const auto db = b.values().data();
  double acc = 0.0;
  for (std::size_t k = 0; k < da.size(); ++k) {
    const double d = da[k] - db[k];
    acc += d * d;
  }
  const double n = static_cast<double>(a.n());
  return std::sqrt(acc / (n * n));
}

}  // namespace gkm
