#include "gkm/finite_volume.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "gkm/circle.hpp"
#include "gkm/error.hpp"

namespace gkm {

// ---------------------------------------------------------------------------
// DensityField

DensityField::DensityField(std::size_t n, std::size_t g, std::vector<double> values)
    : n_(n), g_(g), values_(std::move(values)) {
  if (n_ == 0 || g_ == 0) throw std::invalid_argument("DensityField: n and g must be positive");
  if (values_.size() != n_ * g_) throw DimensionMismatch("DensityField values", n_ * g_, values_.size());
  for (double v : values_) {
    // round-off in the conservative update may leave -1e-17 where rho vanishes
    if (!std::isfinite(v) || v < -1e-12) {
      throw std::invalid_argument("DensityField: densities must be finite and non-negative");
    }
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (std::abs(cell_mass(i) - 1.0) > 1e-10) {
      throw std::invalid_argument("DensityField: x-cell " + std::to_string(i) +
                                  " does not carry unit mass");
    }
  }
}

double DensityField::du() const noexcept { return kTwoPi / static_cast<double>(g_); }

double DensityField::u_center(std::size_t k) const noexcept {
  return (static_cast<double>(k) + 0.5) * du();
}

double DensityField::cell_mass(std::size_t i) const {
  double sum = 0.0, comp = 0.0;
  for (double v : row(i)) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return du() * (sum + comp);
}

MeasureFamily DensityField::quantile_family(std::size_t m) const {
  if (m == 0) throw std::invalid_argument("quantile_family: m must be positive");
  const double h = du();
  std::vector<CircleMeasure> cells;
  cells.reserve(n_);
  std::vector<double> cum(g_ + 1);
  std::vector<double> positions(m);
  for (std::size_t i = 0; i < n_; ++i) {
    cum[0] = 0.0;
    for (std::size_t k = 0; k < g_; ++k) cum[k + 1] = cum[k] + h * std::max(0.0, (*this)(i, k));
    const double total = cum[g_];
    std::size_t k = 0;
    for (std::size_t a = 0; a < m; ++a) {
      const double q = total * (static_cast<double>(a) + 0.5) / static_cast<double>(m);
      while (k + 1 < g_ && cum[k + 1] < q) ++k;
      const double mass_k = cum[k + 1] - cum[k];
      const double frac = mass_k > 0.0 ? std::clamp((q - cum[k]) / mass_k, 0.0, 1.0) : 0.0;
      positions[a] = (static_cast<double>(k) + frac) * h;
    }
    cells.push_back(CircleMeasure::equal_weights(positions));
  }
  return MeasureFamily(std::move(cells));
}

DensityField discretize_density(const InitialDensity& rho0, std::size_t n, std::size_t g) {
  if (n == 0 || g == 0) throw std::invalid_argument("discretize_density: n and g must be positive");
  const double h = kTwoPi / static_cast<double>(g);
  std::vector<double> values(n * g);
  std::optional<ConditionalCdf> shared;
  if (rho0.twist == 0.0) shared.emplace(rho0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<ConditionalCdf> local;
    const ConditionalCdf& cdf = shared ? *shared : local.emplace(rho0, cell_representative(i, n));
    double prev = 0.0;
    for (std::size_t k = 0; k < g; ++k) {
      const double next = k + 1 == g ? 1.0 : cdf.cdf(static_cast<double>(k + 1) * h);
      values[i * g + k] = (next - prev) / h;
      prev = next;
    }
  }
  return DensityField(n, g, std::move(values));
}

// ---------------------------------------------------------------------------
// Velocity

std::vector<double> fv_velocity(const VelocityFieldSpec& spec, const DensityField& rho,
                                std::span<const double> u_points) {
  const std::size_t n = rho.n();
  const std::size_t g = rho.g();
  const std::size_t p = u_points.size();
  if (spec.n() != n) throw DimensionMismatch("fv_velocity: x-cells", spec.n(), n);
  const double h = rho.du();
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> out(n * p, 0.0);

  if (spec.coupling.is_sinusoidal()) {
    std::vector<double> sin_c(g), cos_c(g);
    for (std::size_t l = 0; l < g; ++l) {
      sin_c[l] = std::sin(rho.u_center(l));
      cos_c[l] = std::cos(rho.u_center(l));
    }
    std::vector<double> s(n, 0.0), c(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < g; ++l) {
        s[j] += rho(j, l) * sin_c[l];
        c[j] += rho(j, l) * cos_c[l];
      }
      s[j] *= h;
      c[j] *= h;
    }
    const double alpha = spec.coupling.shift();
    for (std::size_t i = 0; i < n; ++i) {
      double a = 0.0, b = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        a += spec.weights(i, j) * s[j];
        b += spec.weights(i, j) * c[j];
      }
      a *= inv_n;
      b *= inv_n;
      for (std::size_t q = 0; q < p; ++q) {
        const double phase = u_points[q] - alpha;
        out[i * p + q] = std::cos(phase) * a - std::sin(phase) * b;
      }
    }
    return out;
  }

  std::vector<double> kernel(g * p);
  for (std::size_t l = 0; l < g; ++l) {
    for (std::size_t q = 0; q < p; ++q) kernel[l * p + q] = spec.coupling(rho.u_center(l) - u_points[q]);
  }
  std::vector<double> conv(n * p, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < g; ++l) {
      const double r = h * rho(j, l);
      if (r == 0.0) continue;
      for (std::size_t q = 0; q < p; ++q) conv[j * p + q] += r * kernel[l * p + q];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double w = spec.weights(i, j) * inv_n;
      if (w == 0.0) continue;
      for (std::size_t q = 0; q < p; ++q) out[i * p + q] += w * conv[j * p + q];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Solver

FvSolution solve_fv(const VelocityFieldSpec& spec, const DensityField& rho0, const FvOptions& options) {
  if (spec.n() != rho0.n()) throw DimensionMismatch("solve_fv: x-cells", spec.n(), rho0.n());
  if (options.record_every == 0) throw std::invalid_argument("solve_fv: record_every must be >= 1");
  const double h = rho0.du();
  const std::size_t steps = step_count(options.horizon, options.dt);
  if (options.dt > 0.9 * h * (1.0 + 1e-12)) {
    throw CflViolation("solve_fv: dt = " + std::to_string(options.dt) + " exceeds 0.9 * du = " +
                       std::to_string(0.9 * h));
  }

  const std::size_t n = rho0.n();
  const std::size_t g = rho0.g();
  std::vector<double> faces(g);
  for (std::size_t k = 0; k < g; ++k) faces[k] = static_cast<double>(k) * h;

  FvSolution out;
  out.times.push_back(0.0);
  out.fields.push_back(rho0);

  std::vector<double> rho(rho0.values().begin(), rho0.values().end());
  std::vector<double> next(n * g);
  std::vector<double> flux(g);
  for (std::size_t step = 0; step < steps; ++step) {
    const double ta = static_cast<double>(step) * options.dt;
    const double tb = step + 1 == steps ? options.horizon : static_cast<double>(step + 1) * options.dt;
    const double ratio = (tb - ta) / h;

    const DensityField current(n, g, rho);
    const std::vector<double> v = fv_velocity(spec, current, faces);
    for (double vf : v) {
      if (std::abs(vf) > 1.0 + 1e-9) throw std::logic_error("solve_fv: |V| exceeds 1");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double* r = rho.data() + i * g;
      const double* vi = v.data() + i * g;
      // face k separates cell k-1 (left) and cell k (right)
      for (std::size_t k = 0; k < g; ++k) {
        const double upwind = vi[k] >= 0.0 ? r[(k + g - 1) % g] : r[k];
        flux[k] = vi[k] * upwind;
      }
      for (std::size_t k = 0; k < g; ++k) {
        next[i * g + k] = r[k] - ratio * (flux[(k + 1) % g] - flux[k]);
      }
    }
    rho.swap(next);
    for (double value : rho) {
      if (!std::isfinite(value)) throw IntegrationError("solve_fv: non-finite density", step);
    }
    if ((step + 1) % options.record_every == 0 || step + 1 == steps) {
      out.times.push_back(tb);
      out.fields.emplace_back(n, g, rho);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weak form

double weak_residual(const FvSolution& solution, const VelocityFieldSpec& spec,
                     std::span<const TestFunction> tests) {
  if (solution.fields.empty()) throw std::invalid_argument("weak_residual: empty solution");
  if (solution.times.size() != solution.fields.size()) {
    throw DimensionMismatch("weak_residual: times", solution.fields.size(), solution.times.size());
  }
  const DensityField& first = solution.fields.front();
  const std::size_t n = first.n();
  const std::size_t g = first.g();
  const double h = first.du();
  const std::size_t levels = solution.times.size();
  std::vector<double> centers(g);
  for (std::size_t k = 0; k < g; ++k) centers[k] = first.u_center(k);

  std::vector<std::vector<double>> velocities;
  velocities.reserve(levels);
  for (const auto& field : solution.fields) velocities.push_back(fv_velocity(spec, field, centers));

  double worst = 0.0;
  for (const TestFunction& w : tests) {
    for (std::size_t i = 0; i < n; ++i) {
      double space_time = 0.0;
      for (std::size_t s = 0; s < levels; ++s) {
        const double t = solution.times[s];
        const DensityField& rho = solution.fields[s];
        double inner = 0.0;
        for (std::size_t k = 0; k < g; ++k) {
          inner += rho(i, k) * (w.dt(t, centers[k]) + velocities[s][i * g + k] * w.du(t, centers[k]));
        }
        inner *= h;
        double weight = 0.0;
        if (s > 0) weight += 0.5 * (solution.times[s] - solution.times[s - 1]);
        if (s + 1 < levels) weight += 0.5 * (solution.times[s + 1] - solution.times[s]);
        space_time += weight * inner;
      }
      const double t_end = solution.times.back();
      const DensityField& last = solution.fields.back();
      double initial = 0.0, terminal = 0.0;
      for (std::size_t k = 0; k < g; ++k) {
        initial += w.value(solution.times.front(), centers[k]) * first(i, k);
        terminal += w.value(t_end, centers[k]) * last(i, k);
      }
      worst = std::max(worst, std::abs(space_time + h * initial - h * terminal));
    }
  }
  return worst;
}

}  // namespace gkm
