#include "gkm/initial_density.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "gkm/circle.hpp"
#include "gkm/rng.hpp"

namespace gkm {

namespace {

// Unnormalized von Mises density; normalization happens in the CDF table.
double von_mises_kernel(double u, double center, double kappa) {
  return std::exp(kappa * (std::cos(u - center) - 1.0));
}

double von_mises_pdf(double u, double center, double kappa) {
  if (kappa == 0.0) return 1.0 / kTwoPi;
  // exp(-kappa) I0(kappa) stays finite for large kappa where I0 alone overflows
  const double scaled_i0 = std::cyl_bessel_i(0.0, kappa) * std::exp(-kappa);
  return von_mises_kernel(u, center, kappa) / (kTwoPi * scaled_i0);
}

}  // namespace

InitialDensity InitialDensity::von_mises(double kappa, double mean, double twist) {
  InitialDensity d;
  d.kind = Kind::von_mises;
  d.kappa = kappa;
  d.mean = mean;
  d.twist = twist;
  d.validate();
  return d;
}

InitialDensity InitialDensity::two_cluster(double theta1, double theta2, double weight,
                                           double kappa, double twist) {
  InitialDensity d;
  d.kind = Kind::two_cluster;
  d.theta1 = theta1;
  d.theta2 = theta2;
  d.weight = weight;
  d.kappa = kappa;
  d.twist = twist;
  d.validate();
  return d;
}

void InitialDensity::validate() const {
  const bool finite = std::isfinite(kappa) && std::isfinite(mean) && std::isfinite(theta1) &&
                      std::isfinite(theta2) && std::isfinite(weight) && std::isfinite(twist);
  if (!finite) throw std::invalid_argument("initial density: parameters must be finite");
  if (kappa < 0.0) throw std::invalid_argument("initial density: kappa must be >= 0");
  if (kappa > 500.0) throw std::invalid_argument("initial density: kappa must be <= 500");
  if (weight < 0.0 || weight > 1.0) {
    throw std::invalid_argument("initial density: cluster weight must lie in [0,1]");
  }
}

double InitialDensity::pdf(double u, double x) const {
  const double rot = kTwoPi * twist * x;
  switch (kind) {
    case Kind::uniform:
      return 1.0 / kTwoPi;
    case Kind::von_mises:
      return von_mises_pdf(u, mean + rot, kappa);
    case Kind::two_cluster:
      return weight * von_mises_pdf(u, theta1 + rot, kappa) +
             (1.0 - weight) * von_mises_pdf(u, theta2 + rot, kappa);
  }
  return 0.0;
}

ConditionalCdf::ConditionalCdf(const InitialDensity& density, double x, std::size_t grid)
    : step_(kTwoPi / static_cast<double>(grid)), table_(grid + 1, 0.0) {
  density.validate();
  if (grid < 2) throw std::invalid_argument("ConditionalCdf: grid too small");
  // Composite Simpson on each grid interval.
  double prev = density.pdf(0.0, x);
  for (std::size_t k = 0; k < grid; ++k) {
    const double a = static_cast<double>(k) * step_;
    const double mid = density.pdf(a + 0.5 * step_, x);
    const double next = density.pdf(a + step_, x);
    table_[k + 1] = table_[k] + step_ / 6.0 * (prev + 4.0 * mid + next);
    prev = next;
  }
  const double total = table_.back();
  for (double& v : table_) v /= total;
  table_.back() = 1.0;
}

double ConditionalCdf::cdf(double u) const {
  if (u <= 0.0) return 0.0;
  if (u >= kTwoPi) return 1.0;
  const double pos = u / step_;
  const auto k = std::min(static_cast<std::size_t>(pos), table_.size() - 2);
  const double frac = pos - static_cast<double>(k);
  return table_[k] + frac * (table_[k + 1] - table_[k]);
}

double ConditionalCdf::quantile(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile: q must lie in [0,1]");
  auto it = std::lower_bound(table_.begin(), table_.end(), q);
  if (it == table_.begin()) return 0.0;
  const auto k = static_cast<std::size_t>(it - table_.begin()) - 1;
  const double lo = table_[k], hi = table_[k + 1];
  const double frac = hi > lo ? (q - lo) / (hi - lo) : 0.0;
  return std::min((static_cast<double>(k) + frac) * step_, std::nextafter(kTwoPi, 0.0));
}

std::vector<double> initial_phases(const InitialDensity& density, std::size_t n, std::size_t m,
                                   InitMode mode, std::uint64_t seed) {
  if (n == 0 || m == 0) throw std::invalid_argument("initial_phases: n and m must be positive");
  density.validate();
  std::vector<double> out(n * m);
  // rho0 without twist is the same for every cell; tabulate it once.
  std::optional<ConditionalCdf> shared;
  if (density.twist == 0.0) shared.emplace(density, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<ConditionalCdf> local;
    const ConditionalCdf& cdf =
        shared ? *shared : local.emplace(density, cell_representative(i, n));
    if (mode == InitMode::quantile) {
      for (std::size_t k = 0; k < m; ++k) {
        out[i * m + k] = cdf.quantile((static_cast<double>(k) + 0.5) / static_cast<double>(m));
      }
    } else {
      SplitMix64 rng(counter_hash(seed, i, 0x1d));
      for (std::size_t k = 0; k < m; ++k) out[i * m + k] = cdf.quantile(rng.uniform());
    }
  }
  return out;
}

MeasureFamily initial_family(const InitialDensity& density, std::size_t n, std::size_t m,
                             InitMode mode, std::uint64_t seed) {
  return empirical_from_phases(initial_phases(density, n, m, mode, seed), n, m);
}

}  // namespace gkm
