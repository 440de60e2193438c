#include "gkm/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gkm/error.hpp"
#include "gkm/graphon.hpp"

namespace gkm {

namespace {

double sup_dbar(const MeasureTrajectory& a, const MeasureTrajectory& b) {
  double worst = 0.0;
  for (double d : dbar_series(a, b)) worst = std::max(worst, d);
  return worst;
}

}  // namespace

StabilityResult initial_data_stability(const VelocityFieldSpec& spec, const MeasureFamily& mu0,
                                       const MeasureFamily& eta0, const ParticleOptions& options) {
  const ParticleSolution mu = solve_particles(spec, mu0, options);
  const ParticleSolution eta = solve_particles(spec, eta0, options);
  StabilityResult r;
  r.label = "initial_data";
  r.measured = sup_dbar(mu.measures, eta.measures);
  r.bound = std::exp(options.horizon) * dbar(mu0, eta0);
  r.pass = r.measured <= r.bound;
  return r;
}

StabilityResult kernel_stability(const VelocityFieldSpec& w, const VelocityFieldSpec& u,
                                 const MeasureFamily& mu0, double kernel_l1,
                                 const ParticleOptions& options) {
  if (w.n() != u.n()) throw DimensionMismatch("kernel_stability: kernel cells", w.n(), u.n());
  if (!(kernel_l1 >= 0.0)) throw std::invalid_argument("kernel_stability: L1 distance must be >= 0");
  const ParticleSolution mu = solve_particles(w, mu0, options);
  const ParticleSolution nu = solve_particles(u, mu0, options);
  StabilityResult r;
  r.label = "kernel";
  r.measured = sup_dbar(mu.measures, nu.measures);
  r.bound = std::exp(2.0 * options.horizon) * kernel_l1;
  r.pass = r.measured <= r.bound;
  return r;
}

bool StabilityReport::all_pass() const noexcept {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
}

StabilityReport stability_experiments(const StabilityConfig& config) {
  StabilityReport report;
  if (config.perturbed_initial) {
    report.results.push_back(
        initial_data_stability(config.spec, config.initial, *config.perturbed_initial, config.options));
  }
  if (config.alternative) {
    const double l1 = config.kernel_l1
                          ? *config.kernel_l1
                          : kernel_distance(Graphon::step(config.spec.weights),
                                            Graphon::step(config.alternative->weights), KernelNorm::L1,
                                            std::lcm(config.spec.n(), config.alternative->n()));
    report.results.push_back(
        kernel_stability(config.spec, *config.alternative, config.initial, l1, config.options));
  }
  if (report.results.empty()) {
    throw std::invalid_argument("stability_experiments: nothing to compare");
  }
  return report;
}

double gronwall_bound(double A, double B, const std::function<double(double)>& a, double C,
                      double t, std::size_t intervals) {
  if (!(t >= 0.0)) throw std::invalid_argument("gronwall_bound: t must be >= 0");
  if (intervals == 0 || intervals % 2 != 0) {
    throw std::invalid_argument("gronwall_bound: intervals must be positive and even");
  }
  const double h = t / static_cast<double>(intervals);
  double integral = 0.0;
  if (t > 0.0) {
    for (std::size_t k = 0; k <= intervals; ++k) {
      const double s = static_cast<double>(k) * h;
      const double f = a(s) * std::exp(-A * s);
      const double weight = (k == 0 || k == intervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
      integral += weight * f;
    }
    integral *= h / 3.0;
  }
  return std::exp(A * t) * (B * integral + C);
}

}  // namespace gkm
