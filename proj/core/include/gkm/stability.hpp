#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gkm/meanfield.hpp"

namespace gkm {

struct StabilityResult {
  std::string label;
  double measured = 0.0;  // sup_t dbar between the two solutions
  double bound = 0.0;
  bool pass = false;
};

/// sup_t dbar(mu_t, eta_t) <= e^T dbar(mu_0, eta_0) for two initial families.
StabilityResult initial_data_stability(const VelocityFieldSpec& spec, const MeasureFamily& mu0,
                                       const MeasureFamily& eta0, const ParticleOptions& options);

/// sup_t dbar(mu_t, nu_t) <= e^{2T} * kernel_l1 for kernels W and U, same initial family.
StabilityResult kernel_stability(const VelocityFieldSpec& w, const VelocityFieldSpec& u,
                                 const MeasureFamily& mu0, double kernel_l1,
                                 const ParticleOptions& options);

struct StabilityConfig {
  VelocityFieldSpec spec;
  MeasureFamily initial;
  /// Initial-data experiment when present.
  std::optional<MeasureFamily> perturbed_initial;
  /// Kernel experiment when present.
  std::optional<VelocityFieldSpec> alternative;
  /// ||W - U||_L1; defaults to the exact distance between the step graphons.
  std::optional<double> kernel_l1;
  ParticleOptions options;
};

struct StabilityReport {
  std::vector<StabilityResult> results;

  bool all_pass() const noexcept;
};

StabilityReport stability_experiments(const StabilityConfig& config);

/// Right side of the Gronwall conclusion e^{At}(B int_0^t a(s) e^{-As} ds + C),
/// with the integral by composite Simpson on `intervals` (even) subintervals.
double gronwall_bound(double A, double B, const std::function<double(double)>& a, double C,
                      double t, std::size_t intervals = 1024);

}  // namespace gkm
