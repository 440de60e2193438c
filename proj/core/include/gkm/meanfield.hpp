#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gkm/dynamics.hpp"
#include "gkm/graphon.hpp"
#include "gkm/initial_density.hpp"
#include "gkm/measure.hpp"

namespace gkm {

/// Velocity field V[W_n, mu](u, x) induced by a step graphon and coupling D.
/// Intrinsic frequencies are zero throughout the mean-field solvers.
struct VelocityFieldSpec {
  StepGraphon weights;
  CouplingFunction coupling;

  std::size_t n() const noexcept { return weights.n(); }
};

/// n^-1 sum_i W_{n,cell,i} int D(v - u) dmu^i(v), summed exactly over atoms.
///
/// Throws std::out_of_range for a bad cell and std::logic_error if |V| > 1,
/// which would mean the |W| <= 1, |D| <= 1 invariants were broken upstream.
double velocity(const VelocityFieldSpec& spec, const MeasureFamily& family, double u,
                std::size_t cell);

/// N = n*m particles, cell-major, each of mass 1/m within its cell.
struct ParticleEnsemble {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> phases;

  std::size_t size() const noexcept { return phases.size(); }
  MeasureFamily family() const { return empirical_from_phases(phases, n, m); }
  /// Requires every cell to hold the same number of equal-mass atoms.
  static ParticleEnsemble from_family(const MeasureFamily& family);
};

/// The N-oscillator system whose empirical measures solve the fixed point
/// equation for W_n: block weights W_{n,ki}, K = 1, omega = 0.
OscillatorSystem particle_system(const VelocityFieldSpec& spec, std::size_t m);

struct ParticleOptions {
  double horizon = 1.0;
  double dt = 1e-2;
  std::size_t record_every = 1;
  InitMode mode = InitMode::quantile;
  std::uint64_t seed = 0;
};

struct ParticleSolution {
  MeasureTrajectory measures;
  Trajectory phases;
};

/// Integrates the particle system from initial_family(rho0, n, m, mode) with RK4.
ParticleSolution solve_particles(const VelocityFieldSpec& spec, const InitialDensity& rho0,
                                 std::size_t m, const ParticleOptions& options);

/// Same, starting from a given equal-mass family.
ParticleSolution solve_particles(const VelocityFieldSpec& spec, const MeasureFamily& initial,
                                 const ParticleOptions& options);

}  // namespace gkm
