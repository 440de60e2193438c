#include "gkm/meanfield.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gkm/error.hpp"

namespace gkm {

double velocity(const VelocityFieldSpec& spec, const MeasureFamily& family, double u,
                std::size_t cell) {
  const std::size_t n = spec.n();
  if (family.n_cells() != n) throw DimensionMismatch("velocity: family cells", n, family.n_cells());
  if (cell >= n) throw std::out_of_range("velocity: cell index " + std::to_string(cell));
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = spec.weights(cell, i);
    if (w == 0.0) continue;
    double inner = 0.0;
    for (const Atom& a : family.cell(i).atoms()) inner += a.mass * spec.coupling(a.position - u);
    acc += w * inner;
  }
  const double v = acc / static_cast<double>(n);
  if (std::abs(v) > 1.0 + 1e-12) throw std::logic_error("velocity: |V| exceeds 1");
  return v;
}

ParticleEnsemble ParticleEnsemble::from_family(const MeasureFamily& family) {
  ParticleEnsemble e;
  e.n = family.n_cells();
  e.m = family.cell(0).size();
  const double mass = 1.0 / static_cast<double>(e.m);
  e.phases.reserve(e.n * e.m);
  for (const auto& c : family.cells()) {
    if (c.size() != e.m) throw DimensionMismatch("ParticleEnsemble: atoms per cell", e.m, c.size());
    for (const Atom& a : c.atoms()) {
      if (std::abs(a.mass - mass) > 1e-12) {
        throw std::invalid_argument("ParticleEnsemble: atoms must carry equal mass 1/m");
      }
      e.phases.push_back(a.position);
    }
  }
  return e;
}

OscillatorSystem particle_system(const VelocityFieldSpec& spec, std::size_t m) {
  if (m == 0) throw std::invalid_argument("particle_system: m must be positive");
  return OscillatorSystem(BlockWeights{spec.weights, m}, spec.coupling, 1.0);
}

ParticleSolution solve_particles(const VelocityFieldSpec& spec, const MeasureFamily& initial,
                                 const ParticleOptions& options) {
  const ParticleEnsemble ensemble = ParticleEnsemble::from_family(initial);
  if (ensemble.n != spec.n()) throw DimensionMismatch("solve_particles: cells", spec.n(), ensemble.n);
  const OscillatorSystem sys = particle_system(spec, ensemble.m);

  ParticleSolution out;
  out.phases = integrate(sys, PhaseState{0.0, ensemble.phases}, options.horizon, options.dt,
                         options.record_every);
  out.measures.times.reserve(out.phases.size());
  out.measures.families.reserve(out.phases.size());
  for (std::size_t k = 0; k < out.phases.size(); ++k) {
    out.measures.times.push_back(out.phases.states[k].time);
    out.measures.families.push_back(
        empirical_from_phases(out.phases.states[k].phases, ensemble.n, ensemble.m));
  }
  return out;
}

ParticleSolution solve_particles(const VelocityFieldSpec& spec, const InitialDensity& rho0,
                                 std::size_t m, const ParticleOptions& options) {
  return solve_particles(spec, initial_family(rho0, spec.n(), m, options.mode, options.seed),
                         options);
}

}  // namespace gkm
