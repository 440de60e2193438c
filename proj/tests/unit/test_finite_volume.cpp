#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "gkm/circle.hpp"
#include "gkm/error.hpp"
#include "gkm/finite_volume.hpp"
#include "gkm/graphon.hpp"
#include "gkm/initial_density.hpp"
#include "gkm/meanfield.hpp"
#include "gkm/measure.hpp"

using namespace gkm;

namespace {

VelocityFieldSpec er_spec(std::size_t n) { return {cell_average(Graphon::constant(0.5), n), CouplingFunction::sine()}; }

VelocityFieldSpec small_world_spec(std::size_t n) {
  return {cell_average(Graphon::small_world(0.2, 0.25), n), CouplingFunction::sine_shift(0.3)};
}

std::vector<TestFunction> smooth_tests() {
  return {
      {[](double t, double u) { return (1.0 + t) * std::cos(u); }, [](double, double u) { return std::cos(u); },
       [](double t, double u) { return -(1.0 + t) * std::sin(u); }},
      {[](double t, double u) { return std::sin(t) * std::sin(2.0 * u); },
       [](double t, double u) { return std::cos(t) * std::sin(2.0 * u); },
       [](double t, double u) { return 2.0 * std::sin(t) * std::cos(2.0 * u); }},
      {[](double t, double u) { return t * (1.0 + std::cos(u - 1.0)); },
       [](double, double u) { return 1.0 + std::cos(u - 1.0); },
       [](double t, double u) { return -t * std::sin(u - 1.0); }},
  };
}

}  // namespace

TEST(DensityField, Validation) {
  EXPECT_THROW(DensityField(1, 4, std::vector<double>(3, 1.0)), DimensionMismatch);
  const double uniform = 1.0 / kTwoPi;
  EXPECT_NO_THROW(DensityField(1, 4, std::vector<double>(4, uniform)));
  EXPECT_THROW(DensityField(1, 4, std::vector<double>(4, 2.0 * uniform)), std::invalid_argument);
  EXPECT_THROW(DensityField(1, 2, {2.0 * uniform + 0.5, -0.5}), std::invalid_argument);
  EXPECT_THROW(DensityField(0, 4, {}), std::invalid_argument);
}

TEST(DensityField, Geometry) {
  const DensityField f(1, 8, std::vector<double>(8, 1.0 / kTwoPi));
  EXPECT_NEAR(f.du(), kPi / 4.0, 1e-15);
  EXPECT_NEAR(f.u_center(0), kPi / 8.0, 1e-15);
  EXPECT_NEAR(f.cell_mass(0), 1.0, 1e-15);
}

TEST(DiscretizeDensity, CellAveragesNormalized) {
  const DensityField f = discretize_density(InitialDensity::von_mises(3.0, 1.0, 0.4), 5, 200);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(f.cell_mass(i), 1.0, 1e-12);
  const InitialDensity d = InitialDensity::von_mises(3.0, 1.0, 0.4);
  for (std::size_t k = 0; k < 200; k += 17) {
    EXPECT_NEAR(f(2, k), d.pdf(f.u_center(k), cell_representative(2, 5)), 1e-3);
  }
}

TEST(DensityField, QuantileFamilyOfUniform) {
  const DensityField f = discretize_density(InitialDensity::uniform(), 2, 16);
  const MeasureFamily q = f.quantile_family(4);
  ASSERT_EQ(q.n_cells(), 2u);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(q.cell(1).atoms()[k].position, (2.0 * k + 1.0) * kPi / 4.0, 1e-12);
  EXPECT_THROW(f.quantile_family(0), std::invalid_argument);
}

TEST(DensityField, QuantileFamilyMatchesInitialFamily) {
  const InitialDensity d = InitialDensity::two_cluster(1.0, 4.0, 0.3, 4.0);
  const MeasureFamily fv = discretize_density(d, 2, 2048).quantile_family(64);
  const MeasureFamily direct = initial_family(d, 2, 64, InitMode::quantile);
  EXPECT_LT(dbar(fv, direct), 1e-3);
}

TEST(SolveFv, UniformIsStationary) {
  const DensityField rho0 = discretize_density(InitialDensity::uniform(), 4, 64);
  const FvSolution sol = solve_fv(small_world_spec(4), rho0, FvOptions{1.0, 0.05, 1});
  for (const DensityField& f : sol.fields) {
    for (std::size_t j = 0; j < f.values().size(); ++j) EXPECT_NEAR(f.values()[j], rho0.values()[j], 1e-10);
  }
}

TEST(SolveFv, MassConservedOverManySteps) {
  const DensityField rho0 = discretize_density(InitialDensity::two_cluster(0.5, 3.0, 0.4, 5.0, 0.3), 3, 128);
  const FvSolution sol = solve_fv(small_world_spec(3), rho0, FvOptions{10.0, 0.01, 100});
  ASSERT_NEAR(sol.times.back(), 10.0, 1e-12);
  for (const DensityField& f : sol.fields) {
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(f.cell_mass(i), 1.0, 1e-12);
    for (double v : f.values()) EXPECT_GE(v, 0.0);
  }
}

TEST(SolveFv, RecordsAndLandsOnHorizon) {
  const DensityField rho0 = discretize_density(InitialDensity::von_mises(1.0, 0.0), 2, 32);
  const FvSolution sol = solve_fv(er_spec(2), rho0, FvOptions{0.35, 0.1, 2});
  ASSERT_EQ(sol.times.size(), 3u);  // t = 0, 0.2 and the final 0.35
  EXPECT_NEAR(sol.times[1], 0.2, 1e-12);
  EXPECT_DOUBLE_EQ(sol.times[2], 0.35);
}

TEST(SolveFv, CflViolation) {
  const DensityField rho0 = discretize_density(InitialDensity::uniform(), 1, 64);
  EXPECT_THROW(solve_fv(er_spec(1), rho0, FvOptions{1.0, 0.1, 1}), CflViolation);
  EXPECT_NO_THROW(solve_fv(er_spec(1), rho0, FvOptions{0.1, 0.9 * rho0.du(), 1}));
  EXPECT_THROW(solve_fv(er_spec(2), rho0, FvOptions{0.1, 0.01, 1}), DimensionMismatch);
}

TEST(FvVelocity, MatchesAtomicVelocity) {
  const VelocityFieldSpec spec = small_world_spec(3);
  const InitialDensity d = InitialDensity::von_mises(2.0, 0.5, 0.2);
  const DensityField rho = discretize_density(d, 3, 1024);
  const MeasureFamily atoms = rho.quantile_family(4096);
  const std::vector<double> u{0.0, 1.0, 3.0, 5.5};
  const std::vector<double> v = fv_velocity(spec, rho, u);
  ASSERT_EQ(v.size(), 12u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(v[i * 4 + k], velocity(spec, atoms, u[k], i), 1e-4);
}

TEST(FvVelocity, CustomCouplingMatchesSinusoidal) {
  const StepGraphon w = cell_average(Graphon::small_world(0.2, 0.25), 3);
  const VelocityFieldSpec sine{w, CouplingFunction::sine()};
  const VelocityFieldSpec custom{w, CouplingFunction::custom([](double u) { return std::sin(u); }, 1.0)};
  const DensityField rho = discretize_density(InitialDensity::von_mises(2.0, 0.5), 3, 64);
  std::vector<double> u;
  for (std::size_t k = 0; k < 64; ++k) u.push_back(rho.u_center(k));
  const auto a = fv_velocity(sine, rho, u);
  const auto b = fv_velocity(custom, rho, u);
  for (std::size_t j = 0; j < a.size(); ++j) EXPECT_NEAR(a[j], b[j], 1e-13);
}

TEST(WeakResidual, UniformSolution) {
  const DensityField rho0 = discretize_density(InitialDensity::uniform(), 2, 64);
  const VelocityFieldSpec spec = er_spec(2);
  const FvSolution sol = solve_fv(spec, rho0, FvOptions{1.0, 0.05, 1});
  EXPECT_LT(weak_residual(sol, spec, smooth_tests()), 1e-8);
}

TEST(WeakResidual, ZeroTestFunction) {
  const DensityField rho0 = discretize_density(InitialDensity::von_mises(2.0, 0.0), 2, 64);
  const VelocityFieldSpec spec = er_spec(2);
  const FvSolution sol = solve_fv(spec, rho0, FvOptions{1.0, 0.05, 1});
  const auto zero = [](double, double) { return 0.0; };
  const std::vector<TestFunction> tests{{zero, zero, zero}};
  EXPECT_EQ(weak_residual(sol, spec, tests), 0.0);
}

TEST(WeakResidual, DecreasesUnderRefinement) {
  const VelocityFieldSpec spec = er_spec(2);
  const InitialDensity d = InitialDensity::von_mises(2.0, 0.0, 0.25);
  const auto tests = smooth_tests();
  double previous = 0.0;
  for (std::size_t level = 0; level < 3; ++level) {
    const std::size_t g = 64u << level;
    const double dt = 0.05 / static_cast<double>(1u << level);
    const double r = weak_residual(solve_fv(spec, discretize_density(d, 2, g), FvOptions{1.0, dt, 1}), spec, tests);
    if (level > 0) EXPECT_GE(previous / r, 1.5) << "g=" << g;
    previous = r;
  }
}

TEST(CrossMethod, FvAgreesWithParticles) {
  const VelocityFieldSpec spec = er_spec(4);
  const InitialDensity d = InitialDensity::von_mises(2.0, 0.0);
  const FvSolution fv = solve_fv(spec, discretize_density(d, 4, 256), FvOptions{1.0, 0.01, 100});
  const ParticleSolution p = solve_particles(spec, d, 256, ParticleOptions{1.0, 0.01, 100});
  EXPECT_LT(dbar(fv.fields.back().quantile_family(256), p.measures.families.back()), 0.05);
}
