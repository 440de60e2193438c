#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "band_quadrature.hpp"
#include "gkm/error.hpp"
#include "gkm/graphon.hpp"
#include "gkm/rng.hpp"

using namespace gkm;

namespace {

std::vector<Graphon> builtins() {
  SquareMatrix m(3);
  const double vals[3][3] = {{0.2, -0.4, 1.0}, {-0.4, 0.0, 0.5}, {1.0, 0.5, -1.0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = vals[i][j];
  return {Graphon::constant(0.5), Graphon::small_world(0.1, 0.25), Graphon::nearest_neighbor(0.2),
          Graphon::step(StepGraphon(m)),
          Graphon::custom([](double x, double y) { return 0.5 * std::cos(6.0 * (x - y)); }, "cosine")};
}

// Exact cell average of 0.5 cos(a(x - y)) over [x0,x0+s] x [y0,y0+s].
double cosine_cell(double a, double x0, double y0, double s) {
  const double cx = (std::sin(a * (x0 + s)) - std::sin(a * x0)) / a;
  const double sx = (-std::cos(a * (x0 + s)) + std::cos(a * x0)) / a;
  const double cy = (std::sin(a * (y0 + s)) - std::sin(a * y0)) / a;
  const double sy = (-std::cos(a * (y0 + s)) + std::cos(a * y0)) / a;
  return 0.5 * (cx * cy + sx * sy) / (s * s);
}

}  // namespace

TEST(GraphonEval, ConstantIsConstant) { EXPECT_DOUBLE_EQ(Graphon::constant(0.5).eval(0.3, 0.7), 0.5); }

TEST(GraphonEval, SmallWorldInsideBand) {
  EXPECT_DOUBLE_EQ(Graphon::small_world(0.1, 0.25).eval(0.0, 0.2), 0.9);
  EXPECT_DOUBLE_EQ(Graphon::small_world(0.1, 0.25).eval(0.0, 0.5), 0.1);
  // wraps around the circle
  EXPECT_DOUBLE_EQ(Graphon::small_world(0.1, 0.25).eval(0.05, 0.95), 0.9);
}

TEST(GraphonEval, NearestNeighborIsBandIndicator) {
  const Graphon w = Graphon::nearest_neighbor(0.25);
  SplitMix64 rng(7);
  for (int k = 0; k < 1000; ++k) {
    const double x = rng.uniform(), y = rng.uniform();
    const double d = std::min(std::abs(x - y), 1.0 - std::abs(x - y));
    EXPECT_EQ(w.eval(x, y), d <= 0.25 ? 1.0 : 0.0);
  }
}

TEST(GraphonEval, SymmetricForEveryKind) {
  SplitMix64 rng(11);
  for (const Graphon& w : builtins()) {
    for (int k = 0; k < 1000; ++k) {
      const double x = rng.uniform(), y = rng.uniform();
      EXPECT_EQ(w.eval(x, y), w.eval(y, x)) << w.label();
      EXPECT_LE(std::abs(w.eval(x, y)), 1.0);
    }
  }
}

TEST(GraphonConstruction, RejectsOutOfRangeParameters) {
  EXPECT_THROW(Graphon::constant(1.5), std::invalid_argument);
  EXPECT_THROW(Graphon::small_world(0.5, 0.25), std::invalid_argument);
  EXPECT_THROW(Graphon::small_world(0.1, 0.0), std::invalid_argument);
  EXPECT_THROW(Graphon::small_world(0.0, 0.1), std::invalid_argument);
  EXPECT_THROW(Graphon::nearest_neighbor(0.6), std::invalid_argument);
  EXPECT_THROW(Graphon::custom(nullptr), std::invalid_argument);
}

TEST(StepGraphon, ValidatesSymmetryAndBound) {
  SquareMatrix a(2, 0.0);
  a(0, 1) = 0.3;
  EXPECT_THROW(StepGraphon{a}, std::invalid_argument);
  SquareMatrix b(2, 1.5);
  EXPECT_THROW(StepGraphon{b}, std::invalid_argument);
}

TEST(StepGraphon, CellLookup) {
  EXPECT_EQ(StepGraphon::cell_of(0.0, 4), 0u);
  EXPECT_EQ(StepGraphon::cell_of(0.25, 4), 1u);
  EXPECT_EQ(StepGraphon::cell_of(1.0, 4), 3u);
}

TEST(CellAverage, ConstantKernel) {
  const StepGraphon s = cell_average(Graphon::constant(0.3), 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) EXPECT_DOUBLE_EQ(s(i, j), 0.3);
}

TEST(CellAverage, NearestNeighborDiagonalCell) {
  const StepGraphon s = cell_average(Graphon::nearest_neighbor(0.25), 4);
  EXPECT_NEAR(s(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(s(0, 0), oracle::band_fraction(0.0, 0.0, 0.25, 0.25), 1e-6);
}

TEST(CellAverage, SmallWorldMatchesQuadratureOracle) {
  const double p = 0.1, h = 0.25;
  const StepGraphon s = cell_average(Graphon::small_world(p, h), 8);
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      const double frac = oracle::band_fraction(i / 8.0, j / 8.0, 0.125, h, 4000);
      EXPECT_NEAR(s(i, j), p + (1.0 - 2.0 * p) * frac, 1e-6) << i << "," << j;
    }
  }
}

TEST(CellAverage, BandAreaAgainstOracleForOddGeometry) {
  // widths and offsets that do not align with the grid
  for (double h : {0.03, 0.17, 0.31, 0.49}) {
    for (std::size_t n : {3u, 7u}) {
      const StepGraphon s = cell_average(Graphon::nearest_neighbor(h), n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          EXPECT_NEAR(s(i, j), oracle::band_fraction(double(i) / n, double(j) / n, 1.0 / n, h, 4000), 1e-6);
    }
  }
}

TEST(CellAverage, CustomKernelConverges) {
  const double a = 6.0;
  const StepGraphon s = cell_average(Graphon::custom([a](double x, double y) { return 0.5 * std::cos(a * (x - y)); }), 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(s(i, j), cosine_cell(a, i / 4.0, j / 4.0, 0.25), 1e-8);
}

TEST(CellAverage, PathologicalKernelReportsTolerance) {
  // jump across an irrational diagonal defeats the extrapolation
  const Graphon w = Graphon::custom([](double x, double y) { return x + y < std::sqrt(0.5) ? 1.0 : 0.0; });
  QuadratureOptions opts;
  opts.max_subdivisions = 64;
  try {
    cell_average(w, 1, opts);
    FAIL() << "expected QuadratureError";
  } catch (const QuadratureError& e) {
    EXPECT_GT(e.achieved_tolerance(), opts.tolerance);
  }
}

TEST(CellAverage, StepGraphonAtOwnResolutionIsIdentity) {
  const StepGraphon s = cell_average(Graphon::small_world(0.2, 0.1), 6);
  EXPECT_EQ(cell_average(Graphon::step(s), 6), s);
}

TEST(CellAverage, StepGraphonCoarsensToBlockMeans) {
  SquareMatrix m(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = 0.1 * static_cast<double>(i + j);
  const StepGraphon c = cell_average(Graphon::step(StepGraphon(m)), 2);
  EXPECT_NEAR(c(0, 0), (0.0 + 0.1 + 0.1 + 0.2) / 4.0, 1e-15);
  EXPECT_NEAR(c(1, 0), (0.2 + 0.3 + 0.3 + 0.4) / 4.0, 1e-15);
  const StepGraphon f = cell_average(Graphon::step(StepGraphon(m)), 8);
  EXPECT_DOUBLE_EQ(f(7, 2), m(3, 1));
}

TEST(CellAverage, OutputSatisfiesStepInvariants) {
  for (const Graphon& w : builtins()) {
    const StepGraphon s = cell_average(w, 6);
    EXPECT_TRUE(s.values().is_symmetric(0.0)) << w.label();
    EXPECT_LE(s.values().max_abs(), 1.0);
  }
  EXPECT_THROW(cell_average(Graphon::constant(0.5), 0), std::invalid_argument);
}

TEST(MidpointSample, EvaluatesAtGridPoints) {
  const Graphon w = Graphon::small_world(0.1, 0.25);
  const StepGraphon s = midpoint_sample(w, 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(s(i, j), w.eval((i + 1) / 8.0, (j + 1) / 8.0));
}

TEST(KernelDistance, IdentityAndConstants) {
  for (const Graphon& w : builtins()) EXPECT_NEAR(kernel_distance(w, w, KernelNorm::L2, 16), 0.0, 1e-15);
  EXPECT_NEAR(kernel_distance(Graphon::constant(0.2), Graphon::constant(-0.3), KernelNorm::L1, 4), 0.5, 1e-15);
  EXPECT_NEAR(kernel_distance(Graphon::constant(0.2), Graphon::constant(-0.3), KernelNorm::L2, 4), 0.5, 1e-15);
}

TEST(KernelDistance, SmallWorldAgainstCellAverageMatchesOracle) {
  // ||W - W_n||_2^2 = sum over cells of area (1 - 2p)^2 f (1 - f), f the band fraction
  const double p = 0.1, h = 0.25;
  for (std::size_t n : {4u, 8u, 16u}) {
    const StepGraphon s = cell_average(Graphon::small_world(p, h), n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double f = oracle::band_fraction(double(i) / n, double(j) / n, 1.0 / n, h, 2000);
        acc += (1.0 - 2.0 * p) * (1.0 - 2.0 * p) * f * (1.0 - f) / double(n * n);
      }
    }
    EXPECT_NEAR(kernel_distance(Graphon::small_world(p, h), Graphon::step(s), KernelNorm::L2, 4 * n),
                std::sqrt(acc), 1e-6);
  }
}

TEST(KernelDistance, StrictlyDecreasingForSmallWorld) {
  const Graphon w = Graphon::small_world(0.1, 0.25);
  double prev = INFINITY;
  for (std::size_t n : {4u, 8u, 16u, 32u}) {
    const double d = kernel_distance(w, Graphon::step(cell_average(w, n)), KernelNorm::L2, 256);
    EXPECT_LT(d, prev) << n;
    prev = d;
  }
}

TEST(KernelDistance, NonIncreasingForBuiltins) {
  for (const Graphon& w : builtins()) {
    double prev = INFINITY;
    for (std::size_t n : {2u, 4u, 8u, 16u, 32u, 64u}) {
      const double d = kernel_distance(Graphon::step(cell_average(w, n)), w, KernelNorm::L2, 128);
      EXPECT_LE(d, prev + 1e-12) << w.label() << " n=" << n;
      prev = d;
    }
  }
}

TEST(StepNorm, Examples) {
  const StepGraphon a(SquareMatrix(1, 1.0)), b(SquareMatrix(1, 0.0));
  EXPECT_DOUBLE_EQ(step_norm_2n(a, a), 0.0);
  EXPECT_DOUBLE_EQ(step_norm_2n(a, b), 1.0);
  EXPECT_DOUBLE_EQ(step_norm_2n(StepGraphon(SquareMatrix(2, 1.0)), StepGraphon(SquareMatrix(2, 0.0))), 1.0);
  EXPECT_THROW(step_norm_2n(a, StepGraphon(SquareMatrix(2, 0.0))), DimensionMismatch);
}
