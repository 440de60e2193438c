#include <gtest/gtest.h>

#include <cmath>

#include "gkm/error.hpp"
#include "gkm/graph.hpp"
#include "gkm/graphon.hpp"

using namespace gkm;

TEST(DeterministicGraph, ConstantWeights) {
  const WeightedGraph g = deterministic_graph(Graphon::constant(0.5), 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(g.weight(i, j), 0.5);
  EXPECT_EQ(g.provenance(), Provenance::deterministic());
}

TEST(DeterministicGraph, NearestNeighborDiagonal) {
  EXPECT_NEAR(deterministic_graph(Graphon::nearest_neighbor(0.25), 4).weight(0, 0), 1.0, 1e-15);
}

TEST(DeterministicGraph, EqualsCellAverage) {
  const Graphon w = Graphon::small_world(0.2, 0.15);
  const WeightedGraph g = deterministic_graph(w, 12);
  EXPECT_EQ(g.weights(), cell_average(w, 12).values());
  EXPECT_TRUE(g.weights().is_symmetric(0.0));
}

TEST(DeterministicGraph, EdgesAreNonzeroWeights) {
  const WeightedGraph g = deterministic_graph(Graphon::nearest_neighbor(0.1), 20);
  EXPECT_TRUE(g.has_edge(0, 0));
  EXPECT_TRUE(g.has_edge(0, 19));
  EXPECT_FALSE(g.has_edge(0, 10));
}

TEST(DeterministicGraph, CapacityLimit) {
  EXPECT_THROW(deterministic_graph(Graphon::constant(0.5), WeightedGraph::kMaxNodes + 1), CapacityError);
  EXPECT_NO_THROW(check_node_capacity(WeightedGraph::kMaxNodes));
  EXPECT_THROW(deterministic_graph(Graphon::constant(0.5), 0), std::invalid_argument);
}

TEST(SampleGraph, CompleteAndEmpty) {
  const WeightedGraph full = sample_w_random(Graphon::constant(1.0), 5, 3);
  const WeightedGraph none = sample_w_random(Graphon::constant(0.0), 5, 3);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      EXPECT_EQ(full.weight(i, j), 1.0);
      EXPECT_EQ(none.weight(i, j), 0.0);
    }
  }
  EXPECT_EQ(full.provenance(), Provenance::sampled(3));
}

TEST(SampleGraph, EdgeDensityConcentrates) {
  const double sigma = std::sqrt(0.25 / (1000.0 * 999.0 / 2.0));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const WeightedGraph g = sample_w_random(Graphon::constant(0.5), 1000, seed);
    EXPECT_NEAR(g.off_diagonal_density(), 0.5, 3.0 * sigma) << seed;
  }
}

TEST(SampleGraph, RejectsNegativeProbabilities) {
  EXPECT_THROW(sample_w_random(Graphon::constant(-0.2), 4, 1), std::invalid_argument);
}

TEST(SampleGraph, SymmetricBinaryAndReproducible) {
  const Graphon w = Graphon::small_world(0.3, 0.2);
  const WeightedGraph a = sample_w_random(w, 40, 99);
  const WeightedGraph b = sample_w_random(w, 40, 99);
  EXPECT_EQ(a.weights(), b.weights());
  EXPECT_TRUE(a.weights().is_symmetric(0.0));
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < 40; ++j) EXPECT_TRUE(a.weight(i, j) == 0.0 || a.weight(i, j) == 1.0);
  EXPECT_NE(a.weights(), sample_w_random(w, 40, 100).weights());
}

TEST(SampleGraph, DifferentSeedsDiffer) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_NE(sample_w_random(Graphon::constant(0.5), 10, seed).weights(),
              sample_w_random(Graphon::constant(0.5), 10, seed + 1).weights());
  }
}

TEST(SampleGraph, EntryMeansWithinFourStandardErrors) {
  const StepGraphon p = cell_average(Graphon::small_world(0.1, 0.3), 5);
  const int seeds = 10000;
  SquareMatrix sum(5, 0.0);
  for (int s = 0; s < seeds; ++s) {
    const WeightedGraph g = sample_w_random(p, static_cast<std::uint64_t>(s));
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) sum(i, j) += g.weight(i, j);
  }
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      const double pij = p(i, j);
      const double se = std::sqrt(pij * (1.0 - pij) / seeds);
      EXPECT_NEAR(sum(i, j) / seeds, pij, 4.0 * se + 1e-12) << i << "," << j;
    }
  }
}

TEST(WeightedGraph, ValidatesInvariants) {
  SquareMatrix a(2, 0.0);
  a(0, 1) = 1.0;
  EXPECT_THROW(WeightedGraph(a, Provenance::deterministic()), std::invalid_argument);
  SquareMatrix half(2, 0.5);
  EXPECT_THROW(WeightedGraph(half, Provenance::sampled(1)), std::invalid_argument);
}

TEST(PixelPicture, CompleteIsBlackEmptyIsWhite) {
  const GrayImage black = pixel_picture(sample_w_random(Graphon::constant(1.0), 6, 0));
  const GrayImage white = pixel_picture(sample_w_random(Graphon::constant(0.0), 6, 0));
  for (std::size_t k = 0; k < 36; ++k) {
    EXPECT_EQ(black.pixels[k], 0);
    EXPECT_EQ(white.pixels[k], 255);
  }
}

TEST(PixelPicture, NearestNeighborBand) {
  const GrayImage img = pixel_picture(deterministic_graph(Graphon::nearest_neighbor(0.25), 64));
  ASSERT_EQ(img.width, 64u);
  for (std::size_t i = 0; i < 64; ++i) {
    for (std::size_t j = 0; j < 64; ++j) {
      const std::size_t d = std::min<std::size_t>(i > j ? i - j : j - i, 64 - (i > j ? i - j : j - i));
      if (d < 16) {
        EXPECT_EQ(img.at(i, j), 0) << i << "," << j;
      } else if (d == 16) {
        EXPECT_EQ(img.at(i, j), 128) << i << "," << j;  // half the cell lies on the band
      } else {
        EXPECT_EQ(img.at(i, j), 255) << i << "," << j;
      }
    }
  }
}
