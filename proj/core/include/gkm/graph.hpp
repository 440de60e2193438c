#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gkm/graphon.hpp"
#include "gkm/matrix.hpp"

namespace gkm {

struct Provenance {
  enum class Kind { deterministic, sampled };
  Kind kind = Kind::deterministic;
  std::uint64_t seed = 0;

  static Provenance deterministic() { return {Kind::deterministic, 0}; }
  static Provenance sampled(std::uint64_t seed) { return {Kind::sampled, seed}; }

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Dense symmetric weighted graph on n nodes. Self-loops are kept.
class WeightedGraph {
 public:
  static constexpr std::size_t kMaxNodes = 8192;

  /// Validates symmetry, |w| <= 1, and {0,1} entries for sampled graphs.
  WeightedGraph(SquareMatrix weights, Provenance provenance);

  std::size_t n() const noexcept { return weights_.size(); }
  const SquareMatrix& weights() const noexcept { return weights_; }
  double weight(std::size_t i, std::size_t j) const noexcept { return weights_(i, j); }
  const Provenance& provenance() const noexcept { return provenance_; }

  bool has_edge(std::size_t i, std::size_t j) const noexcept { return weights_(i, j) != 0.0; }
  /// Mean of the strictly upper triangle; the edge density for 0/1 graphs.
  double off_diagonal_density() const noexcept;

 private:
  SquareMatrix weights_;
  Provenance provenance_;
};

/// Throws CapacityError when n exceeds WeightedGraph::kMaxNodes.
void check_node_capacity(std::size_t n);

/// G(W, X_n): weights are the cell averages of W.
WeightedGraph deterministic_graph(const Graphon& w, std::size_t n);

/// W-random graph: edge {i,j}, i <= j, present with probability W_{n,ij}.
///
/// Each pair draws from a counter-based generator keyed by (seed, i, j), so the
/// result does not depend on the order in which pairs are visited.
WeightedGraph sample_w_random(const Graphon& w, std::size_t n, std::uint64_t seed);
WeightedGraph sample_w_random(const StepGraphon& probabilities, std::uint64_t seed);

/// 8-bit grayscale raster, row-major.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }
};

/// Pixel (i,j) = round(255 * (1 - |w_ij|)): black for weight 1, white for 0.
GrayImage pixel_picture(const SquareMatrix& weights);
GrayImage pixel_picture(const WeightedGraph& g);

}  // namespace gkm
