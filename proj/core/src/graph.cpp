#include "gkm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gkm/error.hpp"
#include "gkm/rng.hpp"

namespace gkm {

void check_node_capacity(std::size_t n) {
  if (n > WeightedGraph::kMaxNodes) {
    throw CapacityError("graph with " + std::to_string(n) + " nodes exceeds dense capacity of " +
                        std::to_string(WeightedGraph::kMaxNodes));
  }
}

WeightedGraph::WeightedGraph(SquareMatrix weights, Provenance provenance)
    : weights_(std::move(weights)), provenance_(provenance) {
  if (weights_.size() == 0) throw std::invalid_argument("WeightedGraph: n must be positive");
  check_node_capacity(weights_.size());
  if (!weights_.is_symmetric()) throw std::invalid_argument("WeightedGraph: weights not symmetric");
  for (double v : weights_.data()) {
    if (!(std::abs(v) <= 1.0)) throw std::invalid_argument("WeightedGraph: |weight| exceeds 1");
    if (provenance_.kind == Provenance::Kind::sampled && v != 0.0 && v != 1.0) {
      throw std::invalid_argument("WeightedGraph: sampled graph must have 0/1 weights");
    }
  }
}

double WeightedGraph::off_diagonal_density() const noexcept {
  const std::size_t n = this->n();
  if (n < 2) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) acc += weights_(i, j);
  }
  return acc / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

WeightedGraph deterministic_graph(const Graphon& w, std::size_t n) {
  if (n == 0) throw std::invalid_argument("deterministic_graph: n must be positive");
  check_node_capacity(n);
  return WeightedGraph(cell_average(w, n).values(), Provenance::deterministic());
}

WeightedGraph sample_w_random(const StepGraphon& probabilities, std::uint64_t seed) {
  const std::size_t n = probabilities.n();
  check_node_capacity(n);
  for (double p : probabilities.values().data()) {
    if (p < 0.0 || p > 1.0) {
      throw std::invalid_argument(
          "sample_w_random: cell averages must lie in [0,1] to serve as edge probabilities");
    }
  }
  SquareMatrix e(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double u = counter_uniform(seed, i, j);
      e(i, j) = e(j, i) = u < probabilities(i, j) ? 1.0 : 0.0;
    }
  }
  return WeightedGraph(std::move(e), Provenance::sampled(seed));
}

WeightedGraph sample_w_random(const Graphon& w, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample_w_random: n must be positive");
  check_node_capacity(n);
  return sample_w_random(cell_average(w, n), seed);
}

GrayImage pixel_picture(const SquareMatrix& weights) {
  const std::size_t n = weights.size();
  GrayImage img{n, n, std::vector<std::uint8_t>(n * n)};
  for (std::size_t k = 0; k < n * n; ++k) {
    const double w = std::min(1.0, std::abs(weights.data()[k]));
    img.pixels[k] = static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - w)));
  }
  return img;
}

GrayImage pixel_picture(const WeightedGraph& g) { return pixel_picture(g.weights()); }

}  // namespace gkm
