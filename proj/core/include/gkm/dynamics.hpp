#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "gkm/graph.hpp"
#include "gkm/graphon.hpp"

namespace gkm {

/// 2pi-periodic interaction function D with |D| <= 1 and Lipschitz constant <= 1.
class CouplingFunction {
 public:
  enum class Kind { sine, sine_shift, custom };
  using Function = std::function<double(double)>;

  static CouplingFunction sine();
  /// u -> sin(u + alpha).
  static CouplingFunction sine_shift(double alpha);
  /// Rejects lipschitz_bound outside (0,1] and functions exceeding 1 in
  /// absolute value on a 256-point sample of one period.
  static CouplingFunction custom(Function f, double lipschitz_bound);

  double operator()(double u) const;

  Kind kind() const noexcept { return kind_; }
  /// Phase shift alpha; zero for sine and custom.
  double shift() const noexcept { return alpha_; }
  double lipschitz_bound() const noexcept { return lipschitz_; }
  bool is_sinusoidal() const noexcept { return kind_ != Kind::custom; }

 private:
  CouplingFunction() = default;

  Kind kind_ = Kind::sine;
  double alpha_ = 0.0;
  double lipschitz_ = 1.0;
  Function f_;
};

/// Oscillator phases at one instant. Phases of a recorded state lie in [0, 2pi).
struct PhaseState {
  double time = 0.0;
  std::vector<double> phases;

  std::size_t n() const noexcept { return phases.size(); }
};

/// N = n*m oscillators whose weight between oscillators i and j is
/// cells(i / m, j / m): the block-constant matrix induced by a step graphon.
struct BlockWeights {
  StepGraphon cells;
  std::size_t per_cell = 1;

  std::size_t size() const noexcept { return cells.n() * per_cell; }
  /// Materializes the N x N matrix; only sensible for small N.
  SquareMatrix expand() const;
};

/// du_i/dt = omega_i + (K/N) sum_j w_ij D(u_j - u_i).
class OscillatorSystem {
 public:
  /// Empty `omega` means all intrinsic frequencies are zero.
  OscillatorSystem(WeightedGraph graph, CouplingFunction coupling, double coupling_strength = 1.0,
                   std::vector<double> omega = {});
  OscillatorSystem(BlockWeights blocks, CouplingFunction coupling, double coupling_strength = 1.0,
                   std::vector<double> omega = {});

  std::size_t size() const noexcept;
  const CouplingFunction& coupling() const noexcept { return coupling_; }
  double coupling_strength() const noexcept { return strength_; }
  const std::vector<double>& omega() const noexcept { return omega_; }
  double weight(std::size_t i, std::size_t j) const noexcept;

  const WeightedGraph* graph() const noexcept { return std::get_if<WeightedGraph>(&weights_); }
  const BlockWeights* blocks() const noexcept { return std::get_if<BlockWeights>(&weights_); }

 private:
  std::variant<WeightedGraph, BlockWeights> weights_;
  CouplingFunction coupling_;
  double strength_;
  std::vector<double> omega_;
};

/// Phase velocities for raw (unreduced) phases. `out` must have size() entries.
void rhs(const OscillatorSystem& sys, std::span<const double> phases, std::span<double> out);
std::vector<double> rhs(const OscillatorSystem& sys, const PhaseState& state);

/// Recorded output of integrate(). `lifted` holds the continuous (unreduced)
/// phases at the same instants as `states`.
struct Trajectory {
  std::vector<PhaseState> states;
  std::vector<std::vector<double>> lifted;

  std::size_t size() const noexcept { return states.size(); }
  const PhaseState& back() const { return states.back(); }
};

/// Classic fixed-step RK4 from state0.time to state0.time + duration.
///
/// The last step is shortened to land exactly on the end time. Records the
/// initial state, every `record_every`-th step and the final state. Throws
/// IntegrationError carrying the step index when a phase becomes non-finite.
Trajectory integrate(const OscillatorSystem& sys, const PhaseState& state0, double duration,
                     double dt, std::size_t record_every = 1);

/// Number of RK4 steps integrate() takes for the given horizon.
std::size_t step_count(double duration, double dt);

struct OrderParameter {
  double r = 0.0;
  double psi = 0.0;
};

/// r e^{i psi} = n^-1 sum_j e^{i u_j}; psi is 0 when r < 1e-15.
OrderParameter order_parameter(std::span<const double> phases);
inline OrderParameter order_parameter(const PhaseState& s) { return order_parameter(s.phases); }

/// sqrt(n^-1 sum (a_i - b_i)^2) on raw real differences.
double norm_1n(std::span<const double> a, std::span<const double> b);

/// Largest |a_i - b_i|; callers use it to detect comparisons that wrapped past pi.
double max_abs_difference(std::span<const double> a, std::span<const double> b);

/// Intrinsic frequency assignment.
struct OmegaSpec {
  enum class Kind { zero, constant, normal };
  Kind kind = Kind::zero;
  double value = 0.0;  // constant value or normal mean
  double sd = 0.0;
  std::uint64_t seed = 0;

  static OmegaSpec zero() { return {}; }
  static OmegaSpec constant(double c) { return {Kind::constant, c, 0.0, 0}; }
  static OmegaSpec normal(double mean, double sd, std::uint64_t seed) {
    return {Kind::normal, mean, sd, seed};
  }
};

std::vector<double> make_omega(const OmegaSpec& spec, std::size_t n);

}  // namespace gkm
