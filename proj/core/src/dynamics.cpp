#include "gkm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gkm/circle.hpp"
#include "gkm/error.hpp"
#include "gkm/rng.hpp"

namespace gkm {

// ---------------------------------------------------------------------------
// CouplingFunction

CouplingFunction CouplingFunction::sine() { return CouplingFunction{}; }

CouplingFunction CouplingFunction::sine_shift(double alpha) {
  if (!std::isfinite(alpha)) throw std::invalid_argument("sine_shift: alpha must be finite");
  CouplingFunction c;
  c.kind_ = Kind::sine_shift;
  c.alpha_ = alpha;
  return c;
}

CouplingFunction CouplingFunction::custom(Function f, double lipschitz_bound) {
  if (!f) throw std::invalid_argument("custom coupling: function must be callable");
  if (!(lipschitz_bound > 0.0 && lipschitz_bound <= 1.0)) {
    throw std::invalid_argument("custom coupling: Lipschitz bound must lie in (0, 1]");
  }
  constexpr int kSamples = 256;
  for (int k = 0; k < kSamples; ++k) {
    const double v = f(kTwoPi * k / kSamples);
    if (!(std::abs(v) <= 1.0)) throw std::invalid_argument("custom coupling: |D| exceeds 1");
  }
  CouplingFunction c;
  c.kind_ = Kind::custom;
  c.lipschitz_ = lipschitz_bound;
  c.f_ = std::move(f);
  return c;
}

double CouplingFunction::operator()(double u) const {
  switch (kind_) {
    case Kind::sine: return std::sin(u);
    case Kind::sine_shift: return std::sin(u + alpha_);
    case Kind::custom: return f_(u);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Systems

SquareMatrix BlockWeights::expand() const {
  const std::size_t n_total = size();
  check_node_capacity(n_total);
  SquareMatrix out(n_total);
  for (std::size_t i = 0; i < n_total; ++i) {
    for (std::size_t j = 0; j < n_total; ++j) out(i, j) = cells(i / per_cell, j / per_cell);
  }
  return out;
}

namespace {

std::vector<double> checked_omega(std::vector<double> omega, std::size_t n) {
  if (omega.empty()) return std::vector<double>(n, 0.0);
  if (omega.size() != n) throw DimensionMismatch("omega length", n, omega.size());
  return omega;
}

}  // namespace

OscillatorSystem::OscillatorSystem(WeightedGraph graph, CouplingFunction coupling,
                                   double coupling_strength, std::vector<double> omega)
    : weights_(std::move(graph)),
      coupling_(std::move(coupling)),
      strength_(coupling_strength),
      omega_(checked_omega(std::move(omega), size())) {}

OscillatorSystem::OscillatorSystem(BlockWeights blocks, CouplingFunction coupling,
                                   double coupling_strength, std::vector<double> omega)
    : weights_(std::move(blocks)),
      coupling_(std::move(coupling)),
      strength_(coupling_strength),
      omega_(checked_omega(std::move(omega), size())) {
  if (std::get<BlockWeights>(weights_).per_cell == 0) {
    throw std::invalid_argument("BlockWeights: per_cell must be positive");
  }
}

std::size_t OscillatorSystem::size() const noexcept {
  return std::visit([](const auto& w) -> std::size_t {
    if constexpr (std::is_same_v<std::decay_t<decltype(w)>, WeightedGraph>) {
      return w.n();
    } else {
      return w.size();
    }
  }, weights_);
}

double OscillatorSystem::weight(std::size_t i, std::size_t j) const noexcept {
  if (const auto* g = graph()) return g->weight(i, j);
  const auto* b = blocks();
  return b->cells(i / b->per_cell, j / b->per_cell);
}

// ---------------------------------------------------------------------------
// Right-hand side
//
// Dense and block systems share the same row kernels and visit j in the same
// order, so a block system and its expanded dense twin agree bit for bit.

namespace {

double row_dot(std::span<const double> row, std::span<const double> values) noexcept {
  double acc = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * values[j];
  return acc;
}

double row_coupling(std::span<const double> row, std::span<const double> phases, double ui,
                    const CouplingFunction& d) {
  double acc = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * d(phases[j] - ui);
  return acc;
}

template <class RowFor, class RowClass>
void rhs_impl(const OscillatorSystem& sys, std::span<const double> u, std::span<double> out,
              RowFor&& row_for, RowClass&& row_class, std::size_t n_classes) {
  const std::size_t n = u.size();
  const double scale = sys.coupling_strength() / static_cast<double>(n);
  const auto& d = sys.coupling();
  const auto& omega = sys.omega();

  if (d.is_sinusoidal()) {
    std::vector<double> s(n), c(n);
    for (std::size_t j = 0; j < n; ++j) {
      s[j] = std::sin(u[j]);
      c[j] = std::cos(u[j]);
    }
    // sum_j w_ij sin(u_j - u_i + a) = cos(u_i - a) S_i - sin(u_i - a) C_i
    std::vector<double> sum_s(n_classes), sum_c(n_classes);
    for (std::size_t k = 0; k < n_classes; ++k) {
      const auto row = row_for(k);
      sum_s[k] = row_dot(row, s);
      sum_c[k] = row_dot(row, c);
    }
    const double alpha = d.shift();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = row_class(i);
      const double phase = u[i] - alpha;
      out[i] = omega[i] + scale * (std::cos(phase) * sum_s[k] - std::sin(phase) * sum_c[k]);
    }
    return;
  }
  std::size_t current = n_classes;  // row cache key
  std::span<const double> row;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = row_class(i);
    if (k != current) {
      row = row_for(k);
      current = k;
    }
    out[i] = omega[i] + scale * row_coupling(row, u, u[i], d);
  }
}

}  // namespace

void rhs(const OscillatorSystem& sys, std::span<const double> phases, std::span<double> out) {
  const std::size_t n = sys.size();
  if (phases.size() != n) throw DimensionMismatch("rhs: phase vector", n, phases.size());
  if (out.size() != n) throw DimensionMismatch("rhs: output vector", n, out.size());

  if (const auto* g = sys.graph()) {
    const auto& w = g->weights();
    rhs_impl(sys, phases, out, [&](std::size_t i) { return w.row(i); },
             [](std::size_t i) { return i; }, n);
    return;
  }
  const auto& b = *sys.blocks();
  const std::size_t m = b.per_cell;
  const std::size_t cells = b.cells.n();
  // One materialized row per cell: all oscillators of a cell share it.
  std::vector<double> rows(cells * n);
  for (std::size_t k = 0; k < cells; ++k) {
    for (std::size_t j = 0; j < n; ++j) rows[k * n + j] = b.cells(k, j / m);
  }
  rhs_impl(sys, phases, out,
           [&](std::size_t k) { return std::span<const double>(rows.data() + k * n, n); },
           [m](std::size_t i) { return i / m; }, cells);
}

std::vector<double> rhs(const OscillatorSystem& sys, const PhaseState& state) {
  std::vector<double> out(state.n());
  rhs(sys, state.phases, out);
  return out;
}

// ---------------------------------------------------------------------------
// Integration

std::size_t step_count(double duration, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("integrate: dt must be > 0");
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw std::invalid_argument("integrate: duration must be >= 0");
  }
  if (duration == 0.0) return 0;
  const double ratio = duration / dt;
  return static_cast<std::size_t>(std::ceil(ratio - 1e-9 * std::max(1.0, ratio)));
}

namespace {

PhaseState reduced_state(double t, const std::vector<double>& u) {
  PhaseState s{t, u};
  for (double& v : s.phases) v = reduce_angle(v);
  return s;
}

}  // namespace

Trajectory integrate(const OscillatorSystem& sys, const PhaseState& state0, double duration,
                     double dt, std::size_t record_every) {
  const std::size_t n = sys.size();
  if (state0.n() != n) throw DimensionMismatch("integrate: initial state", n, state0.n());
  if (record_every == 0) throw std::invalid_argument("integrate: record_every must be >= 1");
  const std::size_t steps = step_count(duration, dt);

  Trajectory traj;
  std::vector<double> u = state0.phases;
  const double t0 = state0.time;
  traj.states.push_back(reduced_state(t0, u));
  traj.lifted.push_back(u);

  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (std::size_t step = 0; step < steps; ++step) {
    const double ta = static_cast<double>(step) * dt;
    const double tb = step + 1 == steps ? duration : static_cast<double>(step + 1) * dt;
    const double h = tb - ta;

    rhs(sys, u, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * h * k1[i];
    rhs(sys, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * h * k2[i];
    rhs(sys, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + h * k3[i];
    rhs(sys, tmp, k4);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (!std::isfinite(u[i])) {
        throw IntegrationError("integrate: non-finite phase for oscillator " + std::to_string(i),
                               step);
      }
    }
    if ((step + 1) % record_every == 0 || step + 1 == steps) {
      traj.states.push_back(reduced_state(t0 + tb, u));
      traj.lifted.push_back(u);
    }
  }
  return traj;
}

// ---------------------------------------------------------------------------
// Diagnostics

OrderParameter order_parameter(std::span<const double> phases) {
  if (phases.empty()) throw std::invalid_argument("order_parameter: empty phase vector");
  double re = 0.0, im = 0.0;
  for (double u : phases) {
    re += std::cos(u);
    im += std::sin(u);
  }
  const double n = static_cast<double>(phases.size());
  re /= n;
  im /= n;
  const double r = std::min(1.0, std::hypot(re, im));
  if (r < 1e-15) return {r, 0.0};
  return {r, reduce_angle(std::atan2(im, re))};
}

double norm_1n(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatch("norm_1n", a.size(), b.size());
  if (a.empty()) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(a.size()));
}

double max_abs_difference(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatch("max_abs_difference", a.size(), b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<double> make_omega(const OmegaSpec& spec, std::size_t n) {
  switch (spec.kind) {
    case OmegaSpec::Kind::zero: return std::vector<double>(n, 0.0);
    case OmegaSpec::Kind::constant: return std::vector<double>(n, spec.value);
    case OmegaSpec::Kind::normal: {
      if (!(spec.sd >= 0.0)) throw std::invalid_argument("omega normal: sd must be >= 0");
      SplitMix64 rng(mix64(spec.seed));
      std::vector<double> out(n);
      for (double& w : out) w = spec.value + spec.sd * rng.normal();
      return out;
    }
  }
  return {};
}

}  // namespace gkm
