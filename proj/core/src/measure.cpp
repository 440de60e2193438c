#include "gkm/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gkm/error.hpp"

namespace gkm {

namespace {

// Neumaier-compensated sum of atom masses.
double compensated_mass(const std::vector<Atom>& atoms) noexcept {
  double sum = 0.0, comp = 0.0;
  for (const Atom& a : atoms) {
    const double t = sum + a.mass;
    comp += std::abs(sum) >= std::abs(a.mass) ? (sum - t) + a.mass : (a.mass - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace

CircleMeasure::CircleMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("CircleMeasure: no atoms");
  for (Atom& a : atoms_) {
    if (!std::isfinite(a.position)) throw std::invalid_argument("CircleMeasure: non-finite position");
    if (!(a.mass > 0.0)) throw std::invalid_argument("CircleMeasure: masses must be positive");
    a.position = reduce_angle(a.position);
  }
  if (std::abs(compensated_mass(atoms_) - 1.0) > 1e-12) {
    throw std::invalid_argument("CircleMeasure: masses must sum to 1");
  }
}

CircleMeasure CircleMeasure::dirac(double theta) { return CircleMeasure({{theta, 1.0}}); }

CircleMeasure CircleMeasure::equal_weights(std::span<const double> positions) {
  if (positions.empty()) throw std::invalid_argument("CircleMeasure: no atoms");
  const double w = 1.0 / static_cast<double>(positions.size());
  std::vector<Atom> atoms;
  atoms.reserve(positions.size());
  for (double p : positions) atoms.push_back({p, w});
  return CircleMeasure(std::move(atoms));
}

double CircleMeasure::total_mass() const noexcept { return compensated_mass(atoms_); }

CircleMeasure CircleMeasure::rotated(double shift) const {
  std::vector<Atom> out = atoms_;
  for (Atom& a : out) a.position += shift;
  return CircleMeasure(std::move(out));
}

double bl_distance(const CircleMeasure& mu_in, const CircleMeasure& eta_in) {
  // Fixed operand order so the result is bitwise symmetric.
  const auto atom_less = [](const Atom& a, const Atom& b) {
    return a.position != b.position ? a.position < b.position : a.mass < b.mass;
  };
  const bool swap = std::lexicographical_compare(eta_in.atoms().begin(), eta_in.atoms().end(),
                                                 mu_in.atoms().begin(), mu_in.atoms().end(), atom_less);
  const CircleMeasure& mu = swap ? eta_in : mu_in;
  const CircleMeasure& eta = swap ? mu_in : eta_in;
  struct Event {
    double position;
    double signed_mass;
  };
  std::vector<Event> events;
  events.reserve(mu.size() + eta.size());
  for (const Atom& a : mu.atoms()) events.push_back({a.position, a.mass});
  for (const Atom& a : eta.atoms()) events.push_back({a.position, -a.mass});
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.position < b.position; });

  // Delta is constant on the arc following each event; record (value, arc length).
  struct Piece {
    double delta;
    double length;
  };
  std::vector<Piece> pieces;
  pieces.reserve(events.size());
  double delta = 0.0;
  for (std::size_t k = 0; k < events.size(); ++k) {
    delta += events[k].signed_mass;
    const double next = k + 1 < events.size() ? events[k + 1].position : events[0].position + kTwoPi;
    const double len = next - events[k].position;
    if (len > 0.0) pieces.push_back({delta, len});
  }
  if (pieces.empty()) return 0.0;

  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& a, const Piece& b) { return a.delta < b.delta; });
  double total = 0.0;
  for (const Piece& p : pieces) total += p.length;
  const double half = 0.5 * total;
  const double tie_tol = 1e-14 * total;

  double shift = pieces.back().delta;
  double cum = 0.0;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    cum += pieces[k].length;
    if (std::abs(cum - half) <= tie_tol && k + 1 < pieces.size()) {
      shift = 0.5 * (pieces[k].delta + pieces[k + 1].delta);
      break;
    }
    if (cum > half) {
      shift = pieces[k].delta;
      break;
    }
  }
  double w1 = 0.0;
  for (const Piece& p : pieces) w1 += p.length * std::abs(p.delta - shift);
  return w1;
}

MeasureFamily::MeasureFamily(std::vector<CircleMeasure> cells) : cells_(std::move(cells)) {
  if (cells_.empty()) throw std::invalid_argument("MeasureFamily: no cells");
}

MeasureFamily MeasureFamily::refined(std::size_t factor) const {
  if (factor == 0) throw std::invalid_argument("MeasureFamily::refined: factor must be >= 1");
  std::vector<CircleMeasure> out;
  out.reserve(cells_.size() * factor);
  for (const auto& c : cells_) {
    for (std::size_t k = 0; k < factor; ++k) out.push_back(c);
  }
  return MeasureFamily(std::move(out));
}

double dbar(const MeasureFamily& a, const MeasureFamily& b) {
  if (a.n_cells() != b.n_cells()) throw DimensionMismatch("dbar: cell count", a.n_cells(), b.n_cells());
  double acc = 0.0;
  for (std::size_t i = 0; i < a.n_cells(); ++i) acc += bl_distance(a.cell(i), b.cell(i));
  return acc / static_cast<double>(a.n_cells());
}

double dbar_common_refinement(const MeasureFamily& a, const MeasureFamily& b) {
  if (a.n_cells() == b.n_cells()) return dbar(a, b);
  const std::size_t l = std::lcm(a.n_cells(), b.n_cells());
  return dbar(a.refined(l / a.n_cells()), b.refined(l / b.n_cells()));
}

void MeasureTrajectory::validate() const {
  if (times.size() != families.size()) {
    throw DimensionMismatch("MeasureTrajectory: families", times.size(), families.size());
  }
  if (times.empty() || times.front() != 0.0) {
    throw std::invalid_argument("MeasureTrajectory: times must start at 0");
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) {
      throw std::invalid_argument("MeasureTrajectory: times must be strictly increasing");
    }
  }
}

std::vector<double> dbar_series(const MeasureTrajectory& a, const MeasureTrajectory& b) {
  if (a.size() != b.size()) throw DimensionMismatch("time grid", a.size(), b.size());
  std::vector<double> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double scale = std::max(1.0, std::abs(a.times[k]));
    if (std::abs(a.times[k] - b.times[k]) > 1e-12 * scale) {
      throw std::invalid_argument("time grids differ");
    }
    out[k] = dbar(a.families[k], b.families[k]);
  }
  return out;
}

double d_alpha(const MeasureTrajectory& a, const MeasureTrajectory& b, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("d_alpha: alpha must be positive");
  const auto series = dbar_series(a, b);
  double sup = 0.0;
  for (std::size_t k = 0; k < series.size(); ++k) {
    sup = std::max(sup, std::exp(-alpha * a.times[k]) * series[k]);
  }
  return sup;
}

MeasureFamily empirical_from_phases(std::span<const double> phases, std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw std::invalid_argument("empirical_from_phases: n and m must be positive");
  if (phases.size() != n * m) throw DimensionMismatch("empirical_from_phases", n * m, phases.size());
  std::vector<CircleMeasure> cells;
  cells.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    cells.push_back(CircleMeasure::equal_weights(phases.subspan(i * m, m)));
  }
  return MeasureFamily(std::move(cells));
}

}  // namespace gkm
