#include "gkm/picard.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gkm/error.hpp"

namespace gkm {

namespace {

// Atoms of mu0 flattened in cell order; identities persist across iterates
// because every iterate is a pushforward of mu0.
struct AtomLayout {
  std::vector<double> masses;
  std::vector<std::size_t> cell;
  std::vector<std::size_t> cell_begin;  // n + 1 offsets

  std::size_t size() const noexcept { return masses.size(); }
  std::size_t n_cells() const noexcept { return cell_begin.size() - 1; }
};

// Velocity field of a frozen family, evaluated at arbitrary (u, cell).
class FrozenField {
 public:
  FrozenField(const VelocityFieldSpec& spec, const AtomLayout& layout, std::vector<double> positions)
      : spec_(spec), layout_(layout), positions_(std::move(positions)) {
    if (!spec_.coupling.is_sinusoidal()) return;
    const std::size_t n = layout_.n_cells();
    std::vector<double> s(n, 0.0), c(n, 0.0);
    for (std::size_t a = 0; a < layout_.size(); ++a) {
      s[layout_.cell[a]] += layout_.masses[a] * std::sin(positions_[a]);
      c[layout_.cell[a]] += layout_.masses[a] * std::cos(positions_[a]);
    }
    sin_field_.assign(n, 0.0);
    cos_field_.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        sin_field_[k] += spec_.weights(k, i) * s[i];
        cos_field_[k] += spec_.weights(k, i) * c[i];
      }
      sin_field_[k] /= static_cast<double>(n);
      cos_field_[k] /= static_cast<double>(n);
    }
  }

  double operator()(double u, std::size_t k) const {
    if (spec_.coupling.is_sinusoidal()) {
      const double phase = u - spec_.coupling.shift();
      return std::cos(phase) * sin_field_[k] - std::sin(phase) * cos_field_[k];
    }
    const std::size_t n = layout_.n_cells();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = spec_.weights(k, i);
      if (w == 0.0) continue;
      double inner = 0.0;
      for (std::size_t b = layout_.cell_begin[i]; b < layout_.cell_begin[i + 1]; ++b) {
        inner += layout_.masses[b] * spec_.coupling(positions_[b] - u);
      }
      acc += w * inner;
    }
    return acc / static_cast<double>(n);
  }

 private:
  const VelocityFieldSpec& spec_;
  const AtomLayout& layout_;
  std::vector<double> positions_;
  std::vector<double> sin_field_;
  std::vector<double> cos_field_;
};

MeasureFamily to_family(const AtomLayout& layout, const std::vector<double>& positions) {
  std::vector<CircleMeasure> cells;
  cells.reserve(layout.n_cells());
  for (std::size_t i = 0; i < layout.n_cells(); ++i) {
    std::vector<Atom> atoms;
    for (std::size_t a = layout.cell_begin[i]; a < layout.cell_begin[i + 1]; ++a) {
      atoms.push_back({positions[a], layout.masses[a]});
    }
    cells.emplace_back(std::move(atoms));
  }
  return MeasureFamily(std::move(cells));
}

using Path = std::vector<std::vector<double>>;  // [time index][atom]

Path apply_map(const VelocityFieldSpec& spec, const AtomLayout& layout, const Path& frozen,
               const std::vector<double>& times) {
  const std::size_t steps = times.size() - 1;
  const std::size_t count = layout.size();
  Path next(times.size());
  next[0] = frozen[0];
  std::vector<double> mid(count);
  for (std::size_t s = 0; s < steps; ++s) {
    const double h = times[s + 1] - times[s];
    for (std::size_t a = 0; a < count; ++a) mid[a] = 0.5 * (frozen[s][a] + frozen[s + 1][a]);
    const FrozenField v0(spec, layout, frozen[s]);
    const FrozenField vm(spec, layout, mid);
    const FrozenField v1(spec, layout, frozen[s + 1]);
    next[s + 1].resize(count);
    for (std::size_t a = 0; a < count; ++a) {
      const std::size_t k = layout.cell[a];
      const double u = next[s][a];
      const double k1 = v0(u, k);
      const double k2 = vm(u + 0.5 * h * k1, k);
      const double k3 = vm(u + 0.5 * h * k2, k);
      const double k4 = v1(u + h * k3, k);
      next[s + 1][a] = u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (!std::isfinite(next[s + 1][a])) {
        throw IntegrationError("picard_solve: non-finite characteristic", s);
      }
    }
  }
  return next;
}

MeasureTrajectory to_trajectory(const AtomLayout& layout, const Path& path,
                                const std::vector<double>& times) {
  MeasureTrajectory out;
  out.times = times;
  out.families.reserve(path.size());
  for (const auto& positions : path) out.families.push_back(to_family(layout, positions));
  return out;
}

}  // namespace

PicardResult picard_solve(const VelocityFieldSpec& spec, const MeasureFamily& mu0,
                          const PicardOptions& options) {
  if (!(options.alpha > 2.0)) throw std::invalid_argument("picard_solve: alpha must exceed 2");
  if (!(options.tolerance > 0.0)) throw std::invalid_argument("picard_solve: tolerance must be > 0");
  if (options.max_iterations == 0) throw std::invalid_argument("picard_solve: max_iterations must be >= 1");
  if (mu0.n_cells() != spec.n()) throw DimensionMismatch("picard_solve: cells", spec.n(), mu0.n_cells());

  AtomLayout layout;
  std::vector<double> start;
  layout.cell_begin.push_back(0);
  for (std::size_t i = 0; i < mu0.n_cells(); ++i) {
    for (const Atom& a : mu0.cell(i).atoms()) {
      layout.masses.push_back(a.mass);
      layout.cell.push_back(i);
      start.push_back(a.position);
    }
    layout.cell_begin.push_back(layout.masses.size());
  }

  const std::size_t steps = step_count(options.horizon, options.dt);
  std::vector<double> times(steps + 1);
  for (std::size_t s = 0; s <= steps; ++s) {
    times[s] = s == steps ? options.horizon : static_cast<double>(s) * options.dt;
  }

  Path current(times.size(), start);
  MeasureTrajectory current_traj = to_trajectory(layout, current, times);
  PicardReport report;
  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    Path next = apply_map(spec, layout, current, times);
    MeasureTrajectory next_traj = to_trajectory(layout, next, times);
    const double d = d_alpha(next_traj, current_traj, options.alpha);
    report.ratios.push_back(report.distances.empty() || report.distances.back() == 0.0
                                ? std::numeric_limits<double>::quiet_NaN()
                                : d / report.distances.back());
    report.distances.push_back(d);
    report.iterations = iter + 1;
    current = std::move(next);
    current_traj = std::move(next_traj);
    if (d < options.tolerance) {
      report.converged = true;
      break;
    }
  }
  return {std::move(current_traj), std::move(report)};
}

}  // namespace gkm
