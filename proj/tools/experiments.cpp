#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "gkm/dynamics.hpp"
#include "gkm/error.hpp"
#include "gkm/finite_volume.hpp"
#include "gkm/graph.hpp"
#include "gkm/graphon.hpp"
#include "gkm/initial_density.hpp"
#include "gkm/meanfield.hpp"
#include "gkm/measure.hpp"
#include "gkm/picard.hpp"
#include "gkm/rng.hpp"
#include "gkm/serialization.hpp"
#include "gkm/stability.hpp"

namespace gkm::tools {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxParticles = std::size_t{1} << 20;

// ---------------------------------------------------------------------------
// Nested specs

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

double number_or(const json& j, const char* key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(where + ": '" + key + "' must be a number");
  return j.at(key).get<double>();
}

std::string kind_of(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw ConfigError(where + ": expected an object with a string 'kind'");
  }
  return j.at("kind").get<std::string>();
}

Graphon make_graphon(const std::string& text, const std::string& where) {
  try {
    return graphon_from_json(text);
  } catch (const std::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

CouplingFunction make_coupling(const std::string& text) {
  const json j = json::parse(text);
  const std::string kind = kind_of(j, "coupling");
  if (kind == "sine") {
    check_keys(j, {"kind"}, "coupling");
    return CouplingFunction::sine();
  }
  if (kind == "sine_shift") {
    check_keys(j, {"kind", "alpha"}, "coupling");
    return CouplingFunction::sine_shift(number_or(j, "alpha", 0.0, "coupling"));
  }
  throw ConfigError("coupling: unknown kind '" + kind + "'");
}

InitialDensity make_density(const std::string& text) {
  const json j = json::parse(text);
  const std::string kind = kind_of(j, "rho0");
  InitialDensity d;
  if (kind == "uniform") {
    check_keys(j, {"kind"}, "rho0");
    d = InitialDensity::uniform();
  } else if (kind == "von_mises") {
    check_keys(j, {"kind", "kappa", "mean", "twist"}, "rho0");
    d.kind = InitialDensity::Kind::von_mises;
    d.kappa = number_or(j, "kappa", 1.0, "rho0");
    d.mean = number_or(j, "mean", 0.0, "rho0");
    d.twist = number_or(j, "twist", 0.0, "rho0");
  } else if (kind == "two_cluster") {
    check_keys(j, {"kind", "theta1", "theta2", "weight", "kappa", "twist"}, "rho0");
    d.kind = InitialDensity::Kind::two_cluster;
    d.theta1 = number_or(j, "theta1", 0.0, "rho0");
    d.theta2 = number_or(j, "theta2", 3.141592653589793, "rho0");
    d.weight = number_or(j, "weight", 0.5, "rho0");
    d.kappa = number_or(j, "kappa", 10.0, "rho0");
    d.twist = number_or(j, "twist", 0.0, "rho0");
  } else {
    throw ConfigError("rho0: unknown kind '" + kind + "'");
  }
  try {
    d.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("rho0: ") + e.what());
  }
  return d;
}

OmegaSpec make_omega_spec(const std::string& text) {
  const json j = json::parse(text);
  if (j.is_string()) {
    if (j.get<std::string>() == "zero") return OmegaSpec::zero();
    throw ConfigError("omega: expected \"zero\" or an object");
  }
  const std::string kind = kind_of(j, "omega");
  if (kind == "zero") {
    check_keys(j, {"kind"}, "omega");
    return OmegaSpec::zero();
  }
  if (kind == "constant") {
    check_keys(j, {"kind", "value"}, "omega");
    return OmegaSpec::constant(number_or(j, "value", 0.0, "omega"));
  }
  if (kind == "normal") {
    check_keys(j, {"kind", "mean", "sd", "seed"}, "omega");
    const double sd = number_or(j, "sd", 1.0, "omega");
    if (!(sd >= 0.0)) throw ConfigError("omega: sd must be >= 0");
    std::uint64_t seed = 0;
    if (j.contains("seed")) {
      if (!j.at("seed").is_number_unsigned()) throw ConfigError("omega: seed must be a non-negative integer");
      seed = j.at("seed").get<std::uint64_t>();
    }
    return OmegaSpec::normal(number_or(j, "mean", 0.0, "omega"), sd, seed);
  }
  throw ConfigError("omega: unknown kind '" + kind + "'");
}

InitMode make_mode(const std::string& s) {
  if (s == "quantile") return InitMode::quantile;
  if (s == "iid") return InitMode::iid;
  throw ConfigError("init_mode: expected \"quantile\" or \"iid\"");
}

// ---------------------------------------------------------------------------
// Top-level keys

std::size_t as_count(const json& v, const std::string& key) {
  if (!v.is_number_unsigned()) throw ConfigError(key + ": expected a non-negative integer");
  return v.get<std::size_t>();
}

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key + ": expected a number");
  return v.get<double>();
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError(key + ": expected a string");
  return v.get<std::string>();
}

template <class T>
std::vector<T> as_list(const json& v, const std::string& key) {
  std::vector<T> out;
  if (v.is_array()) {
    if (v.empty()) throw ConfigError(key + ": list must not be empty");
    for (const auto& e : v) out.push_back(static_cast<T>(as_count(e, key)));
  } else {
    out.push_back(static_cast<T>(as_count(v, key)));
  }
  return out;
}

std::string object_text(const json& v, const std::string& key) {
  if (!v.is_object()) throw ConfigError(key + ": expected an object");
  return v.dump();
}

using Setter = std::function<void(ExperimentConfig&, const json&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table{
      {"experiment", [](auto& c, const json& v) { c.experiment = as_string(v, "experiment"); }},
      {"graphon", [](auto& c, const json& v) { c.graphon = object_text(v, "graphon"); }},
      {"graphon_b",
       [](auto& c, const json& v) {
         if (v.is_null()) {
           c.graphon_b.reset();
         } else {
           c.graphon_b = object_text(v, "graphon_b");
         }
       }},
      {"coupling", [](auto& c, const json& v) { c.coupling = object_text(v, "coupling"); }},
      {"rho0", [](auto& c, const json& v) { c.rho0 = object_text(v, "rho0"); }},
      {"omega",
       [](auto& c, const json& v) {
         if (!v.is_string() && !v.is_object()) throw ConfigError("omega: expected \"zero\" or an object");
         c.omega = v.dump();
       }},
      {"n", [](auto& c, const json& v) { c.n = as_list<std::size_t>(v, "n"); }},
      {"m", [](auto& c, const json& v) { c.m = as_list<std::size_t>(v, "m"); }},
      {"T", [](auto& c, const json& v) { c.T = as_number(v, "T"); }},
      {"dt", [](auto& c, const json& v) { c.dt = as_number(v, "dt"); }},
      {"record_every", [](auto& c, const json& v) { c.record_every = as_count(v, "record_every"); }},
      {"K", [](auto& c, const json& v) { c.K = as_number(v, "K"); }},
      {"init_mode", [](auto& c, const json& v) { c.init_mode = as_string(v, "init_mode"); }},
      {"sampling", [](auto& c, const json& v) { c.sampling = as_string(v, "sampling"); }},
      {"seeds", [](auto& c, const json& v) { c.seeds = as_list<std::uint64_t>(v, "seeds"); }},
      {"metric_alpha", [](auto& c, const json& v) { c.metric_alpha = as_number(v, "metric_alpha"); }},
      {"tol", [](auto& c, const json& v) { c.tol = as_number(v, "tol"); }},
      {"max_iter", [](auto& c, const json& v) { c.max_iter = as_count(v, "max_iter"); }},
      {"g", [](auto& c, const json& v) { c.g = as_count(v, "g"); }},
      {"reference_n", [](auto& c, const json& v) { c.reference_n = as_count(v, "reference_n"); }},
      {"reference_m", [](auto& c, const json& v) { c.reference_m = as_count(v, "reference_m"); }},
      {"trials", [](auto& c, const json& v) { c.trials = as_count(v, "trials"); }},
      {"perturbation", [](auto& c, const json& v) { c.perturbation = as_number(v, "perturbation"); }},
      {"input", [](auto& c, const json& v) { c.input = as_string(v, "input"); }},
      {"input_b", [](auto& c, const json& v) { c.input_b = as_string(v, "input_b"); }},
      {"pgm",
       [](auto& c, const json& v) {
         if (!v.is_boolean()) throw ConfigError("pgm: expected true or false");
         c.pgm = v.get<bool>();
       }},
  };
  return table;
}

std::size_t max_of(const std::vector<std::size_t>& v) { return *std::max_element(v.begin(), v.end()); }

void check_capacity(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw ConfigError("n and m must be positive");
  if (n > WeightedGraph::kMaxNodes) {
    throw ConfigError("n = " + std::to_string(n) + " exceeds the node limit " +
                      std::to_string(WeightedGraph::kMaxNodes));
  }
  if (n * m > kMaxParticles) {
    throw ConfigError("n*m = " + std::to_string(n * m) + " exceeds the particle limit 2^20");
  }
}

std::size_t reference_n(const ExperimentConfig& c) { return c.reference_n ? c.reference_n : 2 * max_of(c.n); }
std::size_t reference_m(const ExperimentConfig& c) { return c.reference_m ? c.reference_m : 4 * max_of(c.m); }

void validate(const ExperimentConfig& c) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), c.experiment) == names.end()) {
    throw ConfigError("experiment: unknown or missing experiment '" + c.experiment + "'");
  }
  make_graphon(c.graphon, "graphon");
  if (c.graphon_b) make_graphon(*c.graphon_b, "graphon_b");
  make_coupling(c.coupling);
  make_density(c.rho0);
  make_omega_spec(c.omega);
  make_mode(c.init_mode);
  if (c.sampling != "deterministic" && c.sampling != "sampled") {
    throw ConfigError("sampling: expected \"deterministic\" or \"sampled\"");
  }
  for (std::size_t n : c.n) {
    for (std::size_t m : c.m) check_capacity(n, m);
  }
  if (!(c.T >= 0.0) || !std::isfinite(c.T)) throw ConfigError("T must be finite and >= 0");
  if (!(c.dt > 0.0) || !std::isfinite(c.dt)) throw ConfigError("dt must be finite and > 0");
  if (c.record_every == 0) throw ConfigError("record_every must be >= 1");
  if (!(c.metric_alpha > 2.0)) throw ConfigError("metric_alpha must exceed 2");
  if (!(c.tol > 0.0)) throw ConfigError("tol must be > 0");
  if (c.max_iter == 0) throw ConfigError("max_iter must be >= 1");
  if (c.g == 0) throw ConfigError("g must be >= 1");
  if (c.trials == 0) throw ConfigError("trials must be >= 1");
  if (!(c.perturbation >= 0.0)) throw ConfigError("perturbation must be >= 0");
  if (c.experiment == "convergence_main") {
    if (reference_n(c) < 2 * max_of(c.n)) throw ConfigError("reference_n must be at least 2 * max n");
    if (reference_m(c) < 4 * max_of(c.m)) throw ConfigError("reference_m must be at least 4 * max m");
    check_capacity(reference_n(c), reference_m(c));
  }
  if (c.experiment == "stability_kernel" && !c.graphon_b) {
    throw ConfigError("stability_kernel requires graphon_b");
  }
  if (c.experiment == "distance" && (c.input.empty() || c.input_b.empty())) {
    throw ConfigError("distance requires input and input_b");
  }
}

json config_object(const ExperimentConfig& c) {
  json j;
  j["experiment"] = c.experiment;
  j["graphon"] = json::parse(c.graphon);
  j["graphon_b"] = c.graphon_b ? json::parse(*c.graphon_b) : json(nullptr);
  j["coupling"] = json::parse(c.coupling);
  j["rho0"] = json::parse(c.rho0);
  j["omega"] = json::parse(c.omega);
  j["n"] = c.n;
  j["m"] = c.m;
  j["T"] = c.T;
  j["dt"] = c.dt;
  j["record_every"] = c.record_every;
  j["K"] = c.K;
  j["init_mode"] = c.init_mode;
  j["sampling"] = c.sampling;
  j["seeds"] = c.seeds;
  j["metric_alpha"] = c.metric_alpha;
  j["tol"] = c.tol;
  j["max_iter"] = c.max_iter;
  j["g"] = c.g;
  j["reference_n"] = c.reference_n;
  j["reference_m"] = c.reference_m;
  j["trials"] = c.trials;
  j["perturbation"] = c.perturbation;
  j["input"] = c.input;
  j["input_b"] = c.input_b;
  j["pgm"] = c.pgm;
  return j;
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + assignment + "': expected key=value");
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  std::vector<std::string> keys;
  std::stringstream ss(path);
  for (std::string part; std::getline(ss, part, '.');) {
    if (part.empty()) throw ConfigError("override '" + assignment + "': empty key segment");
    keys.push_back(part);
  }
  if (!setters().count(keys.front())) throw ConfigError("unknown config key '" + keys.front() + "'");
  json* node = &doc;
  for (std::size_t k = 0; k + 1 < keys.size(); ++k) {
    json& child = (*node)[keys[k]];
    if (child.is_null()) child = json::object();
    if (!child.is_object()) throw ConfigError("override '" + assignment + "': '" + keys[k] + "' is not an object");
    node = &child;
  }
  (*node)[keys.back()] = std::move(value);
}

// ---------------------------------------------------------------------------
// Output helpers

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + p.string() + "' for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + p.string() + "'");
  return in;
}

std::string csv_row(std::initializer_list<std::string> fields) {
  std::string out;
  for (const auto& f : fields) {
    if (!out.empty()) out += ',';
    out += f;
  }
  return out + '\n';
}

std::string num(double v) { return format_double(v); }

VelocityFieldSpec field_spec(const ExperimentConfig& c, const Graphon& w, std::size_t n) {
  return {cell_average(w, n), make_coupling(c.coupling)};
}

ParticleOptions particle_options(const ExperimentConfig& c) {
  ParticleOptions o;
  o.horizon = c.T;
  o.dt = c.dt;
  o.record_every = c.record_every;
  o.mode = make_mode(c.init_mode);
  o.seed = c.seeds.front();
  return o;
}

// ---------------------------------------------------------------------------
// Experiments

void run_simulate(const ExperimentConfig& c, const std::filesystem::path& dir) {
  const std::size_t n = c.n.front();
  const Graphon w = make_graphon(c.graphon, "graphon");
  const std::uint64_t seed = c.seeds.front();
  const WeightedGraph graph = c.sampling == "sampled" ? sample_w_random(w, n, seed) : deterministic_graph(w, n);
  const OscillatorSystem sys(graph, make_coupling(c.coupling), c.K, make_omega(make_omega_spec(c.omega), n));
  const PhaseState s0{0.0, initial_phases(make_density(c.rho0), n, 1, make_mode(c.init_mode), seed)};
  const Trajectory traj = integrate(sys, s0, c.T, c.dt, c.record_every);
  auto out = open_out(dir / "results.csv");
  write_trajectory_csv(out, traj);
  if (c.pgm) {
    auto img = open_out(dir / "graph.pgm");
    write_pgm(img, pixel_picture(graph));
  }
}

void run_sample_graph(const ExperimentConfig& c, const std::filesystem::path& dir) {
  const std::size_t n = c.n.front();
  const Graphon w = make_graphon(c.graphon, "graphon");
  const WeightedGraph graph =
      c.sampling == "sampled" ? sample_w_random(w, n, c.seeds.front()) : deterministic_graph(w, n);
  auto out = open_out(dir / "results.csv");
  write_matrix_csv(out, graph.weights());
  if (c.pgm) {
    auto img = open_out(dir / "graph.pgm");
    write_pgm(img, pixel_picture(graph));
  }
}

void run_meanfield_particles(const ExperimentConfig& c, const std::filesystem::path& dir) {
  const std::size_t n = c.n.front(), m = c.m.front();
  const VelocityFieldSpec spec = field_spec(c, make_graphon(c.graphon, "graphon"), n);
  const ParticleSolution sol = solve_particles(spec, make_density(c.rho0), m, particle_options(c));
  auto out = open_out(dir / "results.csv");
  out << "t,dbar_from_initial,r\n";
  const auto& fams = sol.measures.families;
  for (std::size_t s = 0; s < fams.size(); ++s) {
    const OrderParameter op = order_parameter(sol.phases.states[s].phases);
    out << csv_row({num(sol.measures.times[s]), num(dbar(fams[s], fams.front())), num(op.r)});
  }
  auto fam = open_out(dir / "final_family.csv");
  write_family_csv(fam, fams.back());
}

void run_meanfield_fv(const ExperimentConfig& c, const std::filesystem::path& dir) {
  const std::size_t n = c.n.front();
  const VelocityFieldSpec spec = field_spec(c, make_graphon(c.graphon, "graphon"), n);
  const DensityField rho0 = discretize_density(make_density(c.rho0), n, c.g);
  FvOptions o;
  o.horizon = c.T;
  o.dt = c.dt;
  o.record_every = c.record_every;
  const FvSolution sol = solve_fv(spec, rho0, o);
  auto out = open_out(dir / "results.csv");
  out << "t,max_mass_error\n";
  for (std::size_t s = 0; s < sol.times.size(); ++s) {
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(sol.fields[s].cell_mass(i) - 1.0));
    out << csv_row({num(sol.times[s]), num(err)});
  }
  auto dens = open_out(dir / "density_final.csv");
  write_density_csv(dens, sol.fields.back());
}

void run_picard(const ExperimentConfig& c, const std::filesystem::path& dir) {
  const std::size_t n = c.n.front(), m = c.m.front();
  const VelocityFieldSpec spec = field_spec(c, make_graphon(c.graphon, "graphon"), n);
  const MeasureFamily mu0 =
      initial_family(make_density(c.rho0), n, m, make_mode(c.init_mode), c.seeds.front());
  PicardOptions o;
  o.horizon = c.T;
  o.dt = c.dt;
  o.alpha = c.metric_alpha;
  o.tolerance = c.tol;
  o.max_iterations = c.max_iter;
  const PicardResult res = picard_solve(spec, mu0, o);
  auto out = open_out(dir / "results.csv");
  out << "iteration,d_alpha,ratio\n";
  for (std::size_t k = 0; k < res.report.distances.size(); ++k) {
    const double r = res.report.ratios[k];
    out << csv_row({std::to_string(k + 1), num(res.report.distances[k]), std::isfinite(r) ? num(r) : ""});
  }
  auto rep = open_out(dir / "iteration_report.json");
  rep << picard_report_json(res.report) << '\n';
  auto fam = open_out(dir / "final_family.csv");
  write_family_csv(fam, res.trajectory.families.back());
}

void run_convergence_main(const ExperimentConfig& c, const std::filesystem::path& dir) {
  const Graphon w = make_graphon(c.graphon, "graphon");
  const InitialDensity rho0 = make_density(c.rho0);
  const ParticleOptions o = particle_options(c);
  const ParticleSolution ref = solve_particles(field_spec(c, w, reference_n(c)), rho0, reference_m(c), o);
  auto out = open_out(dir / "results.csv");
  out << "n,m,sup_dbar\n";
  for (std::size_t n : c.n) {
    const VelocityFieldSpec spec = field_spec(c, w, n);
    for (std::size_t m : c.m) {
      const ParticleSolution sol = solve_particles(spec, rho0, m, o);
      double sup = 0.0;
      for (std::size_t s = 0; s < sol.measures.size(); ++s) {
        sup = std::max(sup, dbar_common_refinement(sol.measures.families[s], ref.measures.families[s]));
      }
      out << csv_row({std::to_string(n), std::to_string(m), num(sup)});
    }
  }
  out << csv_row({std::to_string(reference_n(c)), std::to_string(reference_m(c)), "reference"});
}

void run_convergence_ave(const ExperimentConfig& c, const std::filesystem::path& dir, std::ostream& log) {
  const Graphon w = make_graphon(c.graphon, "graphon");
  const InitialDensity rho0 = make_density(c.rho0);
  const CouplingFunction d = make_coupling(c.coupling);
  auto out = open_out(dir / "results.csv");
  out << "n,seed,sup_norm_1n\n";
  for (std::size_t n : c.n) {
    const WeightedGraph det = deterministic_graph(w, n);
    const std::vector<double> omega = make_omega(make_omega_spec(c.omega), n);
    for (std::uint64_t seed : c.seeds) {
      const PhaseState s0{0.0, initial_phases(rho0, n, 1, make_mode(c.init_mode), seed)};
      const Trajectory a = integrate(OscillatorSystem(det, d, c.K, omega), s0, c.T, c.dt, c.record_every);
      const Trajectory b = integrate(OscillatorSystem(sample_w_random(w, n, seed), d, c.K, omega), s0, c.T,
                                     c.dt, c.record_every);
      double sup = 0.0, widest = 0.0;
      for (std::size_t s = 0; s < a.lifted.size(); ++s) {
        sup = std::max(sup, norm_1n(a.lifted[s], b.lifted[s]));
        widest = std::max(widest, max_abs_difference(a.lifted[s], b.lifted[s]));
      }
      if (widest > 3.141592653589793) {
        log << "warning: n=" << n << " seed=" << seed
            << ": a phase difference exceeds pi; norm_1n depends on the lift\n";
      }
      out << csv_row({std::to_string(n), std::to_string(seed), num(sup)});
    }
  }
}

void write_stability(std::ostream& out, const std::string& label, const StabilityResult& r) {
  out << csv_row({label, num(r.measured), num(r.bound), r.pass ? "1" : "0"});
}

void run_stability_kernel(const ExperimentConfig& c, const std::filesystem::path& dir) {
  const std::size_t n = c.n.front(), m = c.m.front();
  const VelocityFieldSpec w = field_spec(c, make_graphon(c.graphon, "graphon"), n);
  const VelocityFieldSpec u = field_spec(c, make_graphon(*c.graphon_b, "graphon_b"), n);
  const MeasureFamily mu0 = initial_family(make_density(c.rho0), n, m, make_mode(c.init_mode), c.seeds.front());
  const double l1 = kernel_distance(Graphon::step(w.weights), Graphon::step(u.weights), KernelNorm::L1, n);
  auto out = open_out(dir / "results.csv");
  out << "label,measured,bound,pass\n";
  write_stability(out, "kernel", kernel_stability(w, u, mu0, l1, particle_options(c)));
}

void run_stability_initial(const ExperimentConfig& c, const std::filesystem::path& dir) {
  const std::size_t n = c.n.front(), m = c.m.front();
  const VelocityFieldSpec spec = field_spec(c, make_graphon(c.graphon, "graphon"), n);
  const MeasureFamily mu0 = initial_family(make_density(c.rho0), n, m, make_mode(c.init_mode), c.seeds.front());
  const ParticleEnsemble base = ParticleEnsemble::from_family(mu0);
  auto out = open_out(dir / "results.csv");
  out << "trial,measured,bound,pass\n";
  for (std::size_t t = 0; t < c.trials; ++t) {
    ParticleEnsemble moved = base;
    SplitMix64 rng(counter_hash(c.seeds.front(), t, 0x57ab));
    for (double& v : moved.phases) v += c.perturbation * (2.0 * rng.uniform() - 1.0);
    write_stability(out, std::to_string(t), initial_data_stability(spec, mu0, moved.family(), particle_options(c)));
  }
}

void run_distance(const ExperimentConfig& c, const std::filesystem::path& dir) {
  auto in_a = open_in(c.input);
  auto in_b = open_in(c.input_b);
  const MeasureFamily a = read_family_csv(in_a);
  const MeasureFamily b = read_family_csv(in_b);
  auto out = open_out(dir / "results.csv");
  out << "dbar\n" << num(dbar_common_refinement(a, b)) << '\n';
}

}  // namespace

// ---------------------------------------------------------------------------

ExperimentConfig load_config(const std::string& text, const std::vector<std::string>& overrides,
                             const std::string& experiment) {
  json doc;
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    doc = json::object();
  } else {
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
  }
  if (doc.is_object() && doc.contains("tool") && doc.contains("config")) doc = doc.at("config");
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  json resolved = config_object(ExperimentConfig{});
  for (const auto& [key, value] : doc.items()) {
    if (!setters().count(key)) throw ConfigError("unknown config key '" + key + "'");
    resolved[key] = value;
  }
  for (const auto& o : overrides) apply_override(resolved, o);
  if (!experiment.empty()) {
    if (doc.contains("experiment") && doc.at("experiment") != experiment) {
      throw ConfigError("config names experiment '" + doc.at("experiment").dump() + "' but '" + experiment +
                        "' was requested");
    }
    resolved["experiment"] = experiment;
  }

  ExperimentConfig c;
  try {
    for (const auto& [key, value] : resolved.items()) setters().at(key)(c, value);
    validate(c);
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  }
  return c;
}

std::string config_json(const ExperimentConfig& config) { return config_object(config).dump(2); }

std::string manifest_json(const ExperimentConfig& config) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["config"] = config_object(config);
  return j.dump(2);
}

void run_experiment(const ExperimentConfig& c, const std::filesystem::path& out_dir, std::ostream& log) {
  validate(c);
  std::filesystem::create_directories(out_dir);
  const std::string& e = c.experiment;
  if (e == "simulate") run_simulate(c, out_dir);
  else if (e == "sample_graph") run_sample_graph(c, out_dir);
  else if (e == "meanfield_particles") run_meanfield_particles(c, out_dir);
  else if (e == "meanfield_fv") run_meanfield_fv(c, out_dir);
  else if (e == "picard") run_picard(c, out_dir);
  else if (e == "convergence_main") run_convergence_main(c, out_dir);
  else if (e == "convergence_ave") run_convergence_ave(c, out_dir, log);
  else if (e == "stability_kernel") run_stability_kernel(c, out_dir);
  else if (e == "stability_initial") run_stability_initial(c, out_dir);
  else if (e == "distance") run_distance(c, out_dir);
  auto manifest = open_out(out_dir / "manifest.json");
  manifest << manifest_json(c) << '\n';
}

void render(const std::filesystem::path& matrix_csv, const std::filesystem::path& out_pgm) {
  auto in = open_in(matrix_csv);
  const SquareMatrix m = read_matrix_csv(in);
  auto out = open_out(out_pgm);
  write_pgm(out, pixel_picture(m));
}

}  // namespace gkm::tools
