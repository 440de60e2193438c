#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gkm::tools {

inline constexpr const char* kToolName = "gkm";
inline constexpr const char* kToolVersion = "0.1.0";

/// Invalid configuration: unknown key, wrong type or out-of-range value.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{
      "simulate",         "sample_graph",     "meanfield_particles", "meanfield_fv",
      "picard",           "convergence_main", "convergence_ave",     "stability_kernel",
      "stability_initial", "distance"};
  return names;
}

/// Fully resolved experiment description. Nested specs (graphon, coupling,
/// rho0, omega) are kept as JSON text and validated on load.
struct ExperimentConfig {
  std::string experiment;
  std::string graphon = R"({"kind":"constant","p":0.5})";
  std::optional<std::string> graphon_b;
  std::string coupling = R"({"kind":"sine"})";
  std::string rho0 = R"({"kind":"von_mises","kappa":2.0,"mean":0.0,"twist":0.0})";
  std::string omega = R"("zero")";
  std::vector<std::size_t> n{8};
  std::vector<std::size_t> m{64};
  double T = 1.0;
  double dt = 0.01;
  std::size_t record_every = 1;
  double K = 1.0;
  std::string init_mode = "quantile";
  std::string sampling = "deterministic";
  std::vector<std::uint64_t> seeds{0};
  double metric_alpha = 3.0;
  double tol = 1e-4;
  std::size_t max_iter = 50;
  std::size_t g = 256;
  std::size_t reference_n = 0;  // 0: 2 * max n
  std::size_t reference_m = 0;  // 0: 4 * max m
  std::size_t trials = 10;
  double perturbation = 0.1;
  std::string input;
  std::string input_b;
  bool pgm = false;
};

/// Parses a config document (a bare config object or an emitted manifest),
/// applies "key=value" overrides (dotted keys reach into nested objects;
/// values are parsed as JSON when possible, else taken as strings), then
/// validates. `experiment`, when non-empty, must agree with the document.
ExperimentConfig load_config(const std::string& text, const std::vector<std::string>& overrides = {},
                             const std::string& experiment = "");

/// Canonical JSON of the resolved config.
std::string config_json(const ExperimentConfig& config);

/// {"tool", "version", "config"} document written next to the results.
std::string manifest_json(const ExperimentConfig& config);

/// Runs the experiment, writing results.csv, manifest.json and any extra
/// files into `out_dir`. Warnings go to `log`.
void run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

/// Matrix CSV to binary PGM.
void render(const std::filesystem::path& matrix_csv, const std::filesystem::path& out_pgm);

}  // namespace gkm::tools
