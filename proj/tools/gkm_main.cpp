#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "experiments.hpp"

namespace {

std::string slurp(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gkm::tools::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RunArgs {
  std::string config;
  std::vector<std::string> overrides;
  std::string output = "out";
  bool print_config = false;
};

void add_run_options(CLI::App* cmd, RunArgs& args) {
  cmd->add_option("-c,--config", args.config, "JSON config file (a config object or an emitted manifest)");
  cmd->add_option("-s,--set", args.overrides, "Override a config key, e.g. --set n=[4,8] --set graphon.p=0.3");
  cmd->add_option("-o,--output", args.output, "Output directory")->capture_default_str();
  cmd->add_flag("--print-config", args.print_config, "Print the resolved config and exit");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kuramoto oscillators on graphons: simulation and mean-field experiments", "gkm"};
  app.set_version_flag("--version", gkm::tools::kToolVersion);
  app.require_subcommand(1);

  RunArgs args;
  std::string experiment;

  auto* run_cmd = app.add_subcommand("run", "Run the experiment named in the config");
  add_run_options(run_cmd, args);
  for (const auto& name : gkm::tools::experiment_names()) {
    auto* cmd = app.add_subcommand(name, "Run the " + name + " experiment");
    add_run_options(cmd, args);
    cmd->callback([&experiment, name] { experiment = name; });
  }

  std::string render_in, render_out;
  auto* render_cmd = app.add_subcommand("render", "Render a matrix CSV as a binary PGM image");
  render_cmd->add_option("input", render_in, "Matrix CSV")->required();
  render_cmd->add_option("output", render_out, "Output PGM path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (render_cmd->parsed()) {
      gkm::tools::render(render_in, render_out);
      return 0;
    }
    if (run_cmd->parsed() && args.config.empty()) {
      throw gkm::tools::ConfigError("run requires --config");
    }
    const auto config = gkm::tools::load_config(slurp(args.config), args.overrides, experiment);
    if (args.print_config) {
      std::cout << gkm::tools::config_json(config) << '\n';
      return 0;
    }
    gkm::tools::run_experiment(config, args.output, std::cerr);
    std::cout << "wrote " << args.output << "/results.csv\n";
  } catch (const gkm::tools::ConfigError& e) {
    std::cerr << "gkm: config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "gkm: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
