#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

#include "gkdv/cli/commands.hpp"
#include "gkdv/cli/config.hpp"

namespace gkdv::cli {
namespace {

using nlohmann::json;

const std::map<std::string, std::string> kDescriptions = {
    {"verify", "Check one inequality on a random ensemble with refinement"},
    {"solve", "Picard solve with reference cross-check and conservation diagnostics"},
    {"scatter", "Scattering protocols: small-data, criterion, non-scattering"},
    {"counterexample", "Norm tables of the f_n / g_n counterexample families"},
    {"calibrate-delta", "Calibrate the smallness threshold of the contraction gate"},
    {"persist", "Track auxiliary norms along a small-data run"},
};

json read_config_file(const std::string& command, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(command + ".config", "cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(command + ".config", std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"gkdv_lab: dispersive estimates and gKdV experiments"};
  app.require_subcommand(1);
  std::map<std::string, std::string> config_paths;
  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::vector<std::pair<std::string, CLI::Option*>>> options;
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name, kDescriptions.at(name));
    sub->add_option("--config", config_paths[name], "Flat JSON config; flags override its keys");
    for (const auto& key : flag_names(name)) {
      auto* opt = sub->add_option("--" + key, values[name][key]);
      options[name].emplace_back(key, opt);
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    json file = json::object();
    if (!config_paths[command].empty()) file = read_config_file(command, config_paths[command]);
    json flags = json::object();
    for (const auto& [key, opt] : options[command]) {
      if (opt->count() > 0) flags[key] = values[command][key];
    }
    const json config = resolve_config(command, file, flags);
    const Outcome outcome = execute(command, config);
    write_outputs(outcome, config);
    const std::string dir = config.at("out");
    out << command << ": " << outcome.report.at("status").get<std::string>() << " (report: " << dir
        << "/report.json)\n";
    for (const auto& check : outcome.report.at("checks")) {
      if (!check.at("passed").get<bool>()) err << "check failed: " << check.dump() << "\n";
    }
    if (outcome.report.at("result").contains("blowup")) {
      err << "numerical blowup: " << outcome.report.at("result").at("blowup").dump() << "\n";
    }
    return outcome.exit_code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace gkdv::cli
