#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace gkdv::cli {

/// verify, solve, scatter, counterexample, calibrate-delta, persist.
const std::vector<std::string>& command_names();

/// Invalid configuration; key_path is "<command>.<key>" (with "[i]" for list entries).
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key_path, const std::string& message)
      : std::invalid_argument(key_path + ": " + message), key_path(std::move(key_path)) {}

  std::string key_path;
};

/// Defaults of a command. `variant` selects the estimate id (verify) or the
/// protocol (scatter); empty selects the command's default variant.
nlohmann::json default_config(const std::string& command, const std::string& variant = "");

/// Every kebab-case key a command accepts on the command line.
std::vector<std::string> flag_names(const std::string& command);

/// Merges a flat JSON document with flag values (flags win), checks every key
/// against the command's schema and returns the full resolved configuration.
/// Flag values may be strings; they are converted to the type of the default.
nlohmann::json resolve_config(const std::string& command, const nlohmann::json& file,
                              const nlohmann::json& flags);

}  // namespace gkdv::cli
