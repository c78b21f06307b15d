#include "gkdv/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "gkdv/estimates/estimate_spec.hpp"
#include "gkdv/solver/picard.hpp"

namespace gkdv::cli {
namespace {

using nlohmann::json;

const std::vector<std::string> kProtocols = {"small-data", "criterion", "non-scattering"};
const std::vector<std::string> kDatums = {"gaussian", "soliton", "random", "file"};

json solver_defaults() {
  return json{
      {"alpha", 5.0},
      {"mu", 1.0},
      {"exploratory", false},
      {"datum", "gaussian"},
      {"amp", 0.05},
      {"width", 1.0},
      {"center", 0.0},
      {"speed", 1.0},
      {"threshold-scale", 0.0},
      {"decay", 1.0},
      {"band", std::size_t{0}},
      {"datum-file", ""},
      {"half-length", 64.0},
      {"points", std::size_t{256}},
      {"t-start", 0.0},
      {"t-end", 1.0},
      {"time-samples", std::size_t{0}},
      {"samples-per-unit", 128.0},
      {"rho", std::size_t{2}},
      {"tolerance", 1e-12},
      {"max-iterations", std::size_t{50}},
      {"delta", kCalibratedDelta},
      {"enforce-gate", true},
      {"reference-step", 1e-3},
      {"blowup-factor", 1e6},
      {"chunk", 0.0},
      {"max-boundary-mass", 1e-6},
      {"seed", std::size_t{1}},
      {"out", "gkdv_out"},
      {"trace", ""},
  };
}

json scatter_defaults(const std::string& protocol) {
  json d = solver_defaults();
  d.erase("t-start");
  d["protocol"] = protocol;
  d["solver"] = "picard";
  d["direction"] = 1;
  d["residual-r"] = 0.0;
  d["t-min"] = 1.0;
  d["chunk"] = 1.0;
  if (protocol == "small-data") {
    d.update(json{{"half-length", 2048.0}, {"points", std::size_t{8192}}, {"t-end", 64.0}, {"center", 1638.4},
                  {"bound-factor", 2.0}});
  } else if (protocol == "criterion") {
    d.update(json{{"half-length", 1024.0}, {"points", std::size_t{4096}}, {"t-end", 32.0}, {"center", 819.2}});
  } else {
    d.update(json{{"datum", "soliton"},
                  {"mu", -1.0},
                  {"speed", 0.25},
                  {"threshold-scale", 1.0},
                  {"amp", 1.0},
                  {"half-length", 64.0},
                  {"points", std::size_t{1024}},
                  {"t-end", 32.0},
                  {"solver", "reference"},
                  {"non-decay-fraction", 0.5},
                  {"lp-fraction", 0.5},
                  {"control-amp", 0.05},
                  {"control-half-length", 1024.0},
                  {"control-points", std::size_t{4096}},
                  {"control-center", 819.2}});
  }
  return d;
}

json command_defaults(const std::string& command, const std::string& variant) {
  if (command == "verify") {
    return json{{"id", variant.empty() ? "strichartz" : variant},
                {"ensemble", std::size_t{50}},
                {"seed", std::size_t{1}},
                {"half-length", 64.0},
                {"points", std::size_t{256}},
                {"t-end", 1.0},
                {"time-samples", std::size_t{0}},
                {"refine", true},
                {"max-drift", 0.10},
                {"out", "gkdv_out"}};
  }
  if (command == "solve") {
    json d = solver_defaults();
    d.update(json{{"t0", 0.0},
                  {"reference", true},
                  {"max-contraction", 0.5},
                  {"max-reference-error", 1e-6},
                  {"max-mass-drift", 1e-8},
                  {"max-energy-drift", 1e-6}});
    return d;
  }
  if (command == "scatter") return scatter_defaults(variant.empty() ? "small-data" : variant);
  if (command == "persist") {
    json d = solver_defaults();
    d.erase("t-start");
    d.update(json{{"half-length", 512.0},
                  {"points", std::size_t{2048}},
                  {"t-end", 16.0},
                  {"chunk", 1.0},
                  {"center", 409.6},
                  {"lhat-r", {1.8, 2.5}},
                  {"sobolev-sigma", {0.5, 1.0}},
                  {"max-growth", 3.0}});
    return d;
  }
  if (command == "counterexample") {
    return json{{"family", "fn"},         {"r", 4.0},
                {"n", json::array()},     {"p", 0.0},
                {"lattice", std::size_t{0}}, {"lhat-tolerance", 1e-10},
                {"closed-form-tolerance", 0.05}, {"limit-factor", 1.05},
                {"out", "gkdv_out"}};
  }
  if (command == "calibrate-delta") {
    return json{{"half-length", 64.0},          {"points", std::size_t{256}},
                {"alpha", 5.0},                 {"t-end", 1.0},
                {"samples-per-unit", 128.0},    {"factor-limit", 0.5},
                {"bisection-steps", std::size_t{14}}, {"max-iterations", std::size_t{40}},
                {"seed", std::size_t{1}},       {"random-data", std::size_t{2}},
                {"out", "gkdv_out"}};
  }
  throw ConfigError("command", "unknown command '" + command + "'");
}

std::string describe(const json& v) { return v.is_string() ? "\"" + v.get<std::string>() + "\"" : v.dump(); }

double parse_double(const std::string& path, const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::istringstream in(s);
    double x = 0.0;
    if (in >> x && (in >> std::ws).eof()) return x;
  }
  throw ConfigError(path, "expected a number, got " + describe(v));
}

json coerce(const std::string& path, const json& value, const json& like) {
  switch (like.type()) {
    case json::value_t::number_float: {
      const double x = parse_double(path, value);
      if (!std::isfinite(x)) throw ConfigError(path, "expected a finite number, got " + describe(value));
      return x;
    }
    case json::value_t::number_unsigned:
    case json::value_t::number_integer: {
      const double x = parse_double(path, value);
      const bool is_unsigned = like.type() == json::value_t::number_unsigned;
      if (!std::isfinite(x) || x != std::floor(x) || (is_unsigned && x < 0)) {
        throw ConfigError(path, std::string("expected a ") + (is_unsigned ? "non-negative " : "") +
                                    "integer, got " + describe(value));
      }
      if (is_unsigned) return static_cast<std::size_t>(x);
      return static_cast<long>(x);
    }
    case json::value_t::boolean: {
      if (value.is_boolean()) return value;
      if (value.is_string()) {
        const std::string s = value.get<std::string>();
        if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
        if (s == "false" || s == "0" || s == "no" || s == "off") return false;
      }
      throw ConfigError(path, "expected a boolean, got " + describe(value));
    }
    case json::value_t::string:
      if (!value.is_string()) throw ConfigError(path, "expected a string, got " + describe(value));
      return value;
    case json::value_t::array: {
      json items = json::array();
      if (value.is_array()) {
        items = value;
      } else if (value.is_string()) {
        std::istringstream in(value.get<std::string>());
        std::string tok;
        while (std::getline(in, tok, ',')) {
          if (!tok.empty()) items.push_back(tok);
        }
      } else if (value.is_number()) {
        items.push_back(value);
      } else {
        throw ConfigError(path, "expected a list of numbers, got " + describe(value));
      }
      json out = json::array();
      for (std::size_t i = 0; i < items.size(); ++i) {
        const std::string item_path = path + "[" + std::to_string(i) + "]";
        const double x = parse_double(item_path, items[i]);
        if (!std::isfinite(x)) throw ConfigError(item_path, "expected a finite number");
        out.push_back(x);
      }
      return out;
    }
    default:
      throw ConfigError(path, "unsupported schema type");
  }
}

class Checker {
 public:
  Checker(std::string command, const json& cfg) : command_(std::move(command)), cfg_(cfg) {}

  double num(const std::string& key) const { return cfg_.at(key).get<double>(); }
  std::size_t count(const std::string& key) const { return cfg_.at(key).get<std::size_t>(); }
  bool has(const std::string& key) const { return cfg_.contains(key); }

  void require(bool ok, const std::string& key, const std::string& message) const {
    if (!ok) throw ConfigError(command_ + "." + key, message);
  }
  void positive(const std::string& key) const {
    if (has(key)) require(num(key) > 0.0, key, "must be positive");
  }
  void non_negative(const std::string& key) const {
    if (has(key)) require(num(key) >= 0.0, key, "must be non-negative");
  }
  void one_of(const std::string& key, const std::vector<std::string>& options) const {
    if (!has(key)) return;
    const auto v = cfg_.at(key).get<std::string>();
    if (std::find(options.begin(), options.end(), v) != options.end()) return;
    std::string list;
    for (const auto& o : options) list += (list.empty() ? "" : ", ") + o;
    require(false, key, "must be one of {" + list + "}, got \"" + v + "\"");
  }
  void grid(const std::string& length_key, const std::string& points_key) const {
    positive(length_key);
    if (!has(points_key)) return;
    const auto n = count(points_key);
    require(n >= 8 && n % 2 == 0, points_key, "must be an even number >= 8");
  }

 private:
  std::string command_;
  const json& cfg_;
};

void validate_solver(const Checker& c, const json& cfg) {
  c.require(c.num("alpha") > 1.0, "alpha", "must exceed 1");
  if (!cfg.at("exploratory").get<bool>()) {
    const double a = c.num("alpha");
    c.require(a > 21.0 / 5.0 && a < 23.0 / 3.0, "alpha",
              "outside the well-posedness range (21/5, 23/3); set exploratory to run anyway");
  }
  c.one_of("datum", kDatums);
  c.non_negative("amp");
  c.positive("width");
  c.positive("speed");
  c.non_negative("threshold-scale");
  c.non_negative("decay");
  if (cfg.at("datum") == "file") c.require(!cfg.at("datum-file").get<std::string>().empty(), "datum-file",
                                           "required when datum is \"file\"");
  if (c.num("threshold-scale") > 0.0) c.require(c.num("mu") < 0.0, "threshold-scale",
                                                "an energy threshold exists only for focusing mu < 0");
  c.grid("half-length", "points");
  if (c.count("band") > 0) c.require(c.count("band") < c.count("points") / 2, "band", "must be below points / 2");
  const double t_start = c.has("t-start") ? c.num("t-start") : 0.0;
  c.require(c.num("t-end") > t_start, "t-end", "must exceed the interval start");
  c.require(c.count("time-samples") == 0 || c.count("time-samples") >= 8, "time-samples",
            "must be 0 (automatic) or at least 8");
  c.positive("samples-per-unit");
  c.require(c.count("rho") >= 2, "rho", "must be at least 2");
  c.positive("tolerance");
  c.require(c.count("max-iterations") >= 1, "max-iterations", "must be at least 1");
  c.positive("delta");
  c.positive("reference-step");
  c.require(c.num("blowup-factor") > 1.0, "blowup-factor", "must exceed 1");
  c.non_negative("chunk");
  c.non_negative("max-boundary-mass");
  if (c.has("t0")) c.require(c.num("t0") >= t_start && c.num("t0") <= c.num("t-end"), "t0",
                             "must lie in [t-start, t-end]");
}

void validate(const std::string& command, json& cfg) {
  const Checker c(command, cfg);
  if (command == "verify") {
    c.grid("half-length", "points");
    c.require(c.count("ensemble") >= 1, "ensemble", "must be at least 1");
    c.positive("t-end");
    c.require(c.count("time-samples") == 0 || c.count("time-samples") >= 8, "time-samples",
              "must be 0 (automatic) or at least 8");
    c.positive("max-drift");
    return;
  }
  if (command == "counterexample") {
    c.one_of("family", {"fn", "gn"});
    for (std::size_t i = 0; i < cfg.at("n").size(); ++i) {
      const double n = cfg.at("n")[i].get<double>();
      c.require(n >= 1.0 && n == std::floor(n), "n[" + std::to_string(i) + "]", "must be a positive integer");
    }
    c.non_negative("p");
    c.positive("lhat-tolerance");
    c.positive("closed-form-tolerance");
    c.require(c.num("limit-factor") >= 1.0, "limit-factor", "must be at least 1");
    return;
  }
  if (command == "calibrate-delta") {
    c.grid("half-length", "points");
    c.require(c.num("alpha") > 1.0, "alpha", "must exceed 1");
    c.positive("t-end");
    c.positive("samples-per-unit");
    c.require(c.num("factor-limit") > 0.0 && c.num("factor-limit") < 1.0, "factor-limit", "must lie in (0, 1)");
    c.require(c.count("bisection-steps") >= 1, "bisection-steps", "must be at least 1");
    c.require(c.count("max-iterations") >= 2, "max-iterations", "must be at least 2");
    return;
  }
  validate_solver(c, cfg);
  if (command == "solve") {
    c.positive("max-contraction");
    c.positive("max-reference-error");
    c.positive("max-mass-drift");
    c.positive("max-energy-drift");
    return;
  }
  if (command == "persist") {
    c.require(c.num("chunk") > 0.0, "chunk", "must be positive");
    const auto& lr = cfg.at("lhat-r");
    for (std::size_t i = 0; i < lr.size(); ++i) {
      c.require(lr[i].get<double>() >= 1.0, "lhat-r[" + std::to_string(i) + "]", "must be at least 1");
    }
    const auto& ss = cfg.at("sobolev-sigma");
    for (std::size_t i = 0; i < ss.size(); ++i) {
      const double s = ss[i].get<double>();
      c.require(s > -1.0 && s < c.num("alpha"), "sobolev-sigma[" + std::to_string(i) + "]",
                "must lie in (-1, alpha)");
    }
    c.require(c.num("max-growth") >= 1.0, "max-growth", "must be at least 1");
    return;
  }
  c.one_of("protocol", kProtocols);
  c.one_of("solver", {"picard", "reference"});
  const long direction = cfg.at("direction").get<long>();
  c.require(direction == 1 || direction == -1, "direction", "must be 1 or -1");
  c.require(c.num("residual-r") == 0.0 || c.num("residual-r") >= 1.0, "residual-r",
            "must be 0 (critical exponent) or at least 1");
  c.positive("t-min");
  c.require(c.num("t-end") >= 4.0 * c.num("t-min"), "t-end", "must be at least 4 t-min for three dyadic checkpoints");
  if (cfg.at("solver") == "picard") c.require(c.num("chunk") > 0.0, "chunk", "must be positive for the picard solver");
  if (cfg.at("protocol") == "small-data") c.positive("bound-factor");
  if (cfg.at("protocol") == "non-scattering") {
    c.require(c.num("mu") < 0.0, "mu", "the non-scattering protocol needs focusing mu < 0");
    c.positive("non-decay-fraction");
    c.positive("lp-fraction");
    c.non_negative("control-amp");
    c.grid("control-half-length", "control-points");
  }
}

const std::set<std::string> kDriftRelaxed = {"inhom_linf", "inhom_xy", "nonlinear_i", "nonlinear_ii", "chain_rule"};

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"verify",         "solve",           "scatter",
                                                 "counterexample", "calibrate-delta", "persist"};
  return names;
}

json default_config(const std::string& command, const std::string& variant) {
  if (command == "verify" && !variant.empty()) {
    json d = command_defaults(command, variant);
    const auto kind = resolve_estimate(parse_estimate(variant, json::object()));
    d.update(estimate_params(kind));
    return d;
  }
  return command_defaults(command, variant);
}

std::vector<std::string> flag_names(const std::string& command) {
  std::set<std::string> keys;
  auto add = [&keys](const json& d) {
    for (const auto& [k, v] : d.items()) keys.insert(k);
  };
  if (command == "scatter") {
    for (const auto& p : kProtocols) add(scatter_defaults(p));
  } else {
    add(command_defaults(command, ""));
  }
  if (command == "verify") {
    for (const auto& id : estimate_ids()) add(estimate_params(resolve_estimate(parse_estimate(id, json::object()))));
    keys.insert("p");
  }
  return {keys.begin(), keys.end()};
}

json resolve_config(const std::string& command, const json& file, const json& flags) {
  if (std::find(command_names().begin(), command_names().end(), command) == command_names().end()) {
    throw ConfigError("command", "unknown command '" + command + "'");
  }
  if (!file.is_object()) throw ConfigError(command, "config document must be a JSON object");
  json merged = file;
  if (merged.contains("command")) {
    if (merged["command"] != command) {
      throw ConfigError("command", "config is for " + describe(merged["command"]) + ", not \"" + command + "\"");
    }
    merged.erase("command");
  }
  for (const auto& [k, v] : flags.items()) merged[k] = v;

  std::string variant;
  const char* variant_key = command == "verify" ? "id" : command == "scatter" ? "protocol" : nullptr;
  if (variant_key && merged.contains(variant_key)) {
    const std::string path = command + "." + variant_key;
    if (!merged[variant_key].is_string()) throw ConfigError(path, "expected a string, got " + describe(merged[variant_key]));
    variant = merged[variant_key].get<std::string>();
    if (command == "verify") {
      const auto& ids = estimate_ids();
      if (std::find(ids.begin(), ids.end(), variant) == ids.end()) {
        std::string list;
        for (const auto& id : ids) list += (list.empty() ? "" : ", ") + id;
        throw ConfigError(path, "unknown estimate id \"" + variant + "\"; expected one of {" + list + "}");
      }
    } else if (std::find(kProtocols.begin(), kProtocols.end(), variant) == kProtocols.end()) {
      throw ConfigError(path, "must be one of {small-data, criterion, non-scattering}, got \"" + variant + "\"");
    }
  }

  json resolved = command_defaults(command, variant);
  json estimate_args = json::object();
  for (const auto& [k, v] : merged.items()) {
    const std::string path = command + "." + k;
    if (resolved.contains(k)) {
      resolved[k] = coerce(path, v, resolved[k]);
    } else if (command == "verify") {
      estimate_args[k] = v;
    } else if (command == "scatter" && std::ranges::binary_search(flag_names("scatter"), k)) {
      throw ConfigError(path, "not used by protocol \"" + resolved["protocol"].get<std::string>() + "\"");
    } else {
      throw ConfigError(path, "unknown key");
    }
  }
  validate(command, resolved);

  if (command == "verify") {
    const std::string id = resolved["id"];
    try {
      const auto kind = resolve_estimate(parse_estimate(id, estimate_args));
      resolved.update(estimate_params(kind));
    } catch (const std::invalid_argument& e) {
      const std::string what = e.what();
      std::string key = estimate_args.size() == 1 ? estimate_args.begin().key() : id;
      for (const auto& [k, v] : estimate_args.items()) {
        if (what.find("'" + k + "'") != std::string::npos || what.find(" " + k + " = ") != std::string::npos) key = k;
      }
      throw ConfigError(command + "." + key, e.what());
    }
    if (!merged.contains("max-drift") && kDriftRelaxed.count(id)) resolved["max-drift"] = 0.15;
  }
  return resolved;
}

}  // namespace gkdv::cli
