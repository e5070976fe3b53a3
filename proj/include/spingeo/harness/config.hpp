#pragma once

// Run configuration: a sectioned key-value file.
//
//   [scenario]  name = gaussian, plus any parameter of that scenario
//   [grid]      resolutions = 64,128,256
//   [evolve]    dt, steps, stride, duration
//   [verify]    suites = all, tolerance_scale = 1, inject_fault = none|sign|scale
//   [output]    dir = out
//   [physics]   nu, charge, light_speed
//
// Unknown sections or keys are errors.

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "spingeo/scenarios/catalog.hpp"

namespace spingeo::harness {

struct RunConfig {
  ScenarioSpec scenario{"gaussian", {}};
  std::vector<int> resolutions;  ///< empty: each command's default
  double dt = 0.0;               ///< 0: derived from the grid, dt <= dx^2 / 2
  int steps = 0;
  int stride = 1;
  double duration = 0.0;  ///< alternative to dt * steps
  std::vector<std::string> suites{"all"};
  double tolerance_scale = 1.0;
  std::string inject_fault = "none";
  std::filesystem::path out_dir = "out";
  std::optional<double> nu, charge, light_speed;
};

inline std::vector<int> parse_resolutions(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used == 0 || used != item.size() || v < 8)
      throw ConfigError("resolution '" + item + "' is not an integer >= 8");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty resolution list");
  return out;
}

namespace detail {

inline double number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v))
    throw ConfigError("key '" + key + "': '" + text + "' is not a number");
  return v;
}

inline int integer(const std::string& key, const std::string& text) {
  const double v = number(key, text);
  if (v != std::round(v) || std::abs(v) > 1e9) throw ConfigError("key '" + key + "': expected an integer");
  return static_cast<int>(v);
}

inline std::vector<std::string> words(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string w;
  while (std::getline(ss, w, ',')) {
    const auto a = w.find_first_not_of(" \t"), b = w.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(w.substr(a, b - a + 1));
  }
  return out;
}

}  // namespace detail

inline RunConfig parse_run_config(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  RunConfig cfg;
  const std::map<std::string, std::set<std::string>> known{
      {"grid", {"resolutions"}},
      {"evolve", {"dt", "steps", "stride", "duration"}},
      {"verify", {"suites", "tolerance_scale", "inject_fault"}},
      {"output", {"dir"}},
      {"physics", {"nu", "charge", "light_speed"}}};

  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw ConfigError("key '" + section + "' lies outside any section");
    const std::string sec = section;
    if (sec == "scenario") {
      ParamMap params;
      std::optional<std::string> name;
      for (const auto& [key, v] : body) {
        const std::string val = v.get_value<std::string>();
        if (key == "name")
          name = val;
        else
          params[key] = detail::number("scenario." + key, val);
      }
      if (!name) throw ConfigError("section [scenario] needs a 'name'");
      try {
        scenario_defaults(*name, params);
      } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("[scenario] ") + e.what());
      }
      cfg.scenario = {*name, params};
      continue;
    }
    const auto it = known.find(sec);
    if (it == known.end()) throw ConfigError("unknown section [" + sec + "]");
    for (const auto& [key, v] : body) {
      const std::string full = sec + "." + key;
      if (!it->second.count(key)) throw ConfigError("unknown key '" + full + "'");
      const std::string val = v.get_value<std::string>();
      if (full == "grid.resolutions") {
        try {
          cfg.resolutions = parse_resolutions(val);
        } catch (const ConfigError& e) {
          throw ConfigError("key '" + full + "': " + e.what());
        }
      } else if (full == "evolve.dt") {
        cfg.dt = detail::number(full, val);
        if (!(cfg.dt > 0)) throw ConfigError("key '" + full + "': must be positive");
      } else if (full == "evolve.steps") {
        cfg.steps = detail::integer(full, val);
        if (cfg.steps < 1) throw ConfigError("key '" + full + "': must be positive");
      } else if (full == "evolve.stride") {
        cfg.stride = detail::integer(full, val);
        if (cfg.stride < 1) throw ConfigError("key '" + full + "': must be positive");
      } else if (full == "evolve.duration") {
        cfg.duration = detail::number(full, val);
        if (!(cfg.duration > 0)) throw ConfigError("key '" + full + "': must be positive");
      } else if (full == "verify.suites") {
        cfg.suites = detail::words(val);
        if (cfg.suites.empty()) throw ConfigError("key '" + full + "': empty");
      } else if (full == "verify.tolerance_scale") {
        cfg.tolerance_scale = detail::number(full, val);
        if (!(cfg.tolerance_scale > 0)) throw ConfigError("key '" + full + "': must be positive");
      } else if (full == "verify.inject_fault") {
        if (val != "none" && val != "sign" && val != "scale")
          throw ConfigError("key '" + full + "': expected none, sign or scale");
        cfg.inject_fault = val;
      } else if (full == "output.dir") {
        cfg.out_dir = val;
      } else if (full == "physics.nu") {
        cfg.nu = detail::number(full, val);
        if (*cfg.nu == 0) throw ConfigError("key '" + full + "': must be nonzero");
      } else if (full == "physics.charge") {
        cfg.charge = detail::number(full, val);
      } else if (full == "physics.light_speed") {
        cfg.light_speed = detail::number(full, val);
        if (!(*cfg.light_speed > 0)) throw ConfigError("key '" + full + "': must be positive");
      }
    }
  }
  return cfg;
}

inline RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  return parse_run_config(in);
}

inline InjectedFault fault_of(const RunConfig& cfg) {
  if (cfg.inject_fault == "sign") return {1.0, -1.0};
  if (cfg.inject_fault == "scale") return {2.0, 1.0};
  return {};
}

/// Instantiates the configured scenario, folding physics overrides into the
/// scenario parameters where it has them and into the constants otherwise.
inline Scenario make_scenario(const RunConfig& cfg, int resolution) {
  ScenarioSpec spec = cfg.scenario;
  const ParamMap defaults = scenario_defaults(spec.name);
  auto fold = [&](const char* key, const std::optional<double>& v) {
    if (v && defaults.count(key) && !spec.params.count(key)) spec.params[key] = *v;
  };
  fold("charge", cfg.charge);
  fold("light_speed", cfg.light_speed);
  Scenario s = instantiate(spec, resolution);
  if (!defaults.count("charge") && (cfg.charge || cfg.light_speed))
    s.constants = PhysicalConstants(cfg.charge.value_or(s.constants.charge),
                                    cfg.light_speed.value_or(s.constants.light_speed));
  return s;
}

}  // namespace spingeo::harness
