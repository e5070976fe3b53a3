#pragma once

// Named scenarios: resolved parameters, sampled state, external fields and
// the closed-form references the verification suites compare against.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "spingeo/scenarios/states.hpp"

namespace spingeo {

using ParamMap = std::map<std::string, double>;

struct ScenarioSpec {
  std::string name;
  ParamMap params;  ///< overrides; anything absent takes the default
};

struct Scenario {
  std::string name;
  GridSpec grid;
  SpinorField psi;
  ExternalFields ext;
  PhysicalConstants constants;
  ParamMap params;      ///< every parameter, defaults filled in
  ParamMap references;  ///< resolution-independent closed-form values
};

inline const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{
      "plane_wave", "two_component_plane_wave", "spin_helix", "gaussian", "gaussian_texture",
      "larmor",     "spin_circle",              "spin_helix_lines", "random_texture"};
  return names;
}

namespace detail {

inline void require_known_scenario(const std::string& name) {
  const auto& n = scenario_names();
  if (std::find(n.begin(), n.end(), name) == n.end())
    throw InvalidArgument("unknown scenario '" + name + "'");
}

/// Box size and dimension first, since the other defaults scale with L.
inline ParamMap box_defaults(const std::string& name) {
  if (name == "gaussian" || name == "gaussian_texture") return {{"dims", 1}, {"L", 16.0}};
  if (name == "spin_circle" || name == "spin_helix_lines") return {{"dims", 2}, {"L", 4.0}};
  if (name == "random_texture") return {{"dims", 3}, {"L", 4.0}};
  return {{"dims", 1}, {"L", 2 * states::pi}};
}

}  // namespace detail

/// Full parameter set for a scenario. `L` may be overridden, and the
/// wavelength-like defaults follow it.
inline ParamMap scenario_defaults(const std::string& name, const ParamMap& overrides = {}) {
  detail::require_known_scenario(name);
  ParamMap p = detail::box_defaults(name);
  if (auto it = overrides.find("L"); it != overrides.end()) p["L"] = it->second;
  const double L = p["L"];
  const double tau = 2 * states::pi;
  if (name == "plane_wave") p["k"] = tau * 2 / L;
  if (name == "two_component_plane_wave") {
    p["k"] = tau * 2 / L;
    p["alpha"] = 0.3;
  }
  if (name == "spin_helix") {
    p["q"] = tau * 4 / L;
    p["envelope"] = 0.0;
  }
  if (name == "gaussian" || name == "gaussian_texture") p["sigma0"] = L / 16;
  if (name == "gaussian") p["k0"] = 0.0;
  if (name == "larmor") {
    p["B0"] = 1.0;
    p["charge"] = 1.0;
    p["light_speed"] = 1.0;
  }
  if (name == "spin_circle" || name == "spin_helix_lines") {
    p["r0"] = L / 4;
    p["width"] = L / 16;
  }
  if (name == "spin_helix_lines") p["pitch"] = L / 8;
  if (name == "random_texture") {
    p["seed"] = 1;
    p["modes"] = 4;
  }
  for (const auto& [k, v] : overrides) {
    if (!p.count(k)) throw InvalidArgument("scenario " + name + ": unknown parameter '" + k + "'");
    if (!std::isfinite(v)) throw InvalidArgument("scenario " + name + ": parameter '" + k + "' is not finite");
    p[k] = v;
  }
  return p;
}

/// Samples the scenario with `resolution` points on every active axis.
inline Scenario instantiate(const ScenarioSpec& spec, int resolution) {
  Scenario s;
  s.name = spec.name;
  s.params = scenario_defaults(spec.name, spec.params);
  const ParamMap& p = s.params;
  auto at = [&](const char* k) { return p.at(k); };
  auto fail = [&](const std::string& why) { throw InvalidArgument("scenario " + spec.name + ": " + why); };

  const double dimsd = at("dims");
  if (dimsd != std::round(dimsd) || dimsd < 1 || dimsd > 3) fail("dims must be 1, 2 or 3");
  if (!(at("L") > 0)) fail("L must be positive");
  if (resolution < 8) fail("resolution must be at least 8 points per axis");
  s.grid = GridSpec::cube(static_cast<int>(dimsd), at("L"), resolution);
  const GridSpec& g = s.grid;
  const double h = g.spacing(0);
  ParamMap& ref = s.references;

  auto resolvable = [&](double k, const char* what) {
    if (k != 0.0 && 2 * states::pi / std::abs(k) < 4 * h)
      fail(std::string(what) + " wavelength is below 4 grid spacings");
  };
  auto periodic = [&](double k, const char* what) {
    const double n = k * g.extent(0) / (2 * states::pi);
    if (std::abs(n - std::round(n)) > 1e-9) fail(std::string(what) + " is not commensurate with the box");
  };

  const std::string& n = spec.name;
  if (n == "plane_wave" || n == "two_component_plane_wave") {
    const double k = at("k");
    resolvable(k, "plane-wave");
    periodic(k, "k");
    s.psi = n == "plane_wave" ? states::plane_wave(g, k) : states::two_component_plane_wave(g, k, at("alpha"));
    ref["velocity_x"] = PhysicalConstants::hbar * k / PhysicalConstants::mass;
    ref["kappa"] = 0.0;
    ref["tau"] = 0.0;
    if (n == "plane_wave") {
      ref["triad_rotation_rate"] = 2 * k;
      ref["frame_divergence_amplitude"] = 2 * k;
    }
  } else if (n == "spin_helix") {
    const double q = at("q");
    resolvable(q, "helix");
    if (std::abs(at("envelope")) >= 1) fail("envelope must lie in (-1, 1)");
    s.psi = states::spin_helix(g, q, at("envelope"));
    ref["spin_wavenumber"] = q;
    ref["spin_magnitude"] = PhysicalConstants::hbar / 2;
    ref["velocity_x"] = 0.0;
  } else if (n == "gaussian" || n == "gaussian_texture") {
    const double s0 = at("sigma0");
    if (!(s0 >= 2 * h)) fail("sigma0 must span at least 2 grid spacings");
    if (!(8 * s0 <= at("L"))) fail("sigma0 must be at most L/8 so the packet fits the box");
    s.psi = n == "gaussian" ? states::gaussian(g, s0, Spinor(1, 0), at("k0")) : states::gaussian_texture(g, s0);
    ref["sigma0"] = s0;
    if (n == "gaussian") {
      const double t = 2 * PhysicalConstants::mass * s0 * s0 / PhysicalConstants::hbar;
      ref["dispersion_time"] = t;
      ref["sigma_at_dispersion_time"] = s0 * std::sqrt(2.0);
      ref["velocity_x"] = PhysicalConstants::hbar * at("k0") / PhysicalConstants::mass;
    }
  } else if (n == "larmor") {
    s.constants = PhysicalConstants(at("charge"), at("light_speed"));
    s.psi = SpinorField(g, Spinor(1.0, 1.0) / std::sqrt(2.0));
    s.ext.B = VectorField(g, Vec3(0, 0, at("B0")));
    const double w = s.constants.gyro() * at("B0");
    ref["precession_frequency"] = w;
    if (w != 0.0) ref["precession_period"] = 2 * states::pi / std::abs(w);
  } else if (n == "spin_circle" || n == "spin_helix_lines") {
    if (g.dims() < 2) fail("needs at least 2 dimensions");
    const double r0 = at("r0"), w = at("width");
    if (!(w >= 2 * h)) fail("ring width must span at least 2 grid spacings");
    if (!(r0 > 3 * w && r0 + 3 * w <= at("L") / 2)) fail("ring must sit inside the box, clear of the axis");
    if (n == "spin_circle") {
      s.psi = states::spin_circle(g, r0, w);
      ref["kappa"] = 1 / r0;
      ref["tau"] = 0.0;
    } else {
      const double b = at("pitch");
      s.psi = states::spin_helix_lines(g, r0, w, b);
      ref["kappa"] = r0 / (r0 * r0 + b * b);
      ref["tau"] = b / (r0 * r0 + b * b);
    }
    ref["radius"] = r0;
  } else if (n == "random_texture") {
    const double seed = at("seed"), modes = at("modes");
    if (seed < 0 || seed != std::round(seed)) fail("seed must be a non-negative integer");
    if (modes < 1 || modes != std::round(modes)) fail("modes must be a positive integer");
    s.psi = states::random_texture(g, static_cast<unsigned>(seed), static_cast<int>(modes));
  }
  return s;
}

}  // namespace spingeo
