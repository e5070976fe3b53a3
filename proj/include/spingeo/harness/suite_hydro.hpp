#pragma once

// Quantum hydrodynamics: residuals of the continuity, momentum and spin
// equations under refinement, Larmor frequency and free dispersion.

#include <cmath>

#include "spingeo/harness/suite_common.hpp"
#include "spingeo/hydro/forces.hpp"

namespace spingeo::harness {

namespace detail {

struct HydroFamily {
  std::string name;
  ScenarioSpec spec;
  double T;
  double B = 0.0;  ///< uniform field along z, Zeeman coupling only
  bool spin_exact_ok;
  bool momentum = true;
};

inline std::vector<HydroFamily> hydro_families() {
  return {{"gaussian", {"gaussian", {}}, 0.2, 0.0, true},
          {"gaussian_texture", {"gaussian_texture", {}}, 0.2, 0.0, false},
          // a periodic box carries no potential for a uniform field, so the orbital
          // force is absent from the evolution and only the spin equation applies
          {"gaussian_texture_field", {"gaussian_texture", {}}, 0.2, 0.5, false, false},
          {"spin_helix", {"spin_helix", {{"L", 16.0}, {"envelope", 0.3}}}, 0.5, 0.0, false}};
}

}  // namespace detail

inline VerificationReport verify_hydro(const VerifyOptions& o) {
  VerificationReport r{"hydro"};
  // Gaussian tails are pre-asymptotic at 64 points.
  const auto res = ladder(o, {128, 256, 512});
  r.environment["hydro.resolutions"] = res;

  for (const auto& fam : detail::hydro_families()) {
    std::vector<ResolutionSample> cont, mom, spin;
    for (int n : res) {
      Scenario s = instantiate(fam.spec, n);
      PhysicalConstants k = s.constants;
      if (fam.B != 0.0) {
        k = PhysicalConstants(1.0, 1.0);
        s.ext.B = VectorField(s.grid, Vec3(0, 0, fam.B));
      }
      // snapshot interval ~ dx keeps the centred time difference second order
      const auto run = evolve_window(s.psi, s.ext, k, fam.T, 4 * n / res.front());
      // far tails sit at the mask edge, where log-density derivatives blow up
      const auto h = hydro_residuals(run, s.ext, k, 1e-3);
      const double dx = s.grid.spacing(0);
      cont.push_back({dx, continuity_residual(run, s.ext, k).max()});
      mom.push_back({dx, h.momentum.max()});
      spin.push_back({dx, h.spin.max()});
    }
    const std::string p = "hydro." + fam.name;
    r.checks.push_back(slope_check(p + ".continuity", cont, 1.8, 0.0, 1e-12, false, "L2 residual, max over snapshots"));
    if (fam.momentum)
      r.checks.push_back(slope_check(p + ".momentum", mom, 1.8, 0.0, 1e-12, false, "L2 over rho >= 1e-3 max, max over snapshots"));
    r.checks.push_back(slope_check(p + ".spin", spin, 1.8, 0.0, 1e-12, fam.spin_exact_ok,
                                   "L2 over rho >= 1e-3 max, max over snapshots"));
  }

  {
    // azimuth of the mean spin, unwrapped over one period
    const auto s = instantiate({"larmor", {}}, 16);
    const double w = s.references.at("precession_frequency");
    const double T = s.references.at("precession_period");
    const int steps = 2000;
    const auto run = evolve(s.psi, s.ext, s.constants, {T / steps, steps, 10});
    double turned = 0.0, prev = 0.0;
    for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
      const Vec3 m = density_spin(run.snapshots[i]).s[0];
      const double a = std::atan2(m[1], m[0]);
      if (i > 0) turned += std::remainder(a - prev, 2 * std::numbers::pi);
      prev = a;
    }
    const double measured = std::abs(turned) / run.times.back();
    r.checks.push_back(bound_check("hydro.larmor_frequency", std::abs(measured - w) / w, 1e-3 * o.tolerance_scale,
                                   "relative to e B / m c"));
  }

  {
    const auto s = instantiate({"gaussian", {{"L", 32.0}}}, 512);
    const double s0 = s.references.at("sigma0");
    const auto run = evolve_window(s.psi, s.ext, s.constants, s.references.at("dispersion_time"), 40);
    double worst = 0.0;
    for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
      const double t = run.times[i];
      const double want = s0 * s0 * (1 + std::pow(t / (2 * s0 * s0), 2));
      worst = std::max(worst, std::abs(position_variance(run.snapshots[i]) - want) / want);
    }
    r.checks.push_back(bound_check("hydro.dispersion", worst, 1e-2 * o.tolerance_scale,
                                   "variance against the free spreading law over [0, 2 sigma0^2]"));
  }
  return r;
}

}  // namespace spingeo::harness
