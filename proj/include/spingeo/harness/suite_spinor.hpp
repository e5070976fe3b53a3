#pragma once

// Suites over the spinor observables, the bilinear triad and the
// Frenet/streamline apparatus.

#include "spingeo/harness/suite_common.hpp"
#include "spingeo/spinor/conventions.hpp"
#include "spingeo/triad/streamline.hpp"

namespace spingeo::harness {

namespace detail {

/// The three state families the guidance checks run on.
struct Family {
  std::string name;
  std::function<SpinorField(int)> make;
  Mask (*core)(const SpinorField&);
};

inline Mask everywhere(const SpinorField&) { return {}; }
inline Mask dense_core(const SpinorField& psi) { return core_mask(psi); }

inline constexpr double kTextureTime = 0.25;

inline std::vector<Family> guidance_families() {
  return {
      {"plane_wave", [](int n) { return instantiate({"plane_wave", {}}, n).psi; }, everywhere},
      {"spin_helix", [](int n) { return instantiate({"spin_helix", {}}, n).psi; }, everywhere},
      {"evolved_gaussian_texture",
       [](int n) { return evolved(instantiate({"gaussian_texture", {{"dims", 2}}}, n), kTextureTime); },
       dense_core},
  };
}

struct Calibrated {
  std::optional<CalibrationResult> result;
  std::string error;
};

inline Calibrated run_calibration(const VerifyOptions& o) {
  try {
    return {calibrate_conventions(default_calibration_family(), 0.05 * o.tolerance_scale, o.fault), {}};
  } catch (const CalibrationFailure& e) {
    return {std::nullopt, e.what()};
  }
}

inline void record_calibration(VerificationReport& r, const std::string& prefix, const Calibrated& c) {
  if (!c.result) {
    r.checks.push_back(flag_check(prefix + ".calibration", false, c.error));
    r.environment["convention_signature"] = nullptr;
    return;
  }
  Check chk = bound_check(prefix + ".calibration", c.result->discrepancy, 0.05);
  chk.note = c.result->underdetermined ? "more than one assignment fits" : "unique assignment";
  chk.pass = chk.pass && !c.result->underdetermined;
  r.checks.push_back(chk);
  r.environment["convention_signature"] = signature_json(c.result->signature);
}

}  // namespace detail

/// Guidance equivalence: geometric and Euler forms against the bilinear
/// velocity on three families, plus the plane-wave hand value.
inline VerificationReport verify_observables(const VerifyOptions& o) {
  VerificationReport r{"observables"};
  // the evolved texture is still pre-asymptotic at 64 points
  const auto res = ladder(o, {128, 256, 512});
  r.environment["observables.resolutions"] = res;
  const auto cal = detail::run_calibration(o);
  detail::record_calibration(r, "observables", cal);
  const ConventionSignature conv = cal.result ? cal.result->signature : ConventionSignature{};

  for (const auto& fam : detail::guidance_families()) {
    std::vector<ResolutionSample> geo, eul;
    for (int n : res) {
      const SpinorField psi = fam.make(n);
      const Mask core = fam.core(psi);
      const auto vb = bilinear_velocity(psi, nullptr, {});
      const auto vg = guidance_velocity_geometric(triad_from_spinor(psi));
      const auto ve = velocity_euler(euler_decompose(psi), nullptr, conv, {}, o.fault);
      geo.push_back({psi.grid.spacing(0), relative_gap(vg, vb, core, 1.0)});
      eul.push_back({psi.grid.spacing(0), relative_gap(ve, vb, core, 1.0)});
    }
    r.checks.push_back(slope_check("observables.guidance_geometric." + fam.name, geo, 1.8, 0.0, 1e-12, true,
                                   "relative max gap to the bilinear velocity"));
    r.checks.push_back(slope_check("observables.guidance_euler." + fam.name, eul, 1.8, 0.0, 1e-12, true,
                                   "calibrated Euler form against the bilinear velocity"));
  }

  // Truncation (2 k dx)^2 / 6 against node round-off ~ eps N / 2: one
  // wavelength per box at 2^20 points is the only setting under 1e-10.
  const int fine = 1 << 20;
  const auto pw = instantiate({"plane_wave", {{"k", 1.0}}}, fine);
  const double k = pw.references.at("velocity_x");
  const auto vb = bilinear_velocity(pw.psi, nullptr, {});
  const auto vg = guidance_velocity_geometric(triad_from_spinor(pw.psi));
  double eb = 0.0, eg = 0.0;
  for (std::size_t n = 0; n < pw.grid.size(); ++n) {
    eb = std::max(eb, (vb.field[n] - Vec3(k, 0, 0)).norm() / k);
    eg = std::max(eg, (vg.field[n] - Vec3(k, 0, 0)).norm() / k);
  }
  r.environment["observables.plane_wave_hand_resolution"] = fine;
  r.checks.push_back(bound_check("observables.plane_wave_velocity_bilinear", eb, 1e-10 * o.tolerance_scale,
                                 "relative to hbar k / m"));
  r.checks.push_back(bound_check("observables.plane_wave_velocity_geometric", eg, 1e-10 * o.tolerance_scale,
                                 "relative to hbar k / m"));
  return r;
}

/// Triad orthonormality and handedness, with the convention calibration.
inline VerificationReport verify_triad(const VerifyOptions& o) {
  VerificationReport r{"triad"};
  detail::record_calibration(r, "triad", detail::run_calibration(o));

  const int equiv = 64 * 64 * 64;
  r.environment["triad.analytic_resolution"] = equiv;
  r.environment["triad.evolved_resolution"] = "64^3";
  const double tol = 1e-10 * o.tolerance_scale;
  auto defect_checks = [&](const std::string& name, const SpinorField& psi) {
    const auto d = orthonormality_defect(triad_from_spinor(psi));
    r.checks.push_back(bound_check("triad.orthonormality." + name, d.max_dot, tol));
    r.checks.push_back(bound_check("triad.handedness." + name, d.max_cross, tol, "|e1 x e2 - e3|"));
  };
  defect_checks("plane_wave", instantiate({"plane_wave", {}}, equiv).psi);
  defect_checks("spin_helix", instantiate({"spin_helix", {}}, equiv).psi);
  defect_checks("evolved_gaussian_texture",
                evolved(instantiate({"gaussian_texture", {{"dims", 3}}}, 64), detail::kTextureTime));
  return r;
}

namespace detail {

struct LineErrors {
  double kappa_rel = 0.0, tau_abs = 0.0, kappa_T = 0.0, tau_T = 0.0;
};

inline LineErrors streamline_errors(const Scenario& s) {
  const auto ds = density_spin(s.psi);
  const auto T = torsion3(triad_from_spinor(s.psi));
  const double r0 = s.params.at("r0");
  const double b = s.params.count("pitch") ? s.params.at("pitch") : 0.0;
  TraceOptions opt;
  opt.max_len = 2 * states::pi * std::hypot(r0, b);
  opt.kernel = InterpKernel::cubic;
  const auto line = frenet_apparatus(trace_spin_streamline(ds.s, ds.valid, Vec3(r0, 0, 0), opt));
  const auto kt = kappa_tau_from_torsion(T, line, opt.kernel);
  const double k0 = s.references.at("kappa"), t0 = s.references.at("tau");
  LineErrors e;
  // the end samples lack the centred arc-length stencil
  for (std::size_t i = 2; i + 2 < line.size(); ++i) {
    e.kappa_rel = std::max(e.kappa_rel, std::abs(line.kappa[i] - k0) / k0);
    e.tau_abs = std::max(e.tau_abs, std::abs(line.tau[i] - t0));
    e.kappa_T = std::max(e.kappa_T, std::abs(kt.kappa[i] - line.kappa[i]));
    e.tau_T = std::max(e.tau_T, std::abs(kt.tau[i] - line.tau[i]));
  }
  if (line.size() < 5) e.kappa_rel = e.tau_abs = std::numeric_limits<double>::infinity();
  return e;
}

}  // namespace detail

/// Frenet-form velocity, plane-wave frame divergences and the streamline
/// curvature and torsion against their closed forms and the rotation
/// coefficients.
inline VerificationReport verify_frenet(const VerifyOptions& o) {
  VerificationReport r{"frenet"};
  const auto res = ladder(o);
  r.environment["frenet.resolutions"] = res;
  const auto cal = detail::run_calibration(o);
  detail::record_calibration(r, "frenet", cal);
  const ConventionSignature conv = cal.result ? cal.result->signature : ConventionSignature{};

  // The Frenet form sees only the spin field, so it matches the bilinear
  // velocity where the Frenet frame is the triad up to a constant turn.
  const std::vector<std::pair<std::string, ParamMap>> fams{
      {"spin_helix", {}}, {"spin_helix_envelope", {{"envelope", 0.3}}}};
  auto frenet_gap = [&](const SpinorField& psi) {
    const auto f = frenet_frame_field(triad_from_spinor(psi));
    const auto d = frame_divergences(f);
    const auto vf = velocity_frenet(f, d, conv, o.fault.scale);
    return relative_gap(vf, bilinear_velocity(psi, nullptr, {}), core_mask(psi), 1.0);
  };
  for (const auto& [name, params] : fams) {
    std::vector<ResolutionSample> gap;
    for (int n : res) {
      const auto s = instantiate({"spin_helix", params}, n);
      gap.push_back({s.grid.spacing(0), frenet_gap(s.psi)});
    }
    r.checks.push_back(slope_check("frenet.velocity." + name, gap, 1.8, 0.0, 1e-12, true,
                                   "non-degenerate nodes, calibrated signature"));
  }
  {
    const auto s = instantiate({"gaussian_texture", {{"dims", 2}}}, res.back());
    r.checks.push_back(info_check("frenet.velocity_frame_turn.gaussian_texture", frenet_gap(s.psi),
                                  "diagnostic: the Frenet frame turns against the triad here, and the "
                                  "gradient of that angle is missing from the Frenet form"));
  }

  std::vector<ResolutionSample> dm, dn;
  for (int n : res) {
    const auto s = instantiate({"plane_wave", {}}, n);
    const double k = s.params.at("k");
    const auto d = frame_divergences(frenet_frame_field(triad_from_spinor(s.psi)));
    double em = 0.0, en = 0.0;
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      const double x = s.grid.position(i)[0];
      em = std::max(em, std::abs(d.div_m[i] + 2 * k * std::sin(2 * k * x)) / (2 * k));
      en = std::max(en, std::abs(d.div_n[i] - 2 * k * std::cos(2 * k * x)) / (2 * k));
    }
    dm.push_back({s.grid.spacing(0), em});
    dn.push_back({s.grid.spacing(0), en});
  }
  r.checks.push_back(slope_check("frenet.plane_wave_div_m", dm, 1.8, 2.2, 1e-13, false, "against -2k sin 2kx"));
  r.checks.push_back(slope_check("frenet.plane_wave_div_n", dn, 1.8, 2.2, 1e-13, false, "against 2k cos 2kx"));

  for (const std::string name : {"spin_circle", "spin_helix_lines"}) {
    std::vector<ResolutionSample> kT, tT;
    detail::LineErrors fine;
    Scenario last;
    for (int n : res) {
      last = instantiate({name, {}}, n);
      fine = detail::streamline_errors(last);
      kT.push_back({last.grid.spacing(0), fine.kappa_T});
      tT.push_back({last.grid.spacing(0), fine.tau_T});
    }
    const double r0 = last.params.at("r0");
    r.checks.push_back(bound_check("frenet." + name + ".kappa", fine.kappa_rel, 5e-3 * o.tolerance_scale,
                                   "relative to the closed form"));
    if (name == "spin_circle")
      r.checks.push_back(bound_check("frenet.spin_circle.tau", fine.tau_abs, 1e-3 / r0 * o.tolerance_scale,
                                     "absolute"));
    else
      r.checks.push_back(bound_check("frenet.spin_helix_lines.tau", fine.tau_abs / last.references.at("tau"),
                                     5e-3 * o.tolerance_scale, "relative to the closed form"));
    r.checks.push_back(slope_check("frenet." + name + ".kappa_from_torsion", kT, 1.5, 2.2, 1e-12, false,
                                   "rotation coefficients against the Frenet value"));
    // planar lines: integration round-off alone, growing with the step count
    const bool planar = name == "spin_circle";
    r.checks.push_back(slope_check("frenet." + name + ".tau_from_torsion", tT, 1.5, 2.2, planar ? 1e-10 : 1e-12,
                                   planar, "rotation coefficients against the Frenet value"));
  }
  return r;
}

}  // namespace spingeo::harness
