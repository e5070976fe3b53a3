#pragma once

// Fixes the sign and role choices of the Euler- and Frenet-form velocities
// by exhaustive comparison with the bilinear velocity on analytic states.

#include <string>
#include <vector>

#include "spingeo/scenarios/states.hpp"
#include "spingeo/spinor/euler.hpp"
#include "spingeo/triad/frenet.hpp"

namespace spingeo {

struct ReferenceState {
  std::string name;
  SpinorField psi;
  double velocity_scale;  ///< hbar * wavenumber / m, sets the relative tolerance
};

/// Plane wave, spin helix and two-component plane wave on a 1D box of
/// length 2 pi with `points` samples.
inline std::vector<ReferenceState> default_calibration_family(int points = 256) {
  const auto g = GridSpec::cube(1, 2 * std::numbers::pi, points);
  const double k = 2.0, q = 4.0;
  return {{"plane_wave", states::plane_wave(g, k), k},
          {"spin_helix", states::spin_helix(g, q), q},
          {"two_component_plane_wave", states::two_component_plane_wave(g, k, std::numbers::pi / 5),
           k}};
}

struct CalibrationCandidate {
  ConventionSignature signature;
  double discrepancy;  ///< worst relative mismatch over the family
};

struct CalibrationResult {
  ConventionSignature signature;
  double discrepancy = 0.0;
  bool underdetermined = false;
  std::vector<CalibrationCandidate> candidates;  ///< all 8, in search order
};

namespace detail {

inline double relative_mismatch(const MaskedVectorField& a, const MaskedVectorField& b,
                                double scale) {
  double worst = 0.0;
  std::size_t used = 0;
  for (std::size_t n = 0; n < a.field.size(); ++n) {
    if (!a.valid[n] || !b.valid[n]) continue;
    worst = std::max(worst, (a.field[n] - b.field[n]).norm());
    ++used;
  }
  if (used == 0) return std::numeric_limits<double>::infinity();
  return worst / scale;
}

}  // namespace detail

/// Tries every (sigma_euler, sigma_frenet, role_swap). Throws
/// CalibrationFailure when no assignment brings the worst mismatch under
/// `tolerance`; sets `underdetermined` when more than one does.
inline CalibrationResult calibrate_conventions(const std::vector<ReferenceState>& family,
                                               double tolerance = 0.05,
                                               const InjectedFault& fault = {}) {
  if (family.empty()) throw InvalidArgument("calibrate_conventions: empty family");
  struct Prepared {
    MaskedVectorField bilinear;
    EulerFields euler;
    FrenetFrameField frenet;
    FrameDerivedScalars scalars;
    double scale;
  };
  std::vector<Prepared> prep;
  for (const auto& s : family) {
    auto tri = triad_from_spinor(s.psi);
    auto f = frenet_frame_field(tri);
    auto d = frame_divergences(f);
    prep.push_back({bilinear_velocity(s.psi, nullptr, {}), euler_decompose(s.psi), std::move(f),
                    std::move(d), s.velocity_scale});
  }

  CalibrationResult out;
  out.discrepancy = std::numeric_limits<double>::infinity();
  for (int se : {1, -1})
    for (int sf : {1, -1})
      for (bool swap : {false, true}) {
        const ConventionSignature c{se, sf, swap};
        double worst = 0.0;
        for (const auto& p : prep) {
          const auto ve = velocity_euler(p.euler, nullptr, c, {}, fault);
          const auto vf = velocity_frenet(p.frenet, p.scalars, c, fault.scale);
          worst = std::max({worst, detail::relative_mismatch(ve, p.bilinear, p.scale),
                            detail::relative_mismatch(vf, p.bilinear, p.scale)});
        }
        out.candidates.push_back({c, worst});
        if (worst < out.discrepancy) {
          out.discrepancy = worst;
          out.signature = c;
        }
      }
  if (!(out.discrepancy <= tolerance))
    throw CalibrationFailure("no sign/role assignment reconciles the velocity forms (best " +
                             std::to_string(out.discrepancy) + ")");
  int passing = 0;
  for (const auto& c : out.candidates) passing += c.discrepancy <= tolerance;
  out.underdetermined = passing > 1;
  return out;
}

}  // namespace spingeo
