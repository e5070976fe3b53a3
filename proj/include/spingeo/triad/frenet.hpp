#pragma once

// Field-level Frenet frame of the spin-direction field, the frame scalars
// (directional divergences and abnormalities), and the Frenet form of the
// velocity.

#include <numbers>

#include "spingeo/spinor/euler.hpp"
#include "spingeo/triad/triad.hpp"

namespace spingeo {

/// Curvature below kKappaRatio / dx marks a node degenerate.
inline constexpr double kKappaRatio = 1e-8;

struct FrenetFrameField {
  VectorField t, m, n;  ///< unit spin direction, principal normal, binormal
  ScalarField kappa, tau;
  Mask valid;
  /// Every spin line is straight, so (m, n) were taken from the bilinear
  /// triad (e1, e2) instead.
  bool triad_fallback = false;
};

/// m = (t.grad)t / kappa, n = t x m, tau = n.(t.grad)m. A node is valid when
/// its whole stencil is non-degenerate and m keeps its orientation across it.
inline FrenetFrameField frenet_frame_field(const TriadField& tri) {
  const GridSpec& g = tri.grid();
  FrenetFrameField f{tri.e[2], VectorField(g), VectorField(g), ScalarField(g), ScalarField(g),
                     Mask(g.size(), 0), false};
  const Mask base = stencil_mask(tri);
  const double eps = kKappaRatio / g.min_spacing();
  const auto curv = directional(jacobian(f.t), f.t);

  Mask nondeg(g.size(), 0);
  bool any = false;
  for (std::size_t n = 0; n < g.size(); ++n) {
    if (!base[n]) continue;
    const double k = curv[n].norm();
    if (k > eps) {
      nondeg[n] = 1;
      any = true;
      f.kappa[n] = k;
      f.m[n] = curv[n] / k;
      f.n[n] = f.t[n].cross(f.m[n]);
    }
  }

  if (!any) {
    f.triad_fallback = true;
    f.m = tri.e[0];
    f.n = tri.e[1];
    f.valid = erode(g, base, 1);
    for (std::size_t n = 0; n < g.size(); ++n)
      if (base[n]) f.kappa[n] = f.m[n].dot(curv[n]);
  } else {
    for (std::size_t n = 0; n < g.size(); ++n) {
      if (!nondeg[n]) continue;
      bool ok = true;
      for (int a = 0; a < g.dims() && ok; ++a)
        for (int off : {-1, 1}) {
          const auto nb = g.shifted(n, a, off);
          if (!nondeg[nb] || f.m[nb].dot(f.m[n]) <= 0.0) ok = false;
        }
      f.valid[n] = ok;
    }
  }

  const auto tau_vec = directional(jacobian(f.m), f.t);
  for (std::size_t n = 0; n < g.size(); ++n)
    if (f.valid[n]) f.tau[n] = f.n[n].dot(tau_vec[n]);
  return f;
}

struct FrameDerivedScalars {
  ScalarField theta_ms, theta_ns, div_s, div_m, div_n, omega_m, omega_n;
  /// Residuals of the three divergence relations that close among themselves:
  /// div s - theta_ms - theta_ns, div n + n.(d_m m), div m + kappa - n.(d_n m).
  ScalarField rel_s, rel_n, rel_m;
  Mask valid;
};

inline FrameDerivedScalars frame_divergences(const FrenetFrameField& f) {
  const GridSpec& g = f.t.grid;
  const auto dt = jacobian(f.t), dm = jacobian(f.m);
  const auto t_m = directional(dt, f.m), t_n = directional(dt, f.n);
  const auto m_m = directional(dm, f.m), m_n = directional(dm, f.n);
  FrameDerivedScalars d{ScalarField(g), ScalarField(g), divergence(f.t), divergence(f.m),
                        divergence(f.n), ScalarField(g), ScalarField(g), ScalarField(g),
                        ScalarField(g), ScalarField(g), f.valid};
  for (std::size_t n = 0; n < g.size(); ++n) {
    if (!d.valid[n]) {
      d.div_s[n] = d.div_m[n] = d.div_n[n] = 0.0;
      continue;
    }
    d.theta_ms[n] = f.m[n].dot(t_m[n]);
    d.theta_ns[n] = f.n[n].dot(t_n[n]);
    d.omega_n[n] = f.n[n].dot(t_m[n]) - f.tau[n];
    d.omega_m[n] = -f.m[n].dot(t_n[n]) - f.tau[n];
    d.rel_s[n] = d.div_s[n] - d.theta_ms[n] - d.theta_ns[n];
    d.rel_n[n] = d.div_n[n] + f.n[n].dot(m_m[n]);
    d.rel_m[n] = d.div_m[n] + f.kappa[n] - f.n[n].dot(m_n[n]);
  }
  return d;
}

/// v = sigma_frenet (hbar/2m)(tau t - div(n) m + (kappa + div m) n).
inline MaskedVectorField velocity_frenet(const FrenetFrameField& f,
                                         const FrameDerivedScalars& d,
                                         const ConventionSignature& conv,
                                         double injected_scale = 1.0) {
  MaskedVectorField out{VectorField(f.t.grid), d.valid};
  const double pref = conv.sigma_frenet * 0.5 * PhysicalConstants::hbar /
                      PhysicalConstants::mass * injected_scale;
  for (std::size_t n = 0; n < f.t.size(); ++n)
    if (out.valid[n])
      out.field[n] = pref * (f.tau[n] * f.t[n] - d.div_n[n] * f.m[n] +
                             (f.kappa[n] + d.div_m[n]) * f.n[n]);
  return out;
}

struct RotationAngleStats {
  double mean = 0.0;    ///< circular mean of the angle from m to e1 about t
  double spread = 0.0;  ///< max |angle - mean|, wrapped
  std::size_t samples = 0;
};

/// Angle beta with e1 = cos(beta) m + sin(beta) n at every valid node.
inline std::pair<ScalarField, RotationAngleStats> triad_frenet_rotation(
    const TriadField& tri, const FrenetFrameField& f) {
  ScalarField beta(f.t.grid);
  RotationAngleStats st;
  double c = 0.0, s = 0.0;
  for (std::size_t n = 0; n < beta.size(); ++n) {
    if (!f.valid[n]) continue;
    beta[n] = std::atan2(tri.e[0][n].dot(f.n[n]), tri.e[0][n].dot(f.m[n]));
    c += std::cos(beta[n]);
    s += std::sin(beta[n]);
    ++st.samples;
  }
  if (st.samples == 0) return {beta, st};
  st.mean = std::atan2(s, c);
  for (std::size_t n = 0; n < beta.size(); ++n)
    if (f.valid[n]) st.spread = std::max(st.spread, std::abs(wrap_angle(beta[n] - st.mean)));
  return {beta, st};
}

}  // namespace spingeo
