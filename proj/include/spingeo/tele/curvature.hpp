#pragma once

// Curvature of the Weitzenboeck and Levi-Civita connections, the Riemann
// tensor rebuilt from the rotation coefficients, and the geometrized
// energy-momentum tensor with its matter density.

#include "spingeo/tele/connection.hpp"

namespace spingeo::tele {

struct CurvaturePoint {
  double S = 0.0;                 ///< max |S^a_{bcd}|
  double R = 0.0;                 ///< max |R^a_{bcd}|
  double R_minus_from_T = 0.0;    ///< max |R - R(T)| with the covariant derivative of T
  double R_minus_from_T_partial = 0.0;  ///< same with the plain partial derivative
  double scalar = 0.0;            ///< g^{bd} R^a_{bad}
  double scalar_printed = 0.0;    ///< -2 g^{bd}(nabla_[a T^a_|b|d] + 2 T^a_m[a T^m_|b|d])
  double rho_matter = 0.0;        ///< (2 / c^2 nu) g^{ab}(nabla_[c T^c_|a|b] + T^c_m[a T^m_|c|b])
  double trace = 0.0;             ///< g^{ab} T_ab / c^2
  Mat4 T_geom = Mat4::Zero();
};

struct CurvatureReport {
  Grid4 grid;
  std::vector<CurvaturePoint> points;
  std::vector<std::uint8_t> valid;  ///< nodes two samples away from the edge
};

/// R^a_{bcd} = d_c C^a_{bd} - d_d C^a_{bc} + C^a_{mc} C^m_{bd} - C^a_{md} C^m_{bc}
inline Riemann curvature_of(const Conn& C, const std::array<Conn, 4>& dC) {
  Riemann R;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double v = dC[c](a, b, d) - dC[d](a, b, c);
          for (int m = 0; m < 4; ++m) v += C(a, m, c) * C(m, b, d) - C(a, m, d) * C(m, b, c);
          R(a, b, c, d) = v;
        }
  return R;
}

/// -(D_c T^a_{bd} - D_d T^a_{bc}) - (T^a_{mc} T^m_{bd} - T^a_{md} T^m_{bc}),
/// where DT(a, b, d, c) holds the derivative along c.
inline Riemann riemann_from_torsion(const Conn& T, const Riemann& DT) {
  Riemann R;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double v = -(DT(a, b, d, c) - DT(a, b, c, d));
          for (int m = 0; m < 4; ++m) v -= T(a, m, c) * T(m, b, d) - T(a, m, d) * T(m, b, c);
          R(a, b, c, d) = v;
        }
  return R;
}

inline CurvatureReport curvature_suite(const ConnectionDecomposition& conn, const Config4D& cfg = {}) {
  cfg.check();
  const Grid4& G = conn.grid;
  CurvatureReport rep;
  rep.grid = G;
  rep.points.assign(G.size(), CurvaturePoint{});
  rep.valid.assign(G.size(), 0);
  const double c2nu = cfg.light_speed * cfg.light_speed * cfg.nu;

  parallel_for(G.size(), [&](std::size_t n) {
    if (G.margin(n) < 2) return;
    rep.valid[n] = 1;
    std::array<Conn, 4> dD, dG, dT;
    for (int k = 0; k < 4; ++k) {
      dD[k] = central_difference(G, conn.Delta, n, k, diff_conn);
      dG[k] = central_difference(G, conn.Gamma, n, k, diff_conn);
      dT[k] = central_difference(G, conn.T, n, k, diff_conn);
    }
    const Conn& T = conn.T[n];
    const Conn& Gm = conn.Gamma[n];
    const Mat4& g = conn.g[n];
    const Mat4& gi = conn.ginv[n];

    // nT(a, b, e, k) = nabla_k T^a_{be}; pT the partial derivative
    Riemann nT, pT;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int e = 0; e < 4; ++e)
          for (int k = 0; k < 4; ++k) {
            double v = dT[k](a, b, e);
            pT(a, b, e, k) = v;
            for (int m = 0; m < 4; ++m)
              v += Gm(a, m, k) * T(m, b, e) - Gm(m, b, k) * T(a, m, e) - Gm(m, e, k) * T(a, b, m);
            nT(a, b, e, k) = v;
          }

    const Riemann S = curvature_of(conn.Delta[n], dD);
    const Riemann R = curvature_of(Gm, dG);
    const Riemann RfT = riemann_from_torsion(T, nT);
    const Riemann RfT_partial = riemann_from_torsion(T, pT);

    // A_{be} = nabla_[a T^a_|b|e],  P_{be} = T^a_m[a T^m_|b|e],
    // Q_{be} = T^c_m[b T^m_|c|e]
    Mat4 A = Mat4::Zero(), P = Mat4::Zero(), Q = Mat4::Zero(), Ric = Mat4::Zero();
    for (int b = 0; b < 4; ++b)
      for (int e = 0; e < 4; ++e)
        for (int a = 0; a < 4; ++a) {
          A(b, e) += 0.5 * (nT(a, b, e, a) - nT(a, b, a, e));
          Ric(b, e) += R(a, b, a, e);
          for (int m = 0; m < 4; ++m) {
            P(b, e) += 0.5 * (T(a, m, a) * T(m, b, e) - T(a, m, e) * T(m, b, a));
            Q(b, e) += 0.5 * (T(a, m, b) * T(m, a, e) - T(a, m, e) * T(m, a, b));
          }
        }
    const double trAP = (gi.cwiseProduct(A + P)).sum();
    const double trAQ = (gi.cwiseProduct(A + Q)).sum();

    CurvaturePoint& out = rep.points[n];
    out.S = max_abs(S);
    out.R = max_abs(R);
    out.R_minus_from_T = max_abs_diff(R, RfT);
    out.R_minus_from_T_partial = max_abs_diff(R, RfT_partial);
    out.scalar = gi.cwiseProduct(Ric).sum();
    out.scalar_printed = -2.0 * (gi.cwiseProduct(A + 2.0 * P)).sum();
    out.T_geom = -(2.0 / cfg.nu) * (A + Q - 0.5 * g * trAP);
    out.rho_matter = 2.0 / c2nu * trAQ;
    out.trace = gi.cwiseProduct(out.T_geom).sum() / (cfg.light_speed * cfg.light_speed);
  });
  return rep;
}

struct CurvatureNorms {
  double S = 0.0, R = 0.0, R_minus_from_T = 0.0, R_minus_from_T_partial = 0.0;
  double trace_mismatch = 0.0;   ///< max |rho_matter - g^{ab} T_ab / c^2|
  double scalar_mismatch = 0.0;  ///< max |contracted Ricci - printed scalar form|
  double max_rho = 0.0;
};

inline CurvatureNorms curvature_norms(const CurvatureReport& r,
                                      const std::function<bool(std::size_t)>& include = {}) {
  CurvatureNorms m;
  for (std::size_t n = 0; n < r.points.size(); ++n) {
    if (!r.valid[n] || (include && !include(n))) continue;
    const auto& p = r.points[n];
    m.S = std::max(m.S, p.S);
    m.R = std::max(m.R, p.R);
    m.R_minus_from_T = std::max(m.R_minus_from_T, p.R_minus_from_T);
    m.R_minus_from_T_partial = std::max(m.R_minus_from_T_partial, p.R_minus_from_T_partial);
    m.trace_mismatch = std::max(m.trace_mismatch, std::abs(p.rho_matter - p.trace));
    m.scalar_mismatch = std::max(m.scalar_mismatch, std::abs(p.scalar - p.scalar_printed));
    m.max_rho = std::max(m.max_rho, std::abs(p.rho_matter));
  }
  return m;
}

}  // namespace spingeo::tele
