#pragma once

// Weitzenboeck connection, Christoffel symbols and the Ricci rotation
// coefficients, the latter both from the object of anholonomity and from
// the covariant derivative of the tetrad.

#include "spingeo/core/parallel.hpp"
#include "spingeo/tele/frames.hpp"

namespace spingeo::tele {

struct ConnectionDecomposition {
  Grid4 grid;
  std::vector<Mat4> g, ginv;
  std::vector<Conn> Delta;  ///< e^a_b d_c e^b_b
  std::vector<Conn> Gamma;  ///< Christoffel symbols of g
  std::vector<Conn> T_anholonomic;  ///< from the object of anholonomity
  std::vector<Conn> T;              ///< e^a_b nabla_c e^b_b
  std::vector<std::uint8_t> valid;  ///< nodes one sample away from the edge

  /// Gamma + T, the connection the geodesic and frame transport use.
  Conn total(std::size_t n) const { return Gamma[n] + T[n]; }
};

struct ConnectionChecks {
  double decomposition = 0.0;  ///< max |Delta - Gamma - T_anholonomic|
  double routes = 0.0;         ///< max |T_anholonomic - T|
  double gamma_asymmetry = 0.0;  ///< max |Gamma^a_{bc} - Gamma^a_{cb}|
  double metric_compatibility = 0.0;  ///< max |nabla_c g_ab|
  double max_torsion = 0.0;
};

inline ConnectionDecomposition connection_suite(const TetradField4D& t) {
  const Grid4& G = t.grid;
  ConnectionDecomposition c;
  c.grid = G;
  c.g = metric_from_tetrad(t);
  c.ginv.resize(G.size());
  for (std::size_t n = 0; n < G.size(); ++n) {
    if (!(std::abs(c.g[n].determinant()) > 1e-12))
      throw InvalidArgument("connection_suite: singular metric at node " + std::to_string(n));
    c.ginv[n] = c.g[n].inverse();
  }
  c.Delta.assign(G.size(), Conn{});
  c.Gamma.assign(G.size(), Conn{});
  c.T_anholonomic.assign(G.size(), Conn{});
  c.T.assign(G.size(), Conn{});
  c.valid.assign(G.size(), 0);

  parallel_for(G.size(), [&](std::size_t n) {
    if (G.margin(n) < 1) return;
    c.valid[n] = 1;
    std::array<Mat4, 4> de, dg;  // de[c](b, m) = d_c e^b_m
    for (int k = 0; k < 4; ++k) {
      de[k] = central_difference(G, t.e, n, k, diff_mat);
      dg[k] = central_difference(G, c.g, n, k, diff_mat);
    }
    const Mat4& ei = t.inv[n];
    const Mat4& e = t.e[n];
    const Mat4& g = c.g[n];
    const Mat4& gi = c.ginv[n];
    Conn& D = c.Delta[n];
    Conn& Gm = c.Gamma[n];
    Conn Om;  // Om(a, b, c) = Omega_{bc}^a
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int k = 0; k < 4; ++k) {
          double d = 0.0, o = 0.0, gam = 0.0;
          for (int f = 0; f < 4; ++f) {
            d += ei(a, f) * de[k](f, b);
            o += 0.5 * ei(a, f) * (de[b](f, k) - de[k](f, b));
            gam += 0.5 * gi(a, f) * (dg[k](b, f) + dg[b](k, f) - dg[f](b, k));
          }
          D(a, b, k) = d;
          Om(a, b, k) = o;
          Gm(a, b, k) = gam;
        }
    Conn& T9 = c.T_anholonomic[n];
    Conn& T11 = c.T[n];
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int k = 0; k < 4; ++k) {
          double s = -Om(a, b, k);
          for (int m = 0; m < 4; ++m)
            for (int v = 0; v < 4; ++v) s += gi(a, m) * (g(b, v) * Om(v, m, k) + g(k, v) * Om(v, m, b));
          T9(a, b, k) = s;
          double cov = 0.0;
          for (int f = 0; f < 4; ++f) {
            double nab = de[k](f, b);
            for (int m = 0; m < 4; ++m) nab -= Gm(m, b, k) * e(f, m);
            cov += ei(a, f) * nab;
          }
          T11(a, b, k) = cov;
        }
  });
  return c;
}

inline ConnectionChecks connection_checks(const ConnectionDecomposition& c,
                                          const std::function<bool(std::size_t)>& include = {}) {
  ConnectionChecks r;
  const Grid4& G = c.grid;
  for (std::size_t n = 0; n < G.size(); ++n) {
    if (!c.valid[n] || (include && !include(n))) continue;
    r.decomposition = std::max(r.decomposition, (c.Delta[n] - c.Gamma[n] - c.T_anholonomic[n]).max_abs());
    r.routes = std::max(r.routes, (c.T_anholonomic[n] - c.T[n]).max_abs());
    r.max_torsion = std::max(r.max_torsion, c.T[n].max_abs());
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int k = 0; k < 4; ++k)
          r.gamma_asymmetry = std::max(r.gamma_asymmetry, std::abs(c.Gamma[n](a, b, k) - c.Gamma[n](a, k, b)));
    for (int k = 0; k < 4; ++k) {
      const Mat4 dg = central_difference(G, c.g, n, k, diff_mat);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          double v = dg(a, b);
          for (int m = 0; m < 4; ++m)
            v -= c.Gamma[n](m, a, k) * c.g[n](m, b) + c.Gamma[n](m, b, k) * c.g[n](a, m);
          r.metric_compatibility = std::max(r.metric_compatibility, std::abs(v));
        }
    }
  }
  return r;
}

/// H_{cm} = T^a_{bc} T^b_{am}: the rotational metric coefficients.
inline Mat4 rotational_metric(const Conn& T) {
  Mat4 H = Mat4::Zero();
  for (int c = 0; c < 4; ++c)
    for (int m = 0; m < 4; ++m)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) H(c, m) += T(a, b, c) * T(b, a, m);
  return H;
}

inline std::vector<Mat4> rotational_metric(const ConnectionDecomposition& c) {
  std::vector<Mat4> H(c.grid.size(), Mat4::Zero());
  for (std::size_t n = 0; n < H.size(); ++n)
    if (c.valid[n]) H[n] = rotational_metric(c.T[n]);
  return H;
}

}  // namespace spingeo::tele
