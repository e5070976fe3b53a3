#pragma once

// Worldline of the tetrad's centre of mass under Gamma + T, with the frame
// transported along it.

#include "spingeo/tele/connection.hpp"

namespace spingeo::tele {

struct GeodesicOptions {
  int steps = 1000;
  double ds = 1e-3;
  double tolerance = 1e-6;  ///< allowed drift of g(u, u) before aborting
};

struct GeodesicPath {
  std::vector<double> s;
  std::vector<Vec4> x, u;
  std::vector<Mat4> frame;  ///< frame(alpha, b) = e^alpha_b
  double max_norm_drift = 0.0;
};

namespace detail {

struct LocalGeometry {
  Conn C;  ///< Gamma + T
  Mat4 g;
};

/// Multilinear interpolation over the active axes; every corner node must
/// carry a valid connection.
inline LocalGeometry interpolate_geometry(const ConnectionDecomposition& c, const Vec4& x) {
  const Grid4& G = c.grid;
  std::array<int, 4> base{};
  std::array<double, 4> frac{};
  for (int a = 0; a < 4; ++a) {
    if (!G.active(a)) continue;
    const double u = (x[a] - G.lo[a]) / G.spacing(a);
    if (!(u >= 0.0 && u <= G.n[a] - 1))
      throw InvalidArgument("geodesic: path leaves the grid patch along axis " + std::to_string(a));
    base[a] = std::min(static_cast<int>(std::floor(u)), G.n[a] - 2);
    frac[a] = u - base[a];
  }
  LocalGeometry out{Conn{}, Mat4::Zero()};
  for (int corner = 0; corner < 16; ++corner) {
    std::array<int, 4> i = base;
    double w = 1.0;
    bool skip = false;
    for (int a = 0; a < 4; ++a) {
      const int bit = (corner >> a) & 1;
      if (!G.active(a)) {
        if (bit) skip = true;
        continue;
      }
      i[a] += bit;
      w *= bit ? frac[a] : 1.0 - frac[a];
    }
    if (skip || w == 0.0) continue;
    const std::size_t n = G.index(i);
    if (!c.valid[n]) throw InvalidArgument("geodesic: path reaches the edge of the grid patch");
    const Conn tot = c.total(n);
    for (int k = 0; k < 64; ++k) out.C.v[k] += w * tot.v[k];
    out.g += w * c.g[n];
  }
  return out;
}

struct State {
  Vec4 x, u;
  Mat4 E;
};

inline State rhs(const ConnectionDecomposition& c, const State& s) {
  const auto geo = interpolate_geometry(c, s.x);
  State d{s.u, Vec4::Zero(), Mat4::Zero()};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int k = 0; k < 4; ++k) {
        const double C = geo.C(a, b, k);
        if (C == 0.0) continue;
        d.u[a] -= C * s.u[b] * s.u[k];
        for (int f = 0; f < 4; ++f) d.E(a, f) -= C * s.E(b, f) * s.u[k];
      }
  return d;
}

inline State axpy(const State& s, double h, const State& d) {
  return {s.x + h * d.x, s.u + h * d.u, s.E + h * d.E};
}

}  // namespace detail

/// RK4 for d2x/ds2 + (Gamma + T) u u = 0 and de_b/ds + (Gamma + T) e_b u = 0.
/// The initial four-velocity must satisfy g(u, u) = -1.
inline GeodesicPath geodesic_integrate(const ConnectionDecomposition& c, const Vec4& x0,
                                       const Vec4& u0, const Mat4& frame0,
                                       const GeodesicOptions& opt = {}) {
  require(opt.steps >= 1 && opt.ds > 0.0, "geodesic: steps and ds must be positive");
  auto norm_of = [&](const detail::State& s) {
    const auto geo = detail::interpolate_geometry(c, s.x);
    return s.u.dot(geo.g * s.u);
  };
  detail::State st{x0, u0, frame0};
  const double n0 = norm_of(st);
  if (std::abs(n0 + 1.0) > 1e-8)
    throw InvalidArgument("geodesic: initial four-velocity has g(u,u) = " + std::to_string(n0) +
                          ", expected -1");
  GeodesicPath path;
  auto record = [&](double s, const detail::State& v) {
    path.s.push_back(s);
    path.x.push_back(v.x);
    path.u.push_back(v.u);
    path.frame.push_back(v.E);
  };
  record(0.0, st);
  const double h = opt.ds;
  for (int i = 0; i < opt.steps; ++i) {
    const auto k1 = detail::rhs(c, st);
    const auto k2 = detail::rhs(c, detail::axpy(st, 0.5 * h, k1));
    const auto k3 = detail::rhs(c, detail::axpy(st, 0.5 * h, k2));
    const auto k4 = detail::rhs(c, detail::axpy(st, h, k3));
    st.x += h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    st.u += h / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
    st.E += h / 6.0 * (k1.E + 2.0 * k2.E + 2.0 * k3.E + k4.E);
    const double drift = std::abs(norm_of(st) - n0);
    path.max_norm_drift = std::max(path.max_norm_drift, drift);
    if (!(drift <= opt.tolerance))
      throw InstabilityError("geodesic: normalization drift " + std::to_string(drift) +
                             " at step " + std::to_string(i + 1));
    record((i + 1) * h, st);
  }
  return path;
}

/// Worldline whose frame components u^a stay constant in the rigid frame
/// rotating about z at omega: x^0 = u^0 s and the spatial velocity is the
/// frame velocity turned back by the accumulated angle.
inline Vec4 rotating_frame_worldline(const Vec4& x0, const Vec4& u_frame, double omega, double s,
                                     double c = 1.0) {
  const double t = u_frame[0] * s;  // x^0
  const double w = omega / c;
  Vec4 x = x0;
  x[0] += t;
  const double si = std::sin(w * t), co = std::cos(w * t);
  const double ux = u_frame[1] / u_frame[0], uy = u_frame[2] / u_frame[0];
  // integral of turn_z(w t')^T (ux, uy) dt'
  x[1] += (si * ux - (1.0 - co) * uy) / w;
  x[2] += ((1.0 - co) * ux + si * uy) / w;
  x[3] += u_frame[3] / u_frame[0] * t;
  return x;
}

}  // namespace spingeo::tele
