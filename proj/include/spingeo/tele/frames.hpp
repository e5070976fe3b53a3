#pragma once

// Tetrads: boosts, clockwise Euler rotations, their composition with a
// reference frame, the tabulated tetrad field and the catalog of analytic
// tetrads.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "spingeo/core/grid.hpp"
#include "spingeo/tele/grid4.hpp"

namespace spingeo::tele {

struct Config4D {
  double nu = 1.0;           ///< coupling of the geometrized energy-momentum tensor
  double light_speed = 1.0;  ///< x^0 = c t

  void check() const {
    require(nu != 0.0 && std::isfinite(nu), "config4d: nu must be finite and nonzero");
    require(light_speed > 0.0 && std::isfinite(light_speed), "config4d: c must be positive");
  }
};

/// Pure boost with rapidity th(Theta) = |v|/c, Delta = 2 sh^2(Theta/2),
/// direction cosines v_i / |v|. Symmetric, L^T eta L = eta.
inline Mat4 lorentz_boost(const Vec3& v, double c = 1.0) {
  require(v.allFinite(), "lorentz_boost: non-finite velocity");
  const double speed = v.norm();
  if (!(speed < c)) throw InvalidArgument("lorentz_boost: |v| = " + std::to_string(speed) +
                                          " is not below c = " + std::to_string(c));
  Mat4 L = Mat4::Identity();
  if (speed == 0.0) return L;
  const double theta = std::atanh(speed / c);
  const double ch = std::cosh(theta), sh = std::sinh(theta);
  const double delta = 2.0 * std::pow(std::sinh(0.5 * theta), 2);
  const Vec3 dir = v / speed;
  L(0, 0) = ch;
  for (int i = 0; i < 3; ++i) {
    L(0, i + 1) = L(i + 1, 0) = -sh * dir[i];
    for (int j = 0; j < 3; ++j) L(i + 1, j + 1) = (i == j ? 1.0 : 0.0) + delta * dir[i] * dir[j];
  }
  return L;
}

/// Clockwise turn by `a` about z.
inline Mat3 turn_z(double a) {
  Mat3 m;
  m << std::cos(a), std::sin(a), 0, -std::sin(a), std::cos(a), 0, 0, 0, 1;
  return m;
}

/// Clockwise turn by `a` about x (the line of nodes after the first turn).
inline Mat3 turn_x(double a) {
  Mat3 m;
  m << 1, 0, 0, 0, std::cos(a), std::sin(a), 0, -std::sin(a), std::cos(a);
  return m;
}

/// phi about e3, theta about the line of nodes, chi about the new e3; the
/// time row and column are the identity.
inline Mat4 rotation_from_euler(double theta, double phi, double chi) {
  require(std::isfinite(theta) && std::isfinite(phi) && std::isfinite(chi),
          "rotation_from_euler: non-finite angle");
  Mat4 R = Mat4::Identity();
  R.block<3, 3>(1, 1) = turn_z(phi) * turn_x(theta) * turn_z(chi);
  return R;
}

/// Frame vectors e^mu_a = (R L)_a^b ref^mu_b; returns the tetrad e^a_mu.
/// `ref_frame(mu, b)` holds ref^mu_b.
inline Mat4 compose_frame(const Mat4& R, const Mat4& L, const Mat4& ref_frame = Mat4::Identity()) {
  const Mat4 M = R * L;
  const Mat4 frame = ref_frame * M.transpose();  // frame(mu, a)
  return frame.inverse();
}

/// Tetrad e^a_mu (row a, column mu) at every node, with the inverse
/// e^mu_a (row mu, column a) cached.
struct TetradField4D {
  Grid4 grid;
  std::vector<Mat4> e, inv;

  TetradField4D() = default;
  TetradField4D(const Grid4& g, std::vector<Mat4> tetrad) : grid(g), e(std::move(tetrad)) {
    require(e.size() == g.size(), "tetrad: sample count does not match the grid");
    inv.resize(e.size());
    for (std::size_t n = 0; n < e.size(); ++n) {
      if (!e[n].allFinite()) throw InvalidArgument("tetrad: non-finite sample");
      const double det = e[n].determinant();
      if (!(std::abs(det) > 1e-12))
        throw InvalidArgument("tetrad: singular sample at node " + std::to_string(n));
      inv[n] = e[n].inverse();
      if ((e[n] * inv[n] - Mat4::Identity()).cwiseAbs().maxCoeff() > 1e-12)
        throw InvalidArgument("tetrad: ill-conditioned sample at node " + std::to_string(n));
    }
  }

  static TetradField4D sample(const Grid4& g, const std::function<Mat4(const Vec4&)>& fn) {
    std::vector<Mat4> e(g.size());
    for (std::size_t n = 0; n < g.size(); ++n) e[n] = fn(g.position(n));
    return TetradField4D(g, std::move(e));
  }
};

/// g_{ab} = eta_{cd} e^c_a e^d_b at every node.
inline std::vector<Mat4> metric_from_tetrad(const TetradField4D& t) {
  const Mat4 eta = minkowski();
  std::vector<Mat4> g(t.e.size());
  for (std::size_t n = 0; n < g.size(); ++n) g[n] = t.e[n].transpose() * eta * t.e[n];
  return g;
}

struct TetradModel {
  std::string name;
  std::function<Mat4(const Vec4&)> tetrad;
  double omega = 0.0;  ///< angular velocity of the rotating frame, else 0
};

struct CatalogParams {
  double omega = 1.0;               ///< rotating frame
  Vec3 velocity{0.6, 0.0, 0.0};     ///< constant boost, in units of c
  Vec3 euler{0.4, 0.7, -0.3};       ///< constant rotation: theta, phi, chi
  double epsilon = 0.1;             ///< amplitude of the sinusoidal perturbation
};

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"identity", "boost", "rotation", "rotating",
                                              "perturbed"};
  return names;
}

/// Analytic tetrads: identity; constant boost; constant rotation; rigid
/// frame rotating about z at omega; identity plus a weak sinusoidal
/// perturbation in every entry.
inline TetradModel catalog_tetrad(const std::string& name, const CatalogParams& p = {},
                                  const Config4D& cfg = {}) {
  cfg.check();
  if (name == "identity") return {name, [](const Vec4&) -> Mat4 { return Mat4::Identity(); }};
  if (name == "boost") {
    const Mat4 e = compose_frame(Mat4::Identity(), lorentz_boost(p.velocity * cfg.light_speed, cfg.light_speed));
    return {name, [e](const Vec4&) -> Mat4 { return e; }};
  }
  if (name == "rotation") {
    const Mat4 e = compose_frame(rotation_from_euler(p.euler[0], p.euler[1], p.euler[2]), Mat4::Identity());
    return {name, [e](const Vec4&) -> Mat4 { return e; }};
  }
  if (name == "rotating") {
    const double w = p.omega, c = cfg.light_speed;
    return {name,
            [w, c](const Vec4& x) -> Mat4 {
              return compose_frame(rotation_from_euler(0.0, w * x[0] / c, 0.0), Mat4::Identity());
            },
            w};
  }
  if (name == "perturbed") {
    const double eps = p.epsilon;
    return {name, [eps](const Vec4& x) -> Mat4 {
              Mat4 e = Mat4::Identity();
              for (int a = 0; a < 4; ++a)
                for (int m = 0; m < 4; ++m) {
                  const Vec4 k(0.5 + 0.25 * ((a + m) % 3), 0.75 + 0.25 * ((a * m + 1) % 3),
                               0.5 + 0.25 * (a % 2), 0.5 + 0.25 * (m % 3));
                  e(a, m) += eps * std::sin(k.dot(x) + 0.3 * a + 0.7 * m) / (1.0 + 0.5 * (a + m));
                }
              return e;
            }};
  }
  throw InvalidArgument("unknown tetrad '" + name + "'");
}

}  // namespace spingeo::tele
