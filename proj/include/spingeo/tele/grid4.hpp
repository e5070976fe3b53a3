#pragma once

// Non-periodic space-time patch (x^0 = ct, x, y, z) and the rank-3 and
// rank-4 coefficient layouts used by the teleparallel module.

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "spingeo/core/error.hpp"

namespace spingeo::tele {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

/// eta_ab = diag(-1, 1, 1, 1)
inline Mat4 minkowski() { return Eigen::Vector4d(-1, 1, 1, 1).asDiagonal(); }

/// Grid nodes include both ends of every axis. An axis with a single point
/// is inactive: fields are taken constant along it and its derivative is 0.
struct Grid4 {
  std::array<int, 4> n{1, 1, 1, 1};
  std::array<double, 4> lo{0, 0, 0, 0}, hi{0, 0, 0, 0};

  Grid4() = default;
  Grid4(std::array<int, 4> points, std::array<double, 4> lower, std::array<double, 4> upper)
      : n(points), lo(lower), hi(upper) {
    for (int a = 0; a < 4; ++a) {
      require(n[a] >= 1, "grid4: axis needs at least one point");
      if (n[a] > 1) require(hi[a] > lo[a], "grid4: empty axis extent");
    }
  }
  /// N points per axis on [-L/2, L/2]^4.
  static Grid4 cube(int points, double extent) {
    require(points >= 5, "grid4: at least 5 points per axis");
    const double h = 0.5 * extent;
    return Grid4({points, points, points, points}, {-h, -h, -h, -h}, {h, h, h, h});
  }

  bool active(int a) const { return n[a] > 1; }
  double spacing(int a) const { return active(a) ? (hi[a] - lo[a]) / (n[a] - 1) : 0.0; }
  std::size_t size() const {
    return static_cast<std::size_t>(n[0]) * n[1] * n[2] * n[3];
  }
  std::size_t stride(int a) const {
    std::size_t s = 1;
    for (int b = 3; b > a; --b) s *= static_cast<std::size_t>(n[b]);
    return s;
  }
  std::size_t index(const std::array<int, 4>& i) const {
    return ((static_cast<std::size_t>(i[0]) * n[1] + i[1]) * n[2] + i[2]) * n[3] + i[3];
  }
  std::array<int, 4> coords(std::size_t idx) const {
    std::array<int, 4> i{};
    for (int a = 3; a >= 0; --a) {
      i[a] = static_cast<int>(idx % n[a]);
      idx /= n[a];
    }
    return i;
  }
  Vec4 position(std::size_t idx) const {
    const auto i = coords(idx);
    Vec4 p;
    for (int a = 0; a < 4; ++a) p[a] = active(a) ? lo[a] + i[a] * spacing(a) : lo[a];
    return p;
  }
  /// Distance in nodes to the nearest edge over the active axes.
  int margin(std::size_t idx) const {
    const auto i = coords(idx);
    int m = 1 << 20;
    for (int a = 0; a < 4; ++a)
      if (active(a)) m = std::min({m, i[a], n[a] - 1 - i[a]});
    return m;
  }
  bool operator==(const Grid4&) const = default;
};

/// C^a_{bc} with the derivative (or last) index c.
struct Conn {
  std::array<double, 64> v{};
  double& operator()(int a, int b, int c) { return v[a * 16 + b * 4 + c]; }
  double operator()(int a, int b, int c) const { return v[a * 16 + b * 4 + c]; }
  double max_abs() const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
};

inline Conn operator-(const Conn& a, const Conn& b) {
  Conn r;
  for (int i = 0; i < 64; ++i) r.v[i] = a.v[i] - b.v[i];
  return r;
}
inline Conn operator+(const Conn& a, const Conn& b) {
  Conn r;
  for (int i = 0; i < 64; ++i) r.v[i] = a.v[i] + b.v[i];
  return r;
}

/// R^a_{bcd}
struct Riemann {
  std::array<double, 256> v{};
  double& operator()(int a, int b, int c, int d) { return v[a * 64 + b * 16 + c * 4 + d]; }
  double operator()(int a, int b, int c, int d) const { return v[a * 64 + b * 16 + c * 4 + d]; }
};

inline double max_abs_diff(const Riemann& a, const Riemann& b) {
  double m = 0.0;
  for (int i = 0; i < 256; ++i) m = std::max(m, std::abs(a.v[i] - b.v[i]));
  return m;
}

inline double max_abs(const Riemann& a) {
  double m = 0.0;
  for (double x : a.v) m = std::max(m, std::abs(x));
  return m;
}

/// Central difference of a tabulated quantity along axis `a` at interior
/// node `idx`; zero on inactive axes.
template <typename T, typename Sub>
T central_difference(const Grid4& g, const std::vector<T>& f, std::size_t idx, int a, Sub sub) {
  if (!g.active(a)) return sub(f[idx], f[idx], 0.0);
  const std::size_t s = g.stride(a);
  return sub(f[idx + s], f[idx - s], 0.5 / g.spacing(a));
}

inline Mat4 diff_mat(const Mat4& p, const Mat4& m, double w) { return (p - m) * w; }
inline Conn diff_conn(const Conn& p, const Conn& m, double w) {
  Conn r;
  for (int i = 0; i < 64; ++i) r.v[i] = (p.v[i] - m.v[i]) * w;
  return r;
}

}  // namespace spingeo::tele
