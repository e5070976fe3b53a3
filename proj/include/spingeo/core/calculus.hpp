#pragma once

// Central second-order finite differences on periodic grids. Every module
// takes its derivatives from here so that residual comparisons between two
// formulations always see the same discrete operator.

#include <array>
#include <string>

#include "spingeo/core/grid.hpp"
#include "spingeo/core/parallel.hpp"

namespace spingeo {

enum class DiffKind { grad, div, curl, laplacian };

namespace detail {

struct Stencil {
  std::size_t minus, plus;
};

inline Stencil neighbours(const GridSpec& g, std::size_t n, int axis) {
  const auto c = g.unravel(n);
  const int np = g.points(axis);
  auto cm = c, cp = c;
  cm[axis] = (c[axis] + np - 1) % np;
  cp[axis] = (c[axis] + 1) % np;
  return {g.index(cm[0], cm[1], cm[2]), g.index(cp[0], cp[1], cp[2])};
}

}  // namespace detail

/// d/dx_axis with the central stencil (f[i+1] - f[i-1]) / 2h.
template <typename T>
Field<T> derivative(const Field<T>& f, int axis) {
  Field<T> out(f.grid);
  if (!f.grid.active(axis)) return out;
  const double inv2h = 0.5 / f.grid.spacing(axis);
  parallel_for(f.size(), [&](std::size_t n) {
    const auto s = detail::neighbours(f.grid, n, axis);
    out[n] = (f[s.plus] - f[s.minus]) * inv2h;
  });
  return out;
}

/// Sum over active axes of (f[i+1] - 2 f[i] + f[i-1]) / h^2.
template <typename T>
Field<T> laplacian(const Field<T>& f) {
  Field<T> out(f.grid);
  for (int a = 0; a < f.grid.dims(); ++a) {
    const double invh2 = 1.0 / (f.grid.spacing(a) * f.grid.spacing(a));
    parallel_for(f.size(), [&](std::size_t n) {
      const auto s = detail::neighbours(f.grid, n, a);
      out[n] += (f[s.plus] - 2.0 * f[n] + f[s.minus]) * invh2;
    });
  }
  return out;
}

inline VectorField gradient(const ScalarField& f) {
  VectorField out(f.grid);
  for (int a = 0; a < f.grid.dims(); ++a) {
    const auto d = derivative(f, a);
    for (std::size_t n = 0; n < f.size(); ++n) out[n][a] = d[n];
  }
  return out;
}

inline ScalarField component(const VectorField& v, int c) {
  ScalarField out(v.grid);
  for (std::size_t n = 0; n < v.size(); ++n) out[n] = v[n][c];
  return out;
}

inline ScalarField divergence(const VectorField& v) {
  ScalarField out(v.grid);
  for (int a = 0; a < v.grid.dims(); ++a) {
    const auto d = derivative(component(v, a), a);
    for (std::size_t n = 0; n < v.size(); ++n) out[n] += d[n];
  }
  return out;
}

inline VectorField curl(const VectorField& v) {
  // J[a][n] = d v / dx_a
  std::array<VectorField, 3> J;
  for (int a = 0; a < 3; ++a) J[a] = derivative(v, a);
  VectorField out(v.grid);
  for (std::size_t n = 0; n < v.size(); ++n) {
    out[n] = Vec3(J[1][n][2] - J[2][n][1], J[2][n][0] - J[0][n][2],
                  J[0][n][1] - J[1][n][0]);
  }
  return out;
}

/// Gradient of every component: result[a][n] = d field / dx_a at node n.
template <typename T>
std::array<Field<T>, 3> jacobian(const Field<T>& f) {
  return {derivative(f, 0), derivative(f, 1), derivative(f, 2)};
}

/// (dir . grad) f for a per-node direction field.
template <typename T>
Field<T> directional(const std::array<Field<T>, 3>& jac,
                     const VectorField& dir) {
  Field<T> out(dir.grid);
  for (std::size_t n = 0; n < dir.size(); ++n)
    out[n] = jac[0][n] * dir[n][0] + jac[1][n] * dir[n][1] +
             jac[2][n] * dir[n][2];
  return out;
}

/// Dispatcher for the four operator kinds. Scalar input accepts grad and
/// laplacian; vector input accepts div, curl and (componentwise) laplacian.
inline ScalarField differential_scalar(const VectorField& v, DiffKind kind) {
  if (kind != DiffKind::div)
    throw InvalidArgument("differential: vector field -> scalar needs div");
  return divergence(v);
}

inline VectorField differential_vector(const VectorField& v, DiffKind kind) {
  switch (kind) {
    case DiffKind::curl: return curl(v);
    case DiffKind::laplacian: return laplacian(v);
    default:
      throw InvalidArgument("differential: kind does not map vector -> vector");
  }
}

inline VectorField differential_vector(const ScalarField& f, DiffKind kind) {
  if (kind != DiffKind::grad)
    throw InvalidArgument("differential: scalar -> vector needs grad");
  return gradient(f);
}

inline ScalarField differential_scalar(const ScalarField& f, DiffKind kind) {
  if (kind != DiffKind::laplacian)
    throw InvalidArgument("differential: scalar -> scalar needs laplacian");
  return laplacian(f);
}

/// Discrete L2 norm sqrt(sum f^2 dV) restricted to a mask (empty = all).
inline double l2_norm(const ScalarField& f, const Mask& mask = {}) {
  double s = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n)
    if (mask.empty() || mask[n]) s += f[n] * f[n];
  return std::sqrt(s * f.grid.cell_volume());
}

inline double l2_norm(const VectorField& f, const Mask& mask = {}) {
  double s = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n)
    if (mask.empty() || mask[n]) s += f[n].squaredNorm();
  return std::sqrt(s * f.grid.cell_volume());
}

inline double max_norm(const VectorField& f, const Mask& mask = {}) {
  double m = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n)
    if (mask.empty() || mask[n]) m = std::max(m, f[n].norm());
  return m;
}

inline double max_norm(const ScalarField& f, const Mask& mask = {}) {
  double m = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n)
    if (mask.empty() || mask[n]) m = std::max(m, std::abs(f[n]));
  return m;
}

/// Shrinks a mask so that a node stays valid only if every neighbour within
/// `radius` steps along each active axis is valid.
inline Mask erode(const GridSpec& g, const Mask& mask, int radius = 1) {
  Mask out = mask;
  for (int r = 0; r < radius; ++r) {
    Mask next = out;
    for (std::size_t n = 0; n < g.size(); ++n) {
      if (!out[n]) continue;
      for (int a = 0; a < g.dims() && next[n]; ++a) {
        const auto s = detail::neighbours(g, n, a);
        if (!out[s.minus] || !out[s.plus]) next[n] = 0;
      }
    }
    out.swap(next);
  }
  return out;
}

inline Mask mask_and(const Mask& a, const Mask& b) {
  Mask out(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) out[n] = a[n] && b[n];
  return out;
}

}  // namespace spingeo
