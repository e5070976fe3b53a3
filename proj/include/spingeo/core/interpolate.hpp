#pragma once

#include <cmath>

#include "spingeo/core/grid.hpp"

namespace spingeo {

enum class InterpKernel {
  multilinear,  ///< exact on nodes and on linear data; bounded by neighbours
  cubic,        ///< 4-point Lagrange: fourth order in value, second in curvature
};

namespace detail {

struct AxisWeights {
  int base = 0;
  int count = 1;
  double w[4] = {1.0, 0.0, 0.0, 0.0};
};

inline AxisWeights axis_weights(const GridSpec& g, int axis, double x,
                                InterpKernel kernel) {
  AxisWeights aw;
  if (!g.active(axis)) return aw;
  const double u = (x + 0.5 * g.extent(axis)) / g.spacing(axis);
  const double fl = std::floor(u);
  const double t = u - fl;
  const int i0 = static_cast<int>(fl);
  if (kernel == InterpKernel::multilinear) {
    aw.base = i0;
    aw.count = 2;
    aw.w[0] = 1.0 - t;
    aw.w[1] = t;
  } else {
    aw.base = i0 - 1;
    aw.count = 4;
    // nodes at -1, 0, 1, 2 relative to i0
    aw.w[0] = -t * (t - 1.0) * (t - 2.0) / 6.0;
    aw.w[1] = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
    aw.w[2] = -(t + 1.0) * t * (t - 2.0) / 2.0;
    aw.w[3] = (t + 1.0) * t * (t - 1.0) / 6.0;
  }
  return aw;
}

inline int wrap(int i, int n) { return ((i % n) + n) % n; }

}  // namespace detail

/// Value of `f` at a physical point; the point is wrapped into the periodic
/// box. Inactive axes ignore the corresponding coordinate.
template <typename T>
T interpolate(const Field<T>& f, const Vec3& p,
              InterpKernel kernel = InterpKernel::multilinear) {
  if (!p.allFinite()) throw InvalidArgument("interpolate: non-finite point");
  const GridSpec& g = f.grid;
  detail::AxisWeights w[3];
  for (int a = 0; a < 3; ++a) w[a] = detail::axis_weights(g, a, p[a], kernel);
  T acc = Field<T>::zero();
  for (int c = 0; c < w[2].count; ++c) {
    const int k = detail::wrap(w[2].base + c, g.points(2));
    for (int b = 0; b < w[1].count; ++b) {
      const int j = detail::wrap(w[1].base + b, g.points(1));
      const double wjk = w[1].w[b] * w[2].w[c];
      for (int a = 0; a < w[0].count; ++a) {
        const int i = detail::wrap(w[0].base + a, g.points(0));
        acc += f[g.index(i, j, k)] * (w[0].w[a] * wjk);
      }
    }
  }
  return acc;
}

/// True when every node the kernel touches at `p` is valid.
inline bool interpolation_support_valid(const GridSpec& g, const Mask& mask,
                                        const Vec3& p,
                                        InterpKernel kernel = InterpKernel::multilinear) {
  if (mask.empty()) return true;
  detail::AxisWeights w[3];
  for (int a = 0; a < 3; ++a)
    w[a] = detail::axis_weights(g, a, p[a], kernel);
  for (int c = 0; c < w[2].count; ++c)
    for (int b = 0; b < w[1].count; ++b)
      for (int a = 0; a < w[0].count; ++a) {
        const auto n = g.index(detail::wrap(w[0].base + a, g.points(0)),
                               detail::wrap(w[1].base + b, g.points(1)),
                               detail::wrap(w[2].base + c, g.points(2)));
        if (!mask[n]) return false;
      }
  return true;
}

}  // namespace spingeo
