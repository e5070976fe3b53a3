#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "spingeo/core/error.hpp"

namespace spingeo {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using cplx = std::complex<double>;
using Spinor = Eigen::Vector2cd;

/// Uniform periodic grid with 1 to 3 active axes.
///
/// Axes beyond `dims` are inactive: they carry a single sample and every
/// derivative along them is zero. The box is centred on the origin, so
/// node i on axis a sits at -extent/2 + i * spacing.
class GridSpec {
 public:
  GridSpec() = default;

  GridSpec(int dims, std::array<double, 3> extents, std::array<int, 3> points)
      : dims_(dims), extents_(extents), points_(points) {
    require(dims >= 1 && dims <= 3, "grid: dims must be 1..3");
    for (int a = 0; a < 3; ++a) {
      if (a < dims) {
        require(points_[a] >= 8, "grid: at least 8 points per active axis");
        require(extents_[a] > 0 && std::isfinite(extents_[a]),
                "grid: extents must be positive");
      } else {
        points_[a] = 1;
        extents_[a] = 1.0;
      }
    }
  }

  /// Cubic box: same extent and point count on every active axis.
  static GridSpec cube(int dims, double extent, int points) {
    return GridSpec(dims, {extent, extent, extent}, {points, points, points});
  }

  int dims() const { return dims_; }
  double extent(int a) const { return extents_[a]; }
  int points(int a) const { return points_[a]; }
  const std::array<double, 3>& extents() const { return extents_; }
  const std::array<int, 3>& point_counts() const { return points_; }
  bool active(int a) const { return a < dims_; }
  double spacing(int a) const { return extents_[a] / points_[a]; }
  double min_spacing() const {
    double h = spacing(0);
    for (int a = 1; a < dims_; ++a) h = std::min(h, spacing(a));
    return h;
  }
  /// Volume element of one cell over the active axes.
  double cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dims_; ++a) v *= spacing(a);
    return v;
  }
  double volume() const {
    double v = 1.0;
    for (int a = 0; a < dims_; ++a) v *= extents_[a];
    return v;
  }
  std::size_t size() const {
    return static_cast<std::size_t>(points_[0]) * points_[1] * points_[2];
  }

  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(points_[0]) *
               (static_cast<std::size_t>(j) +
                static_cast<std::size_t>(points_[1]) * k);
  }
  std::array<int, 3> unravel(std::size_t n) const {
    const int i = static_cast<int>(n % points_[0]);
    n /= points_[0];
    const int j = static_cast<int>(n % points_[1]);
    const int k = static_cast<int>(n / points_[1]);
    return {i, j, k};
  }
  /// Linear index of the neighbour `offset` steps along `axis`, wrapped.
  std::size_t shifted(std::size_t n, int axis, int offset) const {
    auto c = unravel(n);
    const int np = points_[axis];
    c[axis] = ((c[axis] + offset) % np + np) % np;
    return index(c[0], c[1], c[2]);
  }
  double coordinate(int axis, int i) const {
    if (!active(axis)) return 0.0;
    return -0.5 * extents_[axis] + i * spacing(axis);
  }
  Vec3 position(std::size_t n) const {
    const auto c = unravel(n);
    return {coordinate(0, c[0]), coordinate(1, c[1]), coordinate(2, c[2])};
  }

  bool operator==(const GridSpec& o) const {
    return dims_ == o.dims_ && extents_ == o.extents_ && points_ == o.points_;
  }
  bool operator!=(const GridSpec& o) const { return !(*this == o); }

 private:
  int dims_ = 1;
  std::array<double, 3> extents_{1.0, 1.0, 1.0};
  std::array<int, 3> points_{8, 1, 1};
};

/// Values sampled at every node of a grid.
template <typename T>
struct Field {
  GridSpec grid;
  std::vector<T> values;

  Field() = default;
  explicit Field(const GridSpec& g, const T& fill = zero())
      : grid(g), values(g.size(), fill) {}

  static T zero() {
    if constexpr (std::is_arithmetic_v<T> || std::is_same_v<T, cplx>) {
      return T(0);
    } else {
      return T::Zero();
    }
  }

  std::size_t size() const { return values.size(); }
  T& operator[](std::size_t n) { return values[n]; }
  const T& operator[](std::size_t n) const { return values[n]; }

  /// Samples f(position) at every node.
  template <typename F>
  static Field sample(const GridSpec& g, F&& f) {
    Field out(g);
    for (std::size_t n = 0; n < g.size(); ++n) out[n] = f(g.position(n));
    return out;
  }
};

using ScalarField = Field<double>;
using VectorField = Field<Vec3>;
using SpinorField = Field<Spinor>;

/// Per-node validity flag (1 = usable).
using Mask = std::vector<std::uint8_t>;

inline void require_same_grid(const GridSpec& a, const GridSpec& b,
                              const char* what) {
  if (a != b) throw GridMismatch(std::string("grid mismatch: ") + what);
}

/// Physical constants in natural units (hbar = m = 1).
struct PhysicalConstants {
  static constexpr double hbar = 1.0;
  static constexpr double mass = 1.0;
  double charge = 0.0;
  double light_speed = 1.0;

  PhysicalConstants() = default;
  PhysicalConstants(double e, double c) : charge(e), light_speed(c) {
    require(c > 0 && std::isfinite(c), "constants: light speed must be > 0");
    require(std::isfinite(e), "constants: charge must be finite");
  }
  double bohr_magneton() const {
    return charge * hbar / (2.0 * mass * light_speed);
  }
  /// e / (m c): the coefficient of the precession and spin-gradient terms.
  double gyro() const { return charge / (mass * light_speed); }
};

inline bool all_finite(const SpinorField& f) {
  for (const auto& v : f.values)
    if (!std::isfinite(v[0].real()) || !std::isfinite(v[0].imag()) ||
        !std::isfinite(v[1].real()) || !std::isfinite(v[1].imag()))
      return false;
  return true;
}

inline bool all_finite(const VectorField& f) {
  for (const auto& v : f.values)
    if (!v.allFinite()) return false;
  return true;
}

}  // namespace spingeo
