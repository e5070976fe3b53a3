#pragma once

// Spin streamlines: integral curves of the unit spin field, their
// Serret-Frenet apparatus from arc-length differencing, and the curvature
// and torsion read off the torsion coefficients along the same curve.

#include <string>
#include <vector>

#include "spingeo/core/interpolate.hpp"
#include "spingeo/triad/frenet.hpp"
#include "spingeo/triad/triad.hpp"

namespace spingeo {

enum StreamlineFlag : std::uint8_t {
  kFlagNone = 0,
  kFlagDegenerate = 1,  ///< kappa below threshold; m, n parallel-transported, tau := 0
  kFlagTruncated = 2,   ///< last sample before the path entered a masked region
};

struct StreamlineGeometry {
  double ds = 0.0;
  double eps_kappa = 0.0;
  std::vector<Vec3> points, tangent, m, n;
  std::vector<double> kappa, tau;
  std::vector<std::uint8_t> flags;
  bool truncated = false;

  std::size_t size() const { return points.size(); }
  double arc(std::size_t i) const { return ds * static_cast<double>(i); }
};

struct TraceOptions {
  double ds = 0.0;       ///< 0 means a quarter of the smallest grid spacing
  double max_len = 0.0;  ///< arc length to integrate
  InterpKernel kernel = InterpKernel::cubic;
};

namespace detail {

inline Vec3 unit_spin_at(const VectorField& s, const Vec3& p, InterpKernel kernel) {
  const Vec3 v = interpolate(s, p, kernel);
  const double len = v.norm();
  if (!(len > 1e-12)) {
    throw InvalidArgument("streamline: zero spin at (" + std::to_string(p[0]) + ", " +
                          std::to_string(p[1]) + ", " + std::to_string(p[2]) + ")");
  }
  return v / len;
}

}  // namespace detail

/// RK4 for dx/ds = s_hat(x). The trace stops, flagged, once the
/// interpolation support of a stage leaves the valid mask.
inline StreamlineGeometry trace_spin_streamline(const VectorField& s, const Mask& valid,
                                                const Vec3& seed, const TraceOptions& opt) {
  const GridSpec& g = s.grid;
  require(valid.empty() || valid.size() == g.size(), "streamline: mask size");
  require(opt.max_len > 0, "streamline: max_len must be positive");
  StreamlineGeometry line;
  line.ds = opt.ds > 0 ? opt.ds : 0.25 * g.min_spacing();
  line.eps_kappa = kKappaRatio / g.min_spacing();
  if (!interpolation_support_valid(g, valid, seed, opt.kernel))
    throw InvalidArgument("streamline: seed lies in a masked region");

  const auto steps = static_cast<std::size_t>(std::ceil(opt.max_len / line.ds));
  const double h = line.ds;
  Vec3 x = seed;
  auto f = [&](const Vec3& p) { return detail::unit_spin_at(s, p, opt.kernel); };
  auto usable = [&](const Vec3& p) { return interpolation_support_valid(g, valid, p, opt.kernel); };

  line.points.push_back(x);
  line.tangent.push_back(f(x));
  for (std::size_t i = 0; i < steps; ++i) {
    const Vec3 k1 = f(x);
    const Vec3 p2 = x + 0.5 * h * k1;
    if (!usable(p2)) { line.truncated = true; break; }
    const Vec3 k2 = f(p2);
    const Vec3 p3 = x + 0.5 * h * k2;
    if (!usable(p3)) { line.truncated = true; break; }
    const Vec3 k3 = f(p3);
    const Vec3 p4 = x + h * k3;
    if (!usable(p4)) { line.truncated = true; break; }
    const Vec3 k4 = f(p4);
    const Vec3 next = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!usable(next)) { line.truncated = true; break; }
    x = next;
    line.points.push_back(x);
    line.tangent.push_back(f(x));
  }
  line.flags.assign(line.size(), kFlagNone);
  if (line.truncated) line.flags.back() |= kFlagTruncated;
  return line;
}

namespace detail {

/// Second-order derivative along the samples: central inside, one-sided
/// three-point at the two ends.
inline std::vector<Vec3> arc_derivative(const std::vector<Vec3>& f, double ds) {
  const std::size_t N = f.size();
  std::vector<Vec3> d(N);
  for (std::size_t i = 1; i + 1 < N; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * ds);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * ds);
  d[N - 1] = (3.0 * f[N - 1] - 4.0 * f[N - 2] + f[N - 3]) / (2.0 * ds);
  return d;
}

inline Vec3 any_normal(const Vec3& t) {
  const Vec3 ax = std::abs(t[0]) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  return (ax - ax.dot(t) * t).normalized();
}

}  // namespace detail

/// kappa = |dt/ds|, m = (dt/ds)/kappa, n = t x m, tau = -m . dn/ds.
inline StreamlineGeometry frenet_apparatus(StreamlineGeometry line) {
  const std::size_t N = line.size();
  if (N < 5) throw InvalidArgument("frenet_apparatus: need at least 5 samples");
  const auto dt = detail::arc_derivative(line.tangent, line.ds);
  line.kappa.assign(N, 0.0);
  line.tau.assign(N, 0.0);
  line.m.assign(N, Vec3::Zero());
  line.n.assign(N, Vec3::Zero());
  line.flags.resize(N, kFlagNone);

  std::vector<bool> degenerate(N);
  for (std::size_t i = 0; i < N; ++i) {
    line.kappa[i] = dt[i].norm();
    degenerate[i] = line.kappa[i] < line.eps_kappa;
    if (!degenerate[i]) line.m[i] = dt[i] / line.kappa[i];
  }
  // Degenerate samples inherit the previous normal, projected off the new
  // tangent; a degenerate head takes the first regular normal downstream.
  std::size_t first = 0;
  while (first < N && degenerate[first]) ++first;
  Vec3 carry = first < N ? line.m[first] : detail::any_normal(line.tangent[0]);
  for (std::size_t i = first; i-- > 0;) {
    carry = (carry - carry.dot(line.tangent[i]) * line.tangent[i]).normalized();
    line.m[i] = carry;
  }
  for (std::size_t i = first; i < N; ++i) {
    if (degenerate[i]) {
      const Vec3& t = line.tangent[i];
      line.m[i] = (line.m[i - 1] - line.m[i - 1].dot(t) * t).normalized();
    }
  }
  for (std::size_t i = 0; i < N; ++i) {
    line.n[i] = line.tangent[i].cross(line.m[i]);
    if (degenerate[i]) line.flags[i] |= kFlagDegenerate;
  }
  const auto dn = detail::arc_derivative(line.n, line.ds);
  for (std::size_t i = 0; i < N; ++i)
    line.tau[i] = degenerate[i] ? 0.0 : -line.m[i].dot(dn[i]);
  return line;
}

struct TorsionCurvature {
  std::vector<double> kappa, tau;
  /// kappa read with the frame indices exchanged; equals -kappa when the
  /// coefficients are antisymmetric in their frame indices.
  std::vector<double> kappa_swapped;
  std::vector<std::uint8_t> flags;
};

/// Projects T^i_{jk} onto the streamline's Frenet frame:
/// kappa_T = s_i T^i_{jk} m^j t^k, tau_T = m_i T^i_{jk} n^j t^k.
inline TorsionCurvature kappa_tau_from_torsion(const Tensor3Field& T,
                                               const StreamlineGeometry& line,
                                               InterpKernel kernel = InterpKernel::cubic) {
  if (line.m.size() != line.size())
    throw InvalidArgument("kappa_tau_from_torsion: run frenet_apparatus first");
  TorsionCurvature out;
  out.flags = line.flags;
  const std::size_t N = line.size();
  out.kappa.resize(N);
  out.tau.resize(N);
  out.kappa_swapped.resize(N);
  for (std::size_t p = 0; p < N; ++p) {
    const Tensor3 c = interpolate(T, line.points[p], kernel);
    const Vec3& t = line.tangent[p];
    // A(i, j) = T^i_{jk} t^k
    Mat3 A = Mat3::Zero();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) A(i, j) += c[t3(i, j, k)] * t[k];
    out.kappa[p] = t.dot(A * line.m[p]);
    out.kappa_swapped[p] = line.m[p].dot(A * t);
    out.tau[p] = line.m[p].dot(A * line.n[p]);
  }
  return out;
}

}  // namespace spingeo
