#pragma once

// Euler-angle form of the spinor:
//   psi1 = R cos(theta/2) exp(-i(phi + chi)/2)
//   psi2 = R sin(theta/2) exp( i(chi - phi)/2)
// and the velocity written in those angles.

#include <cmath>
#include <numbers>

#include "spingeo/core/calculus.hpp"
#include "spingeo/spinor/observables.hpp"

namespace spingeo {

/// Angle below which (or above pi minus which) a node is treated as a pole
/// of the spin sphere, where phi and chi are not separately defined.
inline constexpr double kPoleAngle = 1e-8;

enum class Pole : std::uint8_t { none = 0, north = 1, south = 2 };

struct EulerFields {
  ScalarField R, theta, phi, chi;
  std::vector<Pole> pole;  ///< pole gauge applied (phi := 0) at these nodes
  Mask valid;
};

/// Sign and role choices that reconcile the Euler and Frenet velocity forms
/// with the bilinear velocity; fixed by calibrate_conventions.
struct ConventionSignature {
  int sigma_euler = 1;
  int sigma_frenet = 1;
  bool role_swap = false;

  bool operator==(const ConventionSignature&) const = default;
};

inline double wrap_angle(double a) {
  return std::remainder(a, 2.0 * std::numbers::pi);
}

inline EulerFields euler_decompose(const SpinorField& psi) {
  const GridSpec& g = psi.grid;
  EulerFields e{ScalarField(g), ScalarField(g), ScalarField(g), ScalarField(g),
                std::vector<Pole>(g.size(), Pole::none), {}};
  const auto rho = density(psi);
  e.valid = density_mask(rho);
  for (std::size_t n = 0; n < g.size(); ++n) {
    e.R[n] = std::sqrt(rho[n]);
    if (!e.valid[n]) continue;
    const double a = std::abs(psi[n][0]), b = std::abs(psi[n][1]);
    const double th = 2.0 * std::atan2(b, a);
    e.theta[n] = th;
    const double pa = std::arg(psi[n][0]), pb = std::arg(psi[n][1]);
    if (th < kPoleAngle) {
      e.pole[n] = Pole::north;
      e.phi[n] = 0.0;
      e.chi[n] = wrap_angle(-2.0 * pa);
    } else if (th > std::numbers::pi - kPoleAngle) {
      e.pole[n] = Pole::south;
      e.phi[n] = 0.0;
      e.chi[n] = wrap_angle(2.0 * pb);
    } else {
      e.phi[n] = wrap_angle(-(pa + pb));
      e.chi[n] = wrap_angle(pb - pa);
    }
  }
  return e;
}

inline SpinorField euler_compose(const EulerFields& e) {
  using namespace std::complex_literals;
  SpinorField psi(e.R.grid);
  for (std::size_t n = 0; n < psi.size(); ++n) {
    require(e.R[n] >= 0.0, "euler_compose: negative amplitude");
    const double th = e.theta[n], ph = e.phi[n], ch = e.chi[n];
    psi[n][0] = e.R[n] * std::cos(0.5 * th) * std::exp(-0.5i * (ph + ch));
    psi[n][1] = e.R[n] * std::sin(0.5 * th) * std::exp(0.5i * (ch - ph));
  }
  return psi;
}

/// Central difference of an angle field, each one-step difference wrapped
/// into (-pi, pi] before summing.
inline ScalarField angle_derivative(const ScalarField& f, int axis) {
  ScalarField out(f.grid);
  if (!f.grid.active(axis)) return out;
  const double inv2h = 0.5 / f.grid.spacing(axis);
  for (std::size_t n = 0; n < f.size(); ++n) {
    const auto s = detail::neighbours(f.grid, n, axis);
    out[n] = (wrap_angle(f[s.plus] - f[n]) + wrap_angle(f[n] - f[s.minus])) * inv2h;
  }
  return out;
}

/// Deliberate corruption of the velocity forms, for exercising the
/// calibration-failure path. A global sign is absorbed by the search, so the
/// sign fault acts on the cos(theta) term alone.
struct InjectedFault {
  double scale = 1.0;
  double cos_term_sign = 1.0;
};

/// v = sigma (hbar/2m)(grad chi + cos(theta) grad phi) - (e/mc) A, with phi
/// and chi exchanged when conv.role_swap is set. A node is masked when its
/// stencil mixes pole-gauge and regular nodes.
inline MaskedVectorField velocity_euler(const EulerFields& e, const VectorField* A,
                                        const ConventionSignature& conv,
                                        const PhysicalConstants& k,
                                        const InjectedFault& fault = {}) {
  const GridSpec& g = e.R.grid;
  MaskedVectorField out{VectorField(g), e.valid};
  for (std::size_t n = 0; n < g.size(); ++n) {
    if (!out.valid[n]) continue;
    for (int a = 0; a < g.dims(); ++a) {
      const auto s = detail::neighbours(g, n, a);
      if (!e.valid[s.minus] || !e.valid[s.plus] || e.pole[s.minus] != e.pole[n] ||
          e.pole[s.plus] != e.pole[n])
        out.valid[n] = 0;
    }
  }
  const ScalarField& lead = conv.role_swap ? e.phi : e.chi;
  const ScalarField& weighted = conv.role_swap ? e.chi : e.phi;
  const double pref = conv.sigma_euler * 0.5 * PhysicalConstants::hbar /
                      PhysicalConstants::mass * fault.scale;
  for (int a = 0; a < g.dims(); ++a) {
    const auto dl = angle_derivative(lead, a);
    const auto dw = angle_derivative(weighted, a);
    for (std::size_t n = 0; n < g.size(); ++n)
      if (out.valid[n])
        out.field[n][a] = pref * (dl[n] + fault.cos_term_sign * std::cos(e.theta[n]) * dw[n]);
  }
  if (A) {
    require_same_grid(g, A->grid, "velocity_euler");
    for (std::size_t n = 0; n < g.size(); ++n)
      if (out.valid[n]) out.field[n] -= k.gyro() * (*A)[n];
  }
  return out;
}

}  // namespace spingeo
