#pragma once

// Closed-form initial states and the reference values each one carries.

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <string>

#include "spingeo/pauli/hamiltonian.hpp"
#include "spingeo/spinor/euler.hpp"

namespace spingeo::states {

using namespace std::complex_literals;
inline constexpr double pi = std::numbers::pi;

/// e^{ikx}(1, 0)
inline SpinorField plane_wave(const GridSpec& g, double k) {
  return SpinorField::sample(g, [&](const Vec3& x) -> Spinor {
    return Spinor(std::exp(1i * k * x[0]), 0.0);
  });
}

/// e^{ikx}(cos a, sin a)
inline SpinorField two_component_plane_wave(const GridSpec& g, double k, double alpha) {
  return SpinorField::sample(g, [&](const Vec3& x) -> Spinor {
    return std::exp(1i * k * x[0]) * Spinor(std::cos(alpha), std::sin(alpha));
  });
}

/// The spinor components carry e^{-+iqx/2}, so the helix is periodic on the
/// box only for an even number of turns; odd counts are antiperiodic.
inline void require_periodic_helix(const GridSpec& g, double q) {
  const double turns = q * g.extent(0) / (2 * pi);
  const double r = std::round(turns);
  if (std::abs(turns - r) > 1e-9 || std::fmod(std::abs(r), 2.0) != 0.0)
    throw InvalidArgument("spin_helix: q L / 2 pi = " + std::to_string(turns) +
                          " turns; the spinor is periodic only for an even number of turns");
}

/// Spin lying in the xy-plane and turning about z with wavenumber q:
/// s = (hbar/2)(cos qx, sin qx, 0). `envelope` modulates the amplitude as
/// 1 + envelope cos(2 pi x / L), which makes the state non-stationary.
inline SpinorField spin_helix(const GridSpec& g, double q, double envelope = 0.0) {
  require_periodic_helix(g, q);
  const double kL = 2 * pi / g.extent(0);
  return SpinorField::sample(g, [&](const Vec3& x) -> Spinor {
    const double R = (1.0 + envelope * std::cos(kL * x[0])) / std::sqrt(2.0);
    return Spinor(R * std::exp(-0.5i * q * x[0]), R * std::exp(0.5i * q * x[0]));
  });
}

/// The same helix written through the Euler form: theta = pi/2 and the
/// spin azimuth qx placed in whichever angle the convention assigns it.
inline SpinorField spin_helix_euler(const GridSpec& g, double q, const ConventionSignature& conv) {
  require_periodic_helix(g, q);
  EulerFields e{ScalarField(g, 1.0), ScalarField(g, pi / 2), ScalarField(g), ScalarField(g),
                std::vector<Pole>(g.size(), Pole::none), Mask(g.size(), 1)};
  auto& azimuth = conv.role_swap ? e.chi : e.phi;
  for (std::size_t n = 0; n < g.size(); ++n) azimuth[n] = wrap_angle(q * g.position(n)[0]);
  return euler_compose(e);
}

/// Normalised Gaussian packet exp(-|x|^2 / 4 sigma0^2 + i k0 x) times a
/// constant spinor; the density has standard deviation sigma0 per axis.
inline SpinorField gaussian(const GridSpec& g, double sigma0, const Spinor& spin = Spinor(1, 0),
                            double k0 = 0.0) {
  const double norm = std::pow(2 * pi * sigma0 * sigma0, -0.25 * g.dims());
  const Spinor u = spin.normalized();
  return SpinorField::sample(g, [&](const Vec3& x) -> Spinor {
    const double r2 = x.squaredNorm();
    return norm * std::exp(-r2 / (4 * sigma0 * sigma0) + 1i * k0 * x[0]) * u;
  });
}

/// Gaussian packet whose spin direction varies smoothly across it.
inline SpinorField gaussian_texture(const GridSpec& g, double sigma0) {
  const double norm = std::pow(2 * pi * sigma0 * sigma0, -0.25 * g.dims());
  const double a = 1.0 / sigma0;
  return SpinorField::sample(g, [&](const Vec3& x) -> Spinor {
    const double th = pi / 3 + 0.6 * std::tanh(a * x[0]) + 0.3 * std::sin(a * x[1]);
    const double ph = 0.8 * a * x[0] - 0.5 * std::cos(a * x[2]) + 0.3 * a * x[1];
    const double amp = norm * std::exp(-x.squaredNorm() / (4 * sigma0 * sigma0));
    return amp * Spinor(std::cos(th / 2), std::sin(th / 2) * std::exp(1i * ph));
  });
}

/// Ring-shaped amplitude exp(-(r - r0)^2 / 2 w^2) in the xy-plane.
inline double ring_amplitude(const Vec3& x, double r0, double w) {
  const double r = std::hypot(x[0], x[1]);
  return std::exp(-(r - r0) * (r - r0) / (2 * w * w));
}

/// Spin lines are horizontal circles about the z-axis; the bilinear triad is
/// the Frenet frame (inward normal, binormal z, tangent).
inline SpinorField spin_circle(const GridSpec& g, double r0, double w) {
  return SpinorField::sample(g, [&](const Vec3& x) -> Spinor {
    const double r = std::hypot(x[0], x[1]);
    if (r < 1e-12) return Spinor(0.0, 0.0);
    const Vec3 rh(x[0] / r, x[1] / r, 0.0), ph(-x[1] / r, x[0] / r, 0.0);
    Mat3 F;
    F.col(0) = -rh;
    F.col(1) = Vec3::UnitZ();
    F.col(2) = ph;
    return spinor_from_frame(F, ring_amplitude(x, r0, w));
  });
}

/// Spin lines are helices r (cos u, sin u, b u / r) around the z-axis; the
/// bilinear triad is their Frenet frame.
inline SpinorField spin_helix_lines(const GridSpec& g, double r0, double w, double b) {
  return SpinorField::sample(g, [&](const Vec3& x) -> Spinor {
    const double r = std::hypot(x[0], x[1]);
    if (r < 1e-12) return Spinor(0.0, 0.0);
    const Vec3 rh(x[0] / r, x[1] / r, 0.0), ph(-x[1] / r, x[0] / r, 0.0);
    const double c = std::hypot(r, b);
    const Vec3 t = (r * ph + b * Vec3::UnitZ()) / c;
    const Vec3 m = -rh;
    Mat3 F;
    F.col(0) = m;
    F.col(1) = t.cross(m);
    F.col(2) = t;
    return spinor_from_frame(F, ring_amplitude(x, r0, w));
  });
}

/// Smooth band-limited texture with a nowhere-vanishing density.
inline SpinorField random_texture(const GridSpec& g, unsigned seed, int modes = 4) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  struct Mode {
    Vec3 k;
    cplx a1, a2;
  };
  std::vector<Mode> ms;
  for (int i = 0; i < modes; ++i) {
    Vec3 k = Vec3::Zero();
    for (int a = 0; a < g.dims(); ++a) k[a] = 2 * pi * std::round(1.5 * u(rng)) / g.extent(a);
    ms.push_back({k, 0.3 * cplx(u(rng), u(rng)), 0.3 * cplx(u(rng), u(rng))});
  }
  return SpinorField::sample(g, [&](const Vec3& x) -> Spinor {
    Spinor p(1.0, 0.5i);
    for (const auto& m : ms) {
      const cplx e = std::exp(1i * m.k.dot(x));
      p[0] += m.a1 * e;
      p[1] += m.a2 * e;
    }
    return p;
  });
}

}  // namespace spingeo::states
