#pragma once

// Bilinear observables of a Pauli spinor field: density, spin, velocity and
// the conjugate-spinor vectors M, N that span the plane orthogonal to spin.

#include <algorithm>
#include <utility>

#include "spingeo/core/calculus.hpp"
#include "spingeo/core/grid.hpp"

namespace spingeo {

/// Nodes with rho below this fraction of max(rho) are singular for every
/// quantity that divides by rho.
inline constexpr double kDensityMaskRatio = 1e-10;

namespace pauli {

inline Eigen::Matrix2cd sigma(int j) {
  using namespace std::complex_literals;
  Eigen::Matrix2cd m;
  switch (j) {
    case 0: m << 0, 1, 1, 0; break;
    case 1: m << 0, -1i, 1i, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

/// psi^dagger sigma psi (unnormalised spin density, in units of hbar/2).
inline Vec3 spin_density(const Spinor& p) {
  const cplx c = std::conj(p[0]) * p[1];
  return {2.0 * c.real(), 2.0 * c.imag(), std::norm(p[0]) - std::norm(p[1])};
}

/// M + iN = psibar^T sigma psi with psibar = (-psi2, psi1), no conjugation.
inline std::pair<Vec3, Vec3> conjugate_bilinears(const Spinor& p) {
  using namespace std::complex_literals;
  const cplx x = p[0] * p[0] - p[1] * p[1];
  const cplx y = 1i * (p[0] * p[0] + p[1] * p[1]);
  const cplx z = -2.0 * p[0] * p[1];
  return {Vec3(x.real(), y.real(), z.real()), Vec3(x.imag(), y.imag(), z.imag())};
}

}  // namespace pauli

inline ScalarField density(const SpinorField& psi) {
  ScalarField rho(psi.grid);
  for (std::size_t n = 0; n < psi.size(); ++n) rho[n] = psi[n].squaredNorm();
  return rho;
}

inline Mask density_mask(const ScalarField& rho, double ratio = kDensityMaskRatio) {
  const double peak = *std::max_element(rho.values.begin(), rho.values.end());
  Mask m(rho.size());
  for (std::size_t n = 0; n < rho.size(); ++n)
    m[n] = peak > 0 && rho[n] > ratio * peak;
  return m;
}

struct DensitySpin {
  ScalarField rho;
  VectorField s;  ///< (hbar/2) psi^dag sigma psi / rho; zero where masked
  Mask valid;
};

inline DensitySpin density_spin(const SpinorField& psi) {
  DensitySpin out{density(psi), VectorField(psi.grid), {}};
  out.valid = density_mask(out.rho);
  for (std::size_t n = 0; n < psi.size(); ++n)
    if (out.valid[n])
      out.s[n] = 0.5 * PhysicalConstants::hbar * pauli::spin_density(psi[n]) / out.rho[n];
  return out;
}

struct MaskedVectorField {
  VectorField field;
  Mask valid;
};

/// Probability current Im(psi^dag grad psi) (hbar = m = 1), no gauge term.
inline VectorField current(const SpinorField& psi) {
  VectorField j(psi.grid);
  for (int a = 0; a < psi.grid.dims(); ++a) {
    const auto d = derivative(psi, a);
    for (std::size_t n = 0; n < psi.size(); ++n)
      j[n][a] = psi[n].dot(d[n]).imag();  // Eigen dot conjugates the left side
  }
  return j;
}

/// v = (hbar/2mi)(psi^dag grad psi - psi grad psi^dag)/rho - (e/mc) A.
/// `A` may be null for a vanishing vector potential.
inline MaskedVectorField bilinear_velocity(const SpinorField& psi,
                                           const VectorField* A,
                                           const PhysicalConstants& k) {
  if (A) require_same_grid(psi.grid, A->grid, "bilinear_velocity");
  const auto rho = density(psi);
  MaskedVectorField out{current(psi), density_mask(rho)};
  const double hm = PhysicalConstants::hbar / PhysicalConstants::mass;
  for (std::size_t n = 0; n < psi.size(); ++n) {
    if (!out.valid[n]) {
      out.field[n].setZero();
      continue;
    }
    out.field[n] *= hm / rho[n];
    if (A) out.field[n] -= k.gyro() * (*A)[n];
  }
  return out;
}

inline std::pair<VectorField, VectorField> bilinear_MN(const SpinorField& psi) {
  VectorField M(psi.grid), N(psi.grid);
  for (std::size_t n = 0; n < psi.size(); ++n)
    std::tie(M[n], N[n]) = pauli::conjugate_bilinears(psi[n]);
  return {M, N};
}

struct HydroFields {
  ScalarField rho;
  VectorField v, s, M, N;
  Mask valid;
};

inline HydroFields hydro_fields(const SpinorField& psi, const VectorField* A,
                                const PhysicalConstants& k) {
  auto ds = density_spin(psi);
  auto vel = bilinear_velocity(psi, A, k);
  auto [M, N] = bilinear_MN(psi);
  return {std::move(ds.rho), std::move(vel.field), std::move(ds.s),
          std::move(M), std::move(N), std::move(ds.valid)};
}

/// Unit spinor whose bilinear triad (M, N, 2s/hbar)/rho equals the given
/// right-handed orthonormal frame (columns e1, e2, e3), times `amplitude`.
/// The result is fixed up to the spinor double-cover sign.
inline Spinor spinor_from_frame(const Mat3& frame, double amplitude = 1.0) {
  using namespace std::complex_literals;
  const Eigen::Quaterniond q(frame);
  // U = w - i (x sx + y sy + z sz) rotates (1, 0) onto the frame.
  const Spinor col(cplx(q.w(), -q.z()), cplx(q.y(), -q.x()));
  return amplitude * col;
}

}  // namespace spingeo
