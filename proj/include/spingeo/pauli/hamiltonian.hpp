#pragma once

// Pauli Hamiltonian (-i hbar grad - (e/c) A)^2 / 2m - mu_B sigma.B on the
// shared stencils, plus norm and energy.

#include <optional>

#include "spingeo/core/calculus.hpp"
#include "spingeo/spinor/observables.hpp"

namespace spingeo {

/// Vector potential and magnetic field. B is independent of A unless
/// `linked` is set, in which case curl A = B is expected.
struct ExternalFields {
  std::optional<VectorField> A, B;
  bool linked = false;

  const VectorField* A_ptr() const { return A ? &*A : nullptr; }
  const VectorField* B_ptr() const { return B ? &*B : nullptr; }

  void check_grid(const GridSpec& g) const {
    if (A) require_same_grid(g, A->grid, "external A");
    if (B) require_same_grid(g, B->grid, "external B");
  }
};

/// max |curl A - B|; zero when either field is absent and the other vanishes.
inline double linked_discrepancy(const ExternalFields& ext, const GridSpec& g) {
  const VectorField A = ext.A ? *ext.A : VectorField(g);
  const VectorField B = ext.B ? *ext.B : VectorField(g);
  const auto c = curl(A);
  double worst = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) worst = std::max(worst, (c[n] - B[n]).norm());
  return worst;
}

inline SpinorField apply_hamiltonian(const SpinorField& psi, const ExternalFields& ext,
                                     const PhysicalConstants& k) {
  using namespace std::complex_literals;
  ext.check_grid(psi.grid);
  const double hbar = PhysicalConstants::hbar, m = PhysicalConstants::mass;
  SpinorField out = laplacian(psi);
  for (auto& v : out.values) v *= -hbar * hbar / (2.0 * m);

  if (ext.A && k.charge != 0.0) {
    // (p - a)^2 = p^2 + 2i hbar a.grad + i hbar (div a) + a^2, a = (e/c) A
    const double q = k.charge / k.light_speed;
    const auto div_a = divergence(*ext.A);
    const auto d = jacobian(psi);
    for (std::size_t n = 0; n < psi.size(); ++n) {
      const Vec3 a = q * (*ext.A)[n];
      const Spinor adot = a[0] * d[0][n] + a[1] * d[1][n] + a[2] * d[2][n];
      out[n] += (2.0i * hbar * adot + 1.0i * hbar * q * div_a[n] * psi[n] +
                 a.squaredNorm() * psi[n]) /
                (2.0 * m);
    }
  }
  if (ext.B) {
    const double mu = k.bohr_magneton();
    for (std::size_t n = 0; n < psi.size(); ++n) {
      const Vec3& b = (*ext.B)[n];
      const Eigen::Matrix2cd sb =
          b[0] * pauli::sigma(0) + b[1] * pauli::sigma(1) + b[2] * pauli::sigma(2);
      out[n] -= mu * (sb * psi[n]);
    }
  }
  return out;
}

/// sum psi^dag psi dV
inline double norm(const SpinorField& psi) {
  double s = 0.0;
  for (const auto& v : psi.values) s += v.squaredNorm();
  return s * psi.grid.cell_volume();
}

/// <psi|H|psi> dV
inline double energy(const SpinorField& psi, const ExternalFields& ext,
                     const PhysicalConstants& k) {
  const auto h = apply_hamiltonian(psi, ext, k);
  double s = 0.0;
  for (std::size_t n = 0; n < psi.size(); ++n) s += psi[n].dot(h[n]).real();
  return s * psi.grid.cell_volume();
}

}  // namespace spingeo
