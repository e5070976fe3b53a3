#pragma once

// Spatial triad built from spinor bilinears, its anholonomity and torsion,
// the geodesic transport residual, and the geometric guidance velocity.

#include "spingeo/core/calculus.hpp"
#include "spingeo/spinor/observables.hpp"

namespace spingeo {

/// Rank-3 coefficients per node, flattened as [i*9 + j*3 + k].
using Tensor3 = Eigen::Matrix<double, 27, 1>;
using Tensor3Field = Field<Tensor3>;

inline constexpr int t3(int i, int j, int k) { return i * 9 + j * 3 + k; }

struct TriadField {
  std::array<VectorField, 3> e;  ///< e[0] = M/rho, e[1] = N/rho, e[2] = 2s/hbar
  Mask valid;

  const GridSpec& grid() const { return e[0].grid; }
};

/// e1 = M/rho, e2 = N/rho, e3 = 2s/hbar. No re-orthogonalisation, so any
/// defect in the bilinears stays measurable.
inline TriadField triad_from_spinor(const SpinorField& psi) {
  const auto rho = density(psi);
  TriadField t{{VectorField(psi.grid), VectorField(psi.grid), VectorField(psi.grid)},
               density_mask(rho)};
  for (std::size_t n = 0; n < psi.size(); ++n) {
    if (!t.valid[n]) continue;
    const auto [M, N] = pauli::conjugate_bilinears(psi[n]);
    t.e[0][n] = M / rho[n];
    t.e[1][n] = N / rho[n];
    t.e[2][n] = pauli::spin_density(psi[n]) / rho[n];
  }
  return t;
}

struct OrthonormalityDefect {
  double max_dot = 0.0;    ///< max |e_a . e_b - delta_ab|
  double max_cross = 0.0;  ///< max |e1 x e2 - e3|
};

inline OrthonormalityDefect orthonormality_defect(const TriadField& t) {
  OrthonormalityDefect d;
  for (std::size_t n = 0; n < t.grid().size(); ++n) {
    if (!t.valid[n]) continue;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        d.max_dot = std::max(d.max_dot, std::abs(t.e[a][n].dot(t.e[b][n]) - (a == b)));
    d.max_cross = std::max(d.max_cross, (t.e[0][n].cross(t.e[1][n]) - t.e[2][n]).norm());
  }
  return d;
}

/// Jacobians of the three frame vectors: jac[a][i][n] = d_i e_a at node n.
inline std::array<std::array<VectorField, 3>, 3> triad_jacobians(const TriadField& t) {
  return {jacobian(t.e[0]), jacobian(t.e[1]), jacobian(t.e[2])};
}

/// Nodes whose derivative stencil stays inside the valid region.
inline Mask stencil_mask(const TriadField& t) { return erode(t.grid(), t.valid, 1); }

/// Omega^a_{bc} = (d_i e^a_k - d_k e^a_i) e^k_b e^i_c, stored as [a*9+b*3+c].
inline Tensor3Field spin_space_anholonomity(const TriadField& t) {
  const auto jac = triad_jacobians(t);
  const auto ok = stencil_mask(t);
  Tensor3Field out(t.grid());
  for (std::size_t n = 0; n < t.grid().size(); ++n) {
    if (!ok[n]) continue;
    for (int a = 0; a < 3; ++a) {
      // G(i, k) = d_i (e_a)_k
      Mat3 G;
      for (int i = 0; i < 3; ++i) G.row(i) = jac[a][i][n].transpose();
      const Mat3 curl = G - G.transpose();
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c)
          out[n][t3(a, b, c)] = t.e[c][n].dot(curl * t.e[b][n]);
    }
  }
  return out;
}

/// T^i_{jk} = -sum_b (d_k e_b)_i (e_b)_j: the derivative acts on the frame
/// vectors, so T^i_{jk} e^j_a = -d_k e^i_a holds to round-off for an
/// orthonormal triad.
inline Tensor3Field torsion3(const TriadField& t) {
  const auto jac = triad_jacobians(t);
  const auto ok = stencil_mask(t);
  Tensor3Field out(t.grid());
  for (std::size_t n = 0; n < t.grid().size(); ++n) {
    if (!ok[n]) continue;
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double s = 0.0;
          for (int b = 0; b < 3; ++b) s -= jac[b][k][n][i] * t.e[b][n][j];
          out[n][t3(i, j, k)] = s;
        }
  }
  return out;
}

/// Frame-index components T_{abk} := e_a . d_k e_b.
inline double torsion_frame_component(const TriadField& t,
                                      const std::array<std::array<VectorField, 3>, 3>& jac,
                                      std::size_t n, int a, int b, int k) {
  return t.e[a][n].dot(jac[b][k][n]);
}

/// max over stencil-valid nodes of |d_k e^i_a + T^i_{jk} e^j_a|.
inline double triad_geodesic_residual(const TriadField& t, const Tensor3Field& T) {
  require_same_grid(t.grid(), T.grid, "triad_geodesic_residual");
  const auto jac = triad_jacobians(t);
  const auto ok = stencil_mask(t);
  double worst = 0.0;
  for (std::size_t n = 0; n < t.grid().size(); ++n) {
    if (!ok[n]) continue;
    for (int a = 0; a < 3; ++a)
      for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i) {
          double r = jac[a][k][n][i];
          for (int j = 0; j < 3; ++j) r += T[n][t3(i, j, k)] * t.e[a][n][j];
          worst = std::max(worst, std::abs(r));
        }
  }
  return worst;
}

/// v_i = -(hbar/2m) e2^k d_i e1_k.
inline MaskedVectorField guidance_velocity_geometric(const TriadField& t) {
  const auto d1 = jacobian(t.e[0]);
  MaskedVectorField out{VectorField(t.grid()), stencil_mask(t)};
  const double pref = -0.5 * PhysicalConstants::hbar / PhysicalConstants::mass;
  for (std::size_t n = 0; n < t.grid().size(); ++n) {
    if (!out.valid[n]) continue;
    for (int i = 0; i < 3; ++i) out.field[n][i] = pref * t.e[1][n].dot(d1[i][n]);
  }
  return out;
}

}  // namespace spingeo
