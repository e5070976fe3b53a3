#pragma once

// Terms of the hydrodynamic momentum and spin-transport equations, and
// their residuals along an evolution run.

#include "spingeo/pauli/evolve.hpp"
#include "spingeo/spinor/observables.hpp"

namespace spingeo {

/// Residuals are evaluated where rho exceeds this fraction of max(rho).
inline constexpr double kResidualMaskRatio = 1e-6;

/// (hbar^2/4m) grad(lap rho / rho - |grad rho|^2 / 2 rho^2)
inline MaskedVectorField madelung_force(const ScalarField& rho) {
  const auto mask = density_mask(rho);
  const auto lap = laplacian(rho);
  const auto gr = gradient(rho);
  ScalarField q(rho.grid);
  for (std::size_t n = 0; n < rho.size(); ++n)
    if (mask[n]) q[n] = lap[n] / rho[n] - gr[n].squaredNorm() / (2.0 * rho[n] * rho[n]);
  const double c = PhysicalConstants::hbar * PhysicalConstants::hbar / (4.0 * PhysicalConstants::mass);
  MaskedVectorField out{gradient(q), erode(rho.grid, mask, 2)};
  for (std::size_t n = 0; n < rho.size(); ++n) out.field[n] = out.valid[n] ? Vec3(c * out.field[n]) : Vec3::Zero();
  return out;
}

/// grad((hbar^2/2m) lap sqrt(rho) / sqrt(rho)): the same force through the
/// amplitude, for the self-consistency diagnostic.
inline MaskedVectorField madelung_force_sqrt(const ScalarField& rho) {
  const auto mask = density_mask(rho);
  ScalarField R(rho.grid);
  for (std::size_t n = 0; n < rho.size(); ++n) R[n] = std::sqrt(std::max(rho[n], 0.0));
  const auto lap = laplacian(R);
  ScalarField q(rho.grid);
  for (std::size_t n = 0; n < rho.size(); ++n) if (mask[n]) q[n] = lap[n] / R[n];
  const double c = PhysicalConstants::hbar * PhysicalConstants::hbar / (2.0 * PhysicalConstants::mass);
  MaskedVectorField out{gradient(q), erode(rho.grid, mask, 2)};
  for (std::size_t n = 0; n < rho.size(); ++n) out.field[n] = out.valid[n] ? Vec3(c * out.field[n]) : Vec3::Zero();
  return out;
}

/// (F)_i = -(1/m rho) d_k(rho d_i s_j d_k s_j)
inline MaskedVectorField spin_stress_force(const ScalarField& rho, const VectorField& s) {
  require_same_grid(rho.grid, s.grid, "spin_stress_force");
  const GridSpec& g = rho.grid;
  const auto mask = density_mask(rho);
  const auto ds = jacobian(s);  // ds[a][n] = d_a s
  // W[k] holds, per node, the vector over i of rho d_i s . d_k s.
  std::array<VectorField, 3> W{VectorField(g), VectorField(g), VectorField(g)};
  for (std::size_t n = 0; n < g.size(); ++n)
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i) W[k][n][i] = rho[n] * ds[i][n].dot(ds[k][n]);
  MaskedVectorField out{VectorField(g), erode(g, mask, 2)};
  for (int k = 0; k < g.dims(); ++k) {
    const auto d = derivative(W[k], k);
    for (std::size_t n = 0; n < g.size(); ++n) out.field[n] -= d[n];
  }
  for (std::size_t n = 0; n < g.size(); ++n)
    out.field[n] = out.valid[n] ? Vec3(out.field[n] / (PhysicalConstants::mass * rho[n])) : Vec3::Zero();
  return out;
}

struct MagneticTerms {
  VectorField lorentz;        ///< (e/c) v x B
  VectorField spin_gradient;  ///< (e/mc) s_k grad B^k
  VectorField precession;     ///< (e/mc) s x B
};

/// With E = 0 the Lorentz force is (e/c) v x B. B may be null (no field).
inline MagneticTerms magnetic_terms(const VectorField& s, const VectorField* B, const VectorField& v,
                                    const PhysicalConstants& k) {
  const GridSpec& g = s.grid;
  MagneticTerms t{VectorField(g), VectorField(g), VectorField(g)};
  if (!B || k.charge == 0.0) return t;
  require_same_grid(g, B->grid, "magnetic_terms");
  const auto dB = jacobian(*B);
  const double gy = k.gyro();
  for (std::size_t n = 0; n < g.size(); ++n) {
    t.lorentz[n] = (k.charge / k.light_speed) * v[n].cross((*B)[n]);
    for (int i = 0; i < 3; ++i) t.spin_gradient[n][i] = gy * s[n].dot(dB[i][n]);
    t.precession[n] = gy * s[n].cross((*B)[n]);
  }
  return t;
}

/// (1/m rho) s x d_k(rho d_k s)
inline VectorField spin_torque(const ScalarField& rho, const VectorField& s, const Mask& valid) {
  const GridSpec& g = rho.grid;
  VectorField acc(g);
  for (int k = 0; k < g.dims(); ++k) {
    VectorField flux = derivative(s, k);
    for (std::size_t n = 0; n < g.size(); ++n) flux[n] *= rho[n];
    const auto d = derivative(flux, k);
    for (std::size_t n = 0; n < g.size(); ++n) acc[n] += d[n];
  }
  VectorField out(g);
  for (std::size_t n = 0; n < g.size(); ++n)
    if (valid[n]) out[n] = s[n].cross(acc[n]) / (PhysicalConstants::mass * rho[n]);
  return out;
}

struct HydroForceBreakdown {
  VectorField lorentz, spin_gradient, madelung, spin_stress, material_accel;
  Mask valid;
};

struct SpinTorqueBreakdown {
  VectorField precession, spin_torque, material_spin_rate;
  Mask valid;
};

struct HydroResiduals {
  ResidualHistory momentum, spin;
  /// max |s . rhs| / max(|s| |rhs|) of the spin equation, per snapshot
  std::vector<double> spin_orthogonality;
  /// L2 norm of the two discrete Madelung forms' difference, per snapshot
  std::vector<double> madelung_mismatch;
};

namespace detail {

struct SnapshotObs {
  ScalarField rho;
  VectorField v, s;
  Mask valid;
};

inline SnapshotObs observe(const SpinorField& psi, const ExternalFields& ext,
                           const PhysicalConstants& k) {
  auto h = hydro_fields(psi, ext.A_ptr(), k);
  return {std::move(h.rho), std::move(h.v), std::move(h.s), std::move(h.valid)};
}

}  // namespace detail

/// Breakdown of both equations at interior snapshot i, with time
/// derivatives from the neighbouring snapshots.
inline std::pair<HydroForceBreakdown, SpinTorqueBreakdown> hydro_breakdown(
    const EvolutionRun& run, std::size_t i, const ExternalFields& ext,
    const PhysicalConstants& k, double mask_ratio = kResidualMaskRatio) {
  if (run.snapshots.size() < 3) throw InvalidArgument("hydro residuals: need at least 3 snapshots");
  if (i == 0 || i + 1 >= run.snapshots.size())
    throw InvalidArgument("hydro residuals: snapshot is not interior");
  const double dts = run.snapshot_interval();
  const auto prev = detail::observe(run.snapshots[i - 1], ext, k);
  const auto cur = detail::observe(run.snapshots[i], ext, k);
  const auto next = detail::observe(run.snapshots[i + 1], ext, k);
  const GridSpec& g = cur.rho.grid;

  Mask valid = density_mask(cur.rho, mask_ratio);
  valid = erode(g, valid, 2);

  HydroForceBreakdown F;
  const auto mag = magnetic_terms(cur.s, ext.B_ptr(), cur.v, k);
  F.lorentz = mag.lorentz;
  F.spin_gradient = mag.spin_gradient;
  F.madelung = madelung_force(cur.rho).field;
  F.spin_stress = spin_stress_force(cur.rho, cur.s).field;
  F.material_accel = VectorField(g);
  const auto dv = jacobian(cur.v);
  const auto vdv = directional(dv, cur.v);
  for (std::size_t n = 0; n < g.size(); ++n)
    F.material_accel[n] =
        PhysicalConstants::mass * ((next.v[n] - prev.v[n]) / (2.0 * dts) + vdv[n]);
  F.valid = valid;

  SpinTorqueBreakdown S;
  S.precession = mag.precession;
  S.spin_torque = spin_torque(cur.rho, cur.s, valid);
  S.material_spin_rate = VectorField(g);
  const auto vds = directional(jacobian(cur.s), cur.v);
  for (std::size_t n = 0; n < g.size(); ++n)
    S.material_spin_rate[n] = (next.s[n] - prev.s[n]) / (2.0 * dts) + vds[n];
  S.valid = valid;
  return {std::move(F), std::move(S)};
}

/// L2 norms of m Dv/Dt - (F_L + spin gradient + Madelung + spin stress) and
/// Ds/Dt - (precession + torque) at every interior snapshot.
inline HydroResiduals hydro_residuals(const EvolutionRun& run, const ExternalFields& ext,
                                      const PhysicalConstants& k,
                                      double mask_ratio = kResidualMaskRatio) {
  if (run.snapshots.size() < 3) throw InvalidArgument("hydro residuals: need at least 3 snapshots");
  HydroResiduals out;
  for (std::size_t i = 1; i + 1 < run.snapshots.size(); ++i) {
    const auto [F, S] = hydro_breakdown(run, i, ext, k, mask_ratio);
    const GridSpec& g = F.material_accel.grid;
    const auto ds = density_spin(run.snapshots[i]);
    const auto alt = madelung_force_sqrt(ds.rho);
    VectorField rm(g), rs(g), dm(g);
    ScalarField rm_abs(g), rs_abs(g);
    double orth = 0.0, scale = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) {
      if (!F.valid[n]) continue;
      rm[n] = F.material_accel[n] -
              (F.lorentz[n] + F.spin_gradient[n] + F.madelung[n] + F.spin_stress[n]);
      const Vec3 rhs = S.precession[n] + S.spin_torque[n];
      rs[n] = S.material_spin_rate[n] - rhs;
      rm_abs[n] = rm[n].norm();
      rs_abs[n] = rs[n].norm();
      scale = std::max(scale, rhs.norm() * ds.s[n].norm());
      orth = std::max(orth, std::abs(ds.s[n].dot(rhs)));
      dm[n] = F.madelung[n] - alt.field[n];
    }
    out.momentum.times.push_back(run.times[i]);
    out.momentum.norms.push_back(l2_norm(rm, F.valid));
    out.momentum.last = std::move(rm_abs);
    out.spin.times.push_back(run.times[i]);
    out.spin.norms.push_back(l2_norm(rs, F.valid));
    out.spin.last = std::move(rs_abs);
    out.spin_orthogonality.push_back(scale > 0 ? orth / scale : 0.0);
    out.madelung_mismatch.push_back(l2_norm(dm, F.valid));
  }
  return out;
}

}  // namespace spingeo
