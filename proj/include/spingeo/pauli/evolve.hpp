#pragma once

// Strang split-step evolution: spectral kinetic half steps around an exact
// SU(2) Zeeman rotation.

#include <cmath>
#include <memory>
#include <numbers>

#include <fftw3.h>

#include "spingeo/pauli/hamiltonian.hpp"

namespace spingeo {

struct EvolveOptions {
  double dt = 0.0;
  int steps = 0;
  int stride = 1;              ///< keep every stride-th state (plus the first)
  double safety = 2.0;         ///< guard dt <= safety * m dx^2 / hbar
  bool track_energy = true;
};

struct EvolutionRun {
  double dt = 0.0;
  int steps = 0;
  int stride = 1;
  std::vector<SpinorField> snapshots;
  std::vector<double> times, norms, energies;

  double snapshot_interval() const { return dt * stride; }
};

namespace detail {

/// In-place forward/backward FFT of one scalar component on the grid.
class FftPlan {
 public:
  explicit FftPlan(const GridSpec& g) : size_(g.size()) {
    buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * size_));
    if (!buf_) throw Error("fftw_malloc failed");
    // FFTW wants the slowest axis first; x is fastest in GridSpec.
    int n[3];
    const int d = g.dims();
    for (int a = 0; a < d; ++a) n[a] = g.points(d - 1 - a);
    fwd_ = fftw_plan_dft(d, n, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft(d, n, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!fwd_ || !bwd_) throw Error("fftw plan creation failed");
  }
  ~FftPlan() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(buf_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  cplx* data() { return reinterpret_cast<cplx*>(buf_); }
  void forward() { fftw_execute(fwd_); }
  void backward() { fftw_execute(bwd_); }
  std::size_t size() const { return size_; }

 private:
  std::size_t size_;
  fftw_complex* buf_ = nullptr;
  fftw_plan fwd_ = nullptr, bwd_ = nullptr;
};

inline double wavenumber(const GridSpec& g, int axis, int i) {
  const int n = g.points(axis);
  const int j = i <= n / 2 ? i : i - n;
  return 2.0 * std::numbers::pi * j / g.extent(axis);
}

/// (e/c) A for a uniform A, zero when absent; throws for a non-uniform A,
/// which the spectral kinetic step cannot represent.
inline Vec3 uniform_potential(const ExternalFields& ext, const PhysicalConstants& k) {
  if (!ext.A || k.charge == 0.0) return Vec3::Zero();
  const Vec3 a0 = (*ext.A)[0];
  for (const auto& a : ext.A->values)
    if ((a - a0).norm() > 1e-14 * (1.0 + a0.norm()))
      throw InvalidArgument("evolve: only a uniform vector potential is supported");
  return (k.charge / k.light_speed) * a0;
}

}  // namespace detail

/// Evolves `initial` under the Pauli Hamiltonian. Throws InvalidArgument on a
/// guard violation and InstabilityError when non-finite values appear.
inline EvolutionRun evolve(const SpinorField& initial, const ExternalFields& ext,
                           const PhysicalConstants& k, const EvolveOptions& opt) {
  using namespace std::complex_literals;
  const GridSpec& g = initial.grid;
  ext.check_grid(g);
  if (!(opt.dt > 0.0)) throw InvalidArgument("evolve: dt must be positive");
  if (opt.steps < 0 || opt.stride < 1) throw InvalidArgument("evolve: bad steps/stride");
  const double h = g.min_spacing();
  const double limit = opt.safety * PhysicalConstants::mass * h * h / PhysicalConstants::hbar;
  if (opt.dt > limit)
    throw InvalidArgument("evolve: dt " + std::to_string(opt.dt) + " exceeds guard " +
                          std::to_string(limit));
  if (!all_finite(initial)) throw InvalidArgument("evolve: non-finite initial state");

  const Vec3 a = detail::uniform_potential(ext, k);
  const std::size_t N = g.size();

  // Half-step kinetic phases exp(-i (hbar k - a)^2 dt / 4m hbar).
  std::vector<cplx> half(N);
  for (std::size_t n = 0; n < N; ++n) {
    const auto c = g.unravel(n);
    Vec3 p = Vec3::Zero();
    for (int ax = 0; ax < g.dims(); ++ax)
      p[ax] = PhysicalConstants::hbar * detail::wavenumber(g, ax, c[ax]);
    p -= a;
    const double e = p.squaredNorm() / (2.0 * PhysicalConstants::mass);
    half[n] = std::exp(-1.0i * e * (0.5 * opt.dt) / PhysicalConstants::hbar);
  }

  // Zeeman propagator exp(i mu_B sigma.B dt / hbar) per node.
  std::vector<Eigen::Matrix2cd> zee;
  if (ext.B && k.charge != 0.0) {
    zee.resize(N);
    const double mu = k.bohr_magneton();
    for (std::size_t n = 0; n < N; ++n) {
      const Vec3& b = (*ext.B)[n];
      const double bn = b.norm();
      const double ang = mu * bn * opt.dt / PhysicalConstants::hbar;
      Eigen::Matrix2cd u = std::cos(ang) * Eigen::Matrix2cd::Identity();
      if (bn > 0) {
        const Vec3 u_ = b / bn;
        u += 1.0i * std::sin(ang) *
             (u_[0] * pauli::sigma(0) + u_[1] * pauli::sigma(1) + u_[2] * pauli::sigma(2));
      }
      zee[n] = u;
    }
  }

  detail::FftPlan plan(g);
  const double inv = 1.0 / static_cast<double>(N);
  auto kinetic = [&](SpinorField& psi) {
    for (int comp = 0; comp < 2; ++comp) {
      cplx* d = plan.data();
      for (std::size_t n = 0; n < N; ++n) d[n] = psi[n][comp];
      plan.forward();
      for (std::size_t n = 0; n < N; ++n) d[n] *= half[n] * inv;
      plan.backward();
      for (std::size_t n = 0; n < N; ++n) psi[n][comp] = d[n];
    }
  };

  EvolutionRun run;
  run.dt = opt.dt;
  run.steps = opt.steps;
  run.stride = opt.stride;
  SpinorField psi = initial;
  auto record = [&](int step) {
    run.snapshots.push_back(psi);
    run.times.push_back(step * opt.dt);
    run.norms.push_back(norm(psi));
    if (opt.track_energy) run.energies.push_back(energy(psi, ext, k));
  };
  record(0);
  for (int s = 1; s <= opt.steps; ++s) {
    kinetic(psi);
    if (!zee.empty())
      for (std::size_t n = 0; n < N; ++n) psi[n] = zee[n] * psi[n];
    kinetic(psi);
    if (s % opt.stride == 0) {
      if (!all_finite(psi))
        throw InstabilityError("evolve: non-finite state at step " + std::to_string(s));
      record(s);
    }
  }
  if (!all_finite(psi)) throw InstabilityError("evolve: non-finite final state");
  return run;
}

struct ResidualHistory {
  std::vector<double> times, norms;
  ScalarField last;  ///< residual field at the last interior snapshot

  double max() const {
    double m = 0.0;
    for (double v : norms) m = std::max(m, v);
    return m;
  }
};

/// d_t rho + div(rho v) at every interior snapshot, with centred differences
/// in time (snapshot interval) and space.
inline ResidualHistory continuity_residual(const EvolutionRun& run, const ExternalFields& ext,
                                           const PhysicalConstants& k) {
  if (run.snapshots.size() < 3)
    throw InvalidArgument("continuity_residual: need at least 3 snapshots");
  const double dts = run.snapshot_interval();
  ResidualHistory out;
  for (std::size_t i = 1; i + 1 < run.snapshots.size(); ++i) {
    const auto& psi = run.snapshots[i];
    const auto rp = density(run.snapshots[i + 1]), rm = density(run.snapshots[i - 1]);
    // rho v = (hbar/m) Im(psi^dag grad psi) - (e/mc) A rho
    VectorField flux = current(psi);
    const auto rho = density(psi);
    for (std::size_t n = 0; n < psi.size(); ++n) {
      flux[n] *= PhysicalConstants::hbar / PhysicalConstants::mass;
      if (ext.A) flux[n] -= k.gyro() * rho[n] * (*ext.A)[n];
    }
    const auto div = divergence(flux);
    ScalarField r(psi.grid);
    for (std::size_t n = 0; n < psi.size(); ++n) r[n] = (rp[n] - rm[n]) / (2.0 * dts) + div[n];
    out.times.push_back(run.times[i]);
    out.norms.push_back(l2_norm(r));
    out.last = std::move(r);
  }
  return out;
}

/// Snapshots at `intervals` + 1 fixed times over [0, T], with the step count
/// doubled until dt <= m dx^2 / 2 hbar. Refining the grid then refines dt
/// with it, as dt ~ dx^2.
inline EvolutionRun evolve_window(const SpinorField& psi, const ExternalFields& ext,
                                  const PhysicalConstants& k, double T, int intervals = 4) {
  require(T > 0 && intervals >= 1, "evolve_window: T and intervals must be positive");
  const double h = psi.grid.min_spacing();
  int steps = intervals;
  while (T / steps > 0.5 * PhysicalConstants::mass * h * h / PhysicalConstants::hbar) steps *= 2;
  return evolve(psi, ext, k, {T / steps, steps, steps / intervals});
}

/// Variance of the density along `axis`.
inline double position_variance(const SpinorField& psi, int axis = 0) {
  const auto rho = density(psi);
  double m0 = 0, m1 = 0, m2 = 0;
  for (std::size_t n = 0; n < psi.size(); ++n) {
    const double x = psi.grid.position(n)[axis];
    m0 += rho[n];
    m1 += rho[n] * x;
    m2 += rho[n] * x * x;
  }
  m1 /= m0;
  return m2 / m0 - m1 * m1;
}

}  // namespace spingeo
