#include <gtest/gtest.h>

#include "spingeo/core/convergence.hpp"
#include "spingeo/pauli/evolve.hpp"
#include "spingeo/scenarios/states.hpp"

using namespace spingeo;
using namespace std::complex_literals;
using std::numbers::pi;

namespace {

ExternalFields uniform_B(const GridSpec& g, double B0) {
  ExternalFields ext;
  ext.B = VectorField(g, Vec3(0, 0, B0));
  return ext;
}

}  // namespace

TEST(Hamiltonian, PlaneWaveEigenvalueOfStencil) {
  const auto g = GridSpec::cube(1, 2 * pi, 64);
  const double k = 2.0, h = g.spacing(0);
  const auto psi = states::plane_wave(g, k);
  const auto Hpsi = apply_hamiltonian(psi, {}, {});
  const double want = (1.0 - std::cos(k * h)) / (h * h);
  for (std::size_t n = 0; n < g.size(); ++n) {
    EXPECT_NEAR(std::abs(Hpsi[n][0] - want * psi[n][0]), 0.0, 1e-12);
    EXPECT_EQ(Hpsi[n][1], 0.0);
  }
  EXPECT_NEAR(want, 0.5 * k * k, 0.5 * k * k * 1e-2);
}

TEST(Hamiltonian, ZeemanShiftOfSpinUp) {
  const auto g = GridSpec::cube(2, 1.0, 8);
  const PhysicalConstants k(1.0, 1.0);
  const double B0 = 0.7;
  const SpinorField psi(g, Spinor(1, 0));
  const auto Hpsi = apply_hamiltonian(psi, uniform_B(g, B0), k);
  for (std::size_t n = 0; n < g.size(); ++n)
    EXPECT_NEAR(std::abs(Hpsi[n][0] + k.bohr_magneton() * B0), 0.0, 1e-14);
}

TEST(Hamiltonian, FreeEqualsHalfLaplacian) {
  const auto g = GridSpec::cube(2, 16.0, 32);
  const auto psi = states::gaussian_texture(g, 1.0);
  const auto Hpsi = apply_hamiltonian(psi, {}, {});
  const auto lap = laplacian(psi);
  for (std::size_t n = 0; n < g.size(); ++n) EXPECT_LT((Hpsi[n] + 0.5 * lap[n]).norm(), 1e-13);
}

TEST(Hamiltonian, ChargeFreeFieldsIgnored) {
  const auto g = GridSpec::cube(1, 4.0, 32);
  const auto psi = states::gaussian(g, 0.5);
  const auto a = apply_hamiltonian(psi, uniform_B(g, 3.0), {});
  const auto b = apply_hamiltonian(psi, {}, {});
  for (std::size_t n = 0; n < g.size(); ++n) EXPECT_EQ(a[n], b[n]);
}

TEST(Evolve, UniformStateUnchanged) {
  const auto g = GridSpec::cube(2, 2.0, 16);
  const SpinorField psi(g, Spinor(0.6, 0.8i));
  const auto run = evolve(psi, {}, {}, {0.01, 50, 10});
  ASSERT_EQ(run.snapshots.size(), 6u);
  for (const auto& s : run.snapshots)
    for (std::size_t n = 0; n < g.size(); ++n) EXPECT_LT((s[n] - psi[n]).norm(), 1e-13);
}

TEST(Evolve, LarmorPrecession) {
  const auto g = GridSpec::cube(1, 1.0, 8);
  const PhysicalConstants k(1.0, 1.0);
  const double B0 = 1.0, omega = k.charge * B0 / (PhysicalConstants::mass * k.light_speed);
  const SpinorField psi(g, Spinor(1, 1) / std::sqrt(2.0));
  const auto run = evolve(psi, uniform_B(g, B0), k, {0.01, 400, 20});
  for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
    const auto s = density_spin(run.snapshots[i]).s[0];
    EXPECT_NEAR(s[0], 0.5 * std::cos(omega * run.times[i]), 1e-12);
    EXPECT_NEAR(std::abs(s[1]), 0.5 * std::abs(std::sin(omega * run.times[i])), 1e-12);
    EXPECT_NEAR(s[2], 0.0, 1e-14);
  }
}

TEST(Evolve, GaussianDispersionLaw) {
  const double L = 32.0, s0 = 1.0;
  const auto g = GridSpec::cube(1, L, 512);
  const double T = 2 * s0 * s0, dt = T / 400;
  const auto run = evolve(states::gaussian(g, s0), {}, {}, {dt, 400, 40});
  for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
    const double t = run.times[i];
    const double want = s0 * s0 * (1 + std::pow(t / (2 * s0 * s0), 2));
    EXPECT_NEAR(position_variance(run.snapshots[i]), want, 0.01 * want) << "t=" << t;
  }
}

TEST(Evolve, NormAndEnergyDrift) {
  const auto g = GridSpec::cube(2, 16.0, 32);
  const PhysicalConstants k(1.0, 1.0);
  const auto run = evolve(states::gaussian_texture(g, 1.0), uniform_B(g, 0.5), k, {0.05, 1000, 100});
  for (std::size_t i = 0; i < run.norms.size(); ++i) {
    EXPECT_NEAR(run.norms[i], run.norms[0], 1e-8);
    EXPECT_NEAR(run.energies[i], run.energies[0], 1e-6 * std::abs(run.energies[0]));
  }
}

TEST(Evolve, UniformZeemanLeavesDensityAlone) {
  const auto g = GridSpec::cube(1, 16.0, 128);
  const PhysicalConstants k(1.0, 1.0);
  const auto psi = states::gaussian(g, 1.0, Spinor(1, 1i));
  const auto a = evolve(psi, uniform_B(g, 2.0), k, {0.02, 100, 100});
  const auto b = evolve(psi, {}, k, {0.02, 100, 100});
  const auto ra = density(a.snapshots.back()), rb = density(b.snapshots.back());
  for (std::size_t n = 0; n < g.size(); ++n) EXPECT_NEAR(ra[n], rb[n], 1e-12);
}

TEST(Evolve, GuardRejectsLargeStep) {
  const auto g = GridSpec::cube(1, 1.0, 64);
  const double h = g.spacing(0);
  EXPECT_THROW(evolve(SpinorField(g, Spinor(1, 0)), {}, {}, {3 * h * h, 1}), InvalidArgument);
  EXPECT_NO_THROW(evolve(SpinorField(g, Spinor(1, 0)), {}, {}, {2 * h * h, 1}));
}

TEST(Evolve, NonUniformPotentialRejected) {
  const auto g = GridSpec::cube(1, 2 * pi, 16);
  ExternalFields ext;
  ext.A = VectorField::sample(g, [](const Vec3& x) -> Vec3 { return {0, std::sin(x[0]), 0}; });
  EXPECT_THROW(evolve(SpinorField(g, Spinor(1, 0)), ext, PhysicalConstants(1, 1), {1e-3, 1}),
               InvalidArgument);
}

TEST(Evolve, UniformPotentialShiftsVelocity) {
  const auto g = GridSpec::cube(1, 2 * pi, 32);
  const PhysicalConstants k(1.0, 1.0);
  ExternalFields ext;
  ext.A = VectorField(g, Vec3(0.5, 0, 0));
  const auto psi = states::plane_wave(g, 2.0);
  const auto run = evolve(psi, ext, k, {1e-3, 10, 10});
  // a plane wave stays an eigenstate; only its phase advances
  const auto& out = run.snapshots.back();
  const double E = 0.5 * std::pow(2.0 - 0.5, 2);
  for (std::size_t n = 0; n < g.size(); ++n)
    EXPECT_LT(std::abs(out[n][0] - std::exp(-1i * E * run.times.back()) * psi[n][0]), 1e-12);
}

TEST(Continuity, UniformStateIsExact) {
  const auto g = GridSpec::cube(2, 2.0, 16);
  const auto run = evolve(SpinorField(g, Spinor(1, 0)), {}, {}, {0.01, 4});
  EXPECT_LT(continuity_residual(run, {}, {}).max(), 1e-14);
}

TEST(Continuity, TooFewSnapshots) {
  const auto g = GridSpec::cube(1, 2.0, 16);
  const auto run = evolve(SpinorField(g, Spinor(1, 0)), {}, {}, {0.01, 1});
  EXPECT_THROW(continuity_residual(run, {}, {}), InvalidArgument);
}

TEST(Continuity, PlaneWaveVanishes) {
  const auto g = GridSpec::cube(1, 2 * pi, 64);
  const auto run = evolve(states::plane_wave(g, 2.0), {}, {}, {1e-3, 4});
  EXPECT_LT(continuity_residual(run, {}, {}).max(), 1e-12);
}

TEST(Continuity, GaussianSecondOrder) {
  const double L = 16.0, T = 0.2;
  std::vector<ResolutionSample> samples;
  for (int n : {64, 128, 256}) {
    const auto g = GridSpec::cube(1, L, n);
    const double h = g.spacing(0);
    int steps = 8;
    while (T / steps > 0.5 * h * h) steps *= 2;
    const auto run = evolve(states::gaussian(g, 1.0), {}, {}, {T / steps, steps, steps / 4});
    samples.push_back({h, continuity_residual(run, {}, {}).max()});
  }
  const auto c = convergence_order(samples);
  EXPECT_TRUE(c.within(1.8, 2.4)) << c.order;
}
