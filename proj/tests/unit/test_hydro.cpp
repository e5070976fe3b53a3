#include <gtest/gtest.h>

#include "spingeo/core/convergence.hpp"
#include "spingeo/hydro/forces.hpp"
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

VectorField spin_field(const SpinorField& psi) { return density_spin(psi).s; }

}  // namespace

TEST(Madelung, UniformDensityHasNoForce) {
  const auto g = GridSpec::cube(2, 3.0, 16);
  const auto f = madelung_force(ScalarField(g, 0.4));
  EXPECT_EQ(max_norm(f.field), 0.0);
}

TEST(Madelung, GaussianClosedForm) {
  // rho ~ exp(-x^2 / 2 s^2)  =>  F = hbar^2 x / (4 m s^4)
  const double s = 1.0, L = 16.0;
  std::vector<ResolutionSample> samples;
  for (int n : {64, 128, 256}) {
    const auto g = GridSpec::cube(1, L, n);
    const auto rho = ScalarField::sample(g, [&](const Vec3& x) { return std::exp(-x[0] * x[0] / (2 * s * s)); });
    const auto f = madelung_force(rho);
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g.position(i)[0];
      if (std::abs(x) > 3 * s) continue;
      ASSERT_TRUE(f.valid[i]);
      err = std::max(err, std::abs(f.field[i][0] - x / (4 * std::pow(s, 4))));
    }
    samples.push_back({g.spacing(0), err});
  }
  EXPECT_LT(samples.back().norm, 2e-2);
  EXPECT_TRUE(convergence_order(samples).within(1.8, 2.2));
}

TEST(Madelung, TwoDiscreteFormsAgreeToSecondOrder) {
  std::vector<ResolutionSample> samples;
  for (int n : {32, 64, 128}) {
    const auto g = GridSpec::cube(1, 2 * pi, n);
    const auto rho = ScalarField::sample(g, [](const Vec3& x) { return 1.0 + 0.1 * std::sin(x[0]); });
    const auto a = madelung_force(rho), b = madelung_force_sqrt(rho);
    VectorField d(g);
    for (std::size_t i = 0; i < g.size(); ++i) d[i] = a.field[i] - b.field[i];
    samples.push_back({g.spacing(0), l2_norm(d)});
  }
  EXPECT_TRUE(convergence_order(samples).within(1.8, 2.2));
}

TEST(SpinStress, UniformSpinGivesZero) {
  const auto g = GridSpec::cube(2, 2.0, 12);
  const auto f = spin_stress_force(ScalarField(g, 1.0), VectorField(g, Vec3(0, 0.5, 0)));
  EXPECT_EQ(max_norm(f.field), 0.0);
}

TEST(SpinStress, HelixOnUniformDensityVanishes) {
  // d_x s . d_x s is constant along the helix, so its divergence is zero
  const auto g = GridSpec::cube(1, 2 * pi, 64);
  const auto s = spin_field(states::spin_helix(g, 4.0));
  EXPECT_LT(max_norm(spin_stress_force(ScalarField(g, 1.0), s).field), 1e-12);
}

TEST(SpinStress, HelixOnModulatedDensity) {
  // F_x = -(hbar^2 q^2 / 4m) rho' / rho
  const double q = 4.0;
  std::vector<ResolutionSample> samples;
  for (int n : {64, 128, 256}) {
    const auto g = GridSpec::cube(1, 2 * pi, n);
    const auto s = spin_field(states::spin_helix(g, q));
    const auto rho = ScalarField::sample(g, [](const Vec3& x) { return 1.0 + 0.3 * std::cos(x[0]); });
    const auto f = spin_stress_force(rho, s);
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g.position(i)[0];
      const double want = -0.25 * q * q * (-0.3 * std::sin(x)) / (1.0 + 0.3 * std::cos(x));
      err = std::max(err, std::abs(f.field[i][0] - want));
      EXPECT_LT(std::hypot(f.field[i][1], f.field[i][2]), 1e-12);
    }
    samples.push_back({g.spacing(0), err});
  }
  EXPECT_TRUE(convergence_order(samples).within(1.8, 2.2));
}

TEST(SpinStress, RandomTextureConvergesUnderRefinement) {
  std::vector<VectorField> F;
  for (int n : {32, 64, 128, 256}) {
    const auto g = GridSpec::cube(1, 2 * pi, n);
    const auto psi = states::random_texture(g, 11);
    F.push_back(spin_stress_force(density(psi), spin_field(psi)).field);
  }
  // differences of successive levels on the coarse nodes
  std::vector<ResolutionSample> samples;
  for (std::size_t l = 0; l + 1 < F.size(); ++l) {
    double m = 0.0;
    for (std::size_t i = 0; i < F[l].size(); ++i) m = std::max(m, (F[l][i] - F[l + 1][2 * i]).norm());
    samples.push_back({F[l].grid.spacing(0), m});
  }
  EXPECT_TRUE(convergence_order(samples).within(1.8, 2.2));
}

TEST(MagneticTerms, NoChargeNoForce) {
  const auto g = GridSpec::cube(1, 1.0, 8);
  const VectorField s(g, Vec3(0.5, 0, 0)), v(g, Vec3(1, 2, 3));
  const VectorField B(g, Vec3(0, 0, 1));
  const auto t = magnetic_terms(s, &B, v, {});
  EXPECT_EQ(max_norm(t.lorentz) + max_norm(t.spin_gradient) + max_norm(t.precession), 0.0);
}

TEST(MagneticTerms, PrecessionIsRightHanded) {
  const auto g = GridSpec::cube(1, 1.0, 8);
  const PhysicalConstants k(1.0, 1.0);
  const double B0 = 2.0;
  const VectorField s(g, Vec3(0.5, 0, 0)), v(g, Vec3(1, 0, 0)), B(g, Vec3(0, 0, B0));
  const auto t = magnetic_terms(s, &B, v, k);
  EXPECT_TRUE(t.precession[0].isApprox(Vec3(0, -0.5 * B0, 0)));
  EXPECT_TRUE(t.lorentz[0].isApprox(Vec3(0, -B0, 0)));
  EXPECT_EQ(t.spin_gradient[0].norm(), 0.0);
}

TEST(MagneticTerms, SpinGradientAlongFieldGradient) {
  const auto g = GridSpec::cube(3, 2.0, 8);
  const PhysicalConstants k(1.0, 1.0);
  const double beta = 0.3;
  const VectorField s(g, Vec3(0, 0, 0.5)), v(g);
  const auto B = VectorField::sample(g, [&](const Vec3& x) -> Vec3 { return {0, 0, beta * x[2]}; });
  const auto t = magnetic_terms(s, &B, v, k);
  for (std::size_t n = 0; n < g.size(); ++n) {
    const int kz = static_cast<int>(n / (8 * 8));
    if (kz == 0 || kz == 7) continue;  // periodic seam of the linear ramp
    EXPECT_TRUE(t.spin_gradient[n].isApprox(Vec3(0, 0, 0.5 * beta), 1e-12));
  }
}

TEST(HydroResiduals, UniformStationaryState) {
  const auto g = GridSpec::cube(2, 2.0, 12);
  const auto run = evolve(SpinorField(g, Spinor(0.6, 0.8i)), {}, {}, {0.01, 4});
  const auto r = hydro_residuals(run, {}, {});
  EXPECT_LT(r.momentum.max(), 1e-13);
  EXPECT_LT(r.spin.max(), 1e-13);
}

TEST(HydroResiduals, PlaneWaveTermsVanish) {
  const auto g = GridSpec::cube(1, 2 * pi, 64);
  const auto run = evolve(states::plane_wave(g, 2.0), {}, {}, {1e-3, 4});
  const auto r = hydro_residuals(run, {}, {});
  EXPECT_LT(r.momentum.max(), 1e-10);
  EXPECT_LT(r.spin.max(), 1e-10);
}

TEST(HydroResiduals, TooFewSnapshots) {
  const auto g = GridSpec::cube(1, 2.0, 16);
  const auto run = evolve(SpinorField(g, Spinor(1, 0)), {}, {}, {0.01, 1});
  EXPECT_THROW(hydro_residuals(run, {}, {}), InvalidArgument);
  EXPECT_THROW(hydro_breakdown(run, 0, {}, {}), InvalidArgument);
}

TEST(HydroResiduals, SpinEigenstateReducesToMadelung) {
  const auto g = GridSpec::cube(1, 16.0, 128);
  const auto run = evolve_window(states::gaussian(g, 1.0, Spinor(1, 1i)), {}, {}, 0.2);
  const auto [F, S] = hydro_breakdown(run, 2, {}, {});
  VectorField r(g);
  for (std::size_t n = 0; n < g.size(); ++n)
    if (F.valid[n]) r[n] = F.material_accel[n] - F.madelung[n];
  const double spinless = l2_norm(r, F.valid);
  EXPECT_LT(max_norm(F.spin_stress, F.valid), 1e-12 * max_norm(F.madelung, F.valid));
  EXPECT_NEAR(hydro_residuals(run, {}, {}).momentum.norms[1], spinless, 1e-12 * spinless);
}

TEST(HydroResiduals, LarmorSpinResidualIsTimeDifferencingError) {
  const auto g = GridSpec::cube(1, 4.0, 8);
  const PhysicalConstants k(1.0, 1.0);
  const double B0 = 1.0, dt = 0.05;
  const auto run = evolve(SpinorField(g, Spinor(1, 1) / std::sqrt(2.0)), uniform_B(g, B0), k,
                          {dt, 4});
  const auto r = hydro_residuals(run, uniform_B(g, B0), k);
  // centred difference of a rotation at rate w: |sin(w dt)/dt - w| |s|
  const double w = B0;
  const double want = 0.5 * std::abs(std::sin(w * dt) / dt - w) * l2_norm(ScalarField(g, 1.0));
  for (double n : r.spin.norms) EXPECT_NEAR(n, want, 1e-9);
  EXPECT_LT(r.momentum.max(), 1e-12);
}

TEST(HydroResiduals, SpinRightHandSideOrthogonalToSpin) {
  const auto g = GridSpec::cube(1, 16.0, 128);
  const PhysicalConstants k(1.0, 1.0);
  const auto run = evolve_window(states::gaussian_texture(g, 1.0), uniform_B(g, 0.5), k, 0.2);
  for (double o : hydro_residuals(run, uniform_B(g, 0.5), k).spin_orthogonality) EXPECT_LT(o, 1e-12);
}

TEST(HydroResiduals, GaussianSecondOrder) {
  std::vector<ResolutionSample> cont, mom;
  for (int n : {64, 128, 256}) {
    const auto g = GridSpec::cube(1, 16.0, n);
    const auto run = evolve_window(states::gaussian(g, 1.0), {}, {}, 0.2);
    const auto r = hydro_residuals(run, {}, {});
    cont.push_back({g.spacing(0), continuity_residual(run, {}, {}).max()});
    mom.push_back({g.spacing(0), r.momentum.max()});
  }
  EXPECT_TRUE(convergence_order(cont).at_least(1.8));
  EXPECT_TRUE(convergence_order(mom).at_least(1.8)) << convergence_order(mom).order;
}

TEST(HydroResiduals, HelixSecondOrder) {
  const double L = 16.0, q = 2 * pi * 4 / L;
  std::vector<ResolutionSample> mom, spin;
  for (int n : {64, 128, 256}) {
    const auto g = GridSpec::cube(1, L, n);
    const auto run = evolve_window(states::spin_helix(g, q, 0.3), {}, {}, 0.5);
    const auto r = hydro_residuals(run, {}, {});
    mom.push_back({g.spacing(0), r.momentum.max()});
    spin.push_back({g.spacing(0), r.spin.max()});
  }
  EXPECT_TRUE(convergence_order(mom).at_least(1.8)) << convergence_order(mom).order;
  EXPECT_TRUE(convergence_order(spin).at_least(1.8)) << convergence_order(spin).order;
}
