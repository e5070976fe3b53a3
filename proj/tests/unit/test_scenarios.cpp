#include <gtest/gtest.h>

#include "spingeo/pauli/evolve.hpp"
#include "spingeo/scenarios/catalog.hpp"

using namespace spingeo;

TEST(Scenario, EveryNameInstantiatesAtTwoResolutions) {
  for (const auto& name : scenario_names()) {
    for (int n : {32, 64}) {
      const auto s = instantiate({name, {}}, n);
      EXPECT_EQ(s.grid.points(0), n) << name;
      EXPECT_TRUE(all_finite(s.psi)) << name;
    }
    EXPECT_EQ(instantiate({name, {}}, 32).references, instantiate({name, {}}, 64).references) << name;
  }
}

TEST(Scenario, DefaultsFollowBoxSize) {
  const auto p = scenario_defaults("plane_wave");
  EXPECT_DOUBLE_EQ(p.at("k"), 2.0);
  EXPECT_DOUBLE_EQ(scenario_defaults("spin_helix", {{"L", 4.0}}).at("q"), 2 * states::pi);
  EXPECT_DOUBLE_EQ(scenario_defaults("gaussian").at("sigma0"), 1.0);
  EXPECT_DOUBLE_EQ(scenario_defaults("larmor").at("B0"), 1.0);
}

TEST(Scenario, UnknownNameOrParameterRejected) {
  EXPECT_THROW(instantiate({"vortex", {}}, 32), InvalidArgument);
  EXPECT_THROW(instantiate({"plane_wave", {{"q", 1.0}}}, 32), InvalidArgument);
}

TEST(Scenario, UnresolvedWavelengthRejected) {
  EXPECT_THROW(instantiate({"spin_helix", {}}, 8), InvalidArgument);
  EXPECT_NO_THROW(instantiate({"spin_helix", {}}, 16));
  EXPECT_THROW(instantiate({"plane_wave", {{"k", 10.0}}}, 32), InvalidArgument);
}

TEST(Scenario, OddHelixTurnsRejected) {
  EXPECT_THROW(instantiate({"spin_helix", {{"q", 3.0}}}, 64), InvalidArgument);
  EXPECT_THROW(instantiate({"plane_wave", {{"k", 2.5}}}, 64), InvalidArgument);
}

TEST(Scenario, RingMustFitTheBox) {
  EXPECT_THROW(instantiate({"spin_circle", {{"r0", 1.9}}}, 64), InvalidArgument);
  EXPECT_THROW(instantiate({"spin_circle", {{"dims", 1}}}, 64), InvalidArgument);
}

TEST(Scenario, PlaneWaveReferenceVelocity) {
  const auto s = instantiate({"plane_wave", {}}, 64);
  const auto v = bilinear_velocity(s.psi, nullptr, s.constants);
  const double k = s.params.at("k"), h = s.grid.spacing(0);
  for (std::size_t n = 0; n < s.grid.size(); ++n) {
    EXPECT_NEAR(v.field[n][0], std::sin(k * h) / h, 1e-12);
    EXPECT_NEAR(v.field[n][0], s.references.at("velocity_x"), k * k * h * h);
  }
}

TEST(Scenario, HelixReferenceSpin) {
  const auto s = instantiate({"spin_helix", {}}, 64);
  const auto ds = density_spin(s.psi);
  const double q = s.references.at("spin_wavenumber");
  for (std::size_t n = 0; n < s.grid.size(); ++n) {
    const double x = s.grid.position(n)[0];
    EXPECT_NEAR(ds.s[n][0], 0.5 * std::cos(q * x), 1e-14);
    EXPECT_NEAR(ds.s[n][1], 0.5 * std::sin(q * x), 1e-14);
  }
}

TEST(Scenario, LarmorReferenceFrequency) {
  const auto s = instantiate({"larmor", {{"B0", 2.0}}}, 16);
  const double w = s.references.at("precession_frequency");
  EXPECT_DOUBLE_EQ(w, 2.0);
  const auto run = evolve(s.psi, s.ext, s.constants, {0.01, 100, 100});
  const auto sx = density_spin(run.snapshots.back()).s[0][0];
  EXPECT_NEAR(sx, 0.5 * std::cos(w * 1.0), 1e-12);
}
