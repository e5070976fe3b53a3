#include <gtest/gtest.h>

#include "spingeo/spinor/conventions.hpp"

using namespace spingeo;

TEST(Calibration, DefaultFamilyIsUnique) {
  const auto r = calibrate_conventions(default_calibration_family());
  EXPECT_FALSE(r.underdetermined);
  EXPECT_EQ(r.signature, (ConventionSignature{-1, -1, true}));
  EXPECT_LT(r.discrepancy, 5e-3);
}

TEST(Calibration, PlaneWaveAloneIsUnderdetermined) {
  auto fam = default_calibration_family();
  fam.resize(1);
  const auto r = calibrate_conventions(fam);
  EXPECT_TRUE(r.underdetermined);
  EXPECT_EQ(r.signature.sigma_euler, -1);
}

TEST(Calibration, InjectedScaleFails) {
  EXPECT_THROW(calibrate_conventions(default_calibration_family(), 0.05, {2.0}), CalibrationFailure);
}

TEST(Calibration, InjectedTermSignFails) {
  EXPECT_THROW(calibrate_conventions(default_calibration_family(), 0.05, {1.0, -1.0}), CalibrationFailure);
}

TEST(Calibration, HelixThroughEulerFormAfterCalibration) {
  const auto g = GridSpec::cube(1, 2 * std::numbers::pi, 128);
  const ConventionSignature conv{-1, -1, true};
  const auto a = states::spin_helix_euler(g, 4.0, conv);
  const auto b = states::spin_helix(g, 4.0);
  // equal up to the double-cover sign, which flips where the azimuth wraps
  for (std::size_t n = 0; n < g.size(); ++n)
    EXPECT_LT(std::min((a[n] - b[n]).norm(), (a[n] + b[n]).norm()), 1e-14);
}
