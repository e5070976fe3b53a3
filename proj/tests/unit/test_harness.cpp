#include <gtest/gtest.h>

#include <sstream>

#include "spingeo/harness/config.hpp"
#include "spingeo/harness/verify.hpp"

using namespace spingeo;
using namespace spingeo::harness;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_run_config(in);
}

std::string config_error(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(RunConfig, FullFileParses) {
  const auto c = parse(
      "[scenario]\nname = spin_helix\nenvelope = 0.2\n"
      "[grid]\nresolutions = 32, 64,128\n"
      "[evolve]\nduration = 0.5\nstride = 4\n"
      "[verify]\nsuites = hydro, frenet\ntolerance_scale = 2\ninject_fault = scale\n"
      "[output]\ndir = runs/a\n"
      "[physics]\nnu = 3\nlight_speed = 2\n");
  EXPECT_EQ(c.scenario.name, "spin_helix");
  EXPECT_DOUBLE_EQ(c.scenario.params.at("envelope"), 0.2);
  EXPECT_EQ(c.resolutions, (std::vector<int>{32, 64, 128}));
  EXPECT_DOUBLE_EQ(c.duration, 0.5);
  EXPECT_EQ(c.stride, 4);
  EXPECT_EQ(c.suites, (std::vector<std::string>{"hydro", "frenet"}));
  EXPECT_DOUBLE_EQ(c.tolerance_scale, 2.0);
  EXPECT_EQ(fault_of(c).scale, 2.0);
  EXPECT_EQ(c.out_dir, std::filesystem::path("runs/a"));
  EXPECT_DOUBLE_EQ(*c.nu, 3.0);
  EXPECT_FALSE(c.charge.has_value());
}

TEST(RunConfig, EmptyFileKeepsDefaults) {
  const auto c = parse("");
  EXPECT_EQ(c.scenario.name, "gaussian");
  EXPECT_TRUE(c.resolutions.empty());
  EXPECT_EQ(c.suites, std::vector<std::string>{"all"});
  EXPECT_EQ(c.inject_fault, "none");
}

TEST(RunConfig, UnknownKeyIsNamed) {
  EXPECT_NE(config_error("[grid]\nresolutoins = 64\n").find("grid.resolutoins"), std::string::npos);
  EXPECT_NE(config_error("[verify]\nsuite = all\n").find("verify.suite"), std::string::npos);
  EXPECT_NE(config_error("[scenario]\nname = plane_wave\nq = 1\n").find("'q'"), std::string::npos);
}

TEST(RunConfig, StructuralErrors) {
  EXPECT_NE(config_error("[mesh]\npoints = 3\n").find("[mesh]"), std::string::npos);
  EXPECT_NE(config_error("stride = 3\n").find("stride"), std::string::npos);
  EXPECT_NE(config_error("[scenario]\nB0 = 1\n").find("name"), std::string::npos);
  EXPECT_NE(config_error("[scenario]\nname = vortex\n").find("vortex"), std::string::npos);
}

TEST(RunConfig, BadValuesNameTheKey) {
  EXPECT_NE(config_error("[evolve]\ndt = fast\n").find("evolve.dt"), std::string::npos);
  EXPECT_NE(config_error("[evolve]\nsteps = 2.5\n").find("evolve.steps"), std::string::npos);
  EXPECT_NE(config_error("[grid]\nresolutions = 64,4\n").find("grid.resolutions"), std::string::npos);
  EXPECT_NE(config_error("[verify]\ninject_fault = flip\n").find("verify.inject_fault"), std::string::npos);
  EXPECT_NE(config_error("[physics]\nnu = 0\n").find("physics.nu"), std::string::npos);
}

TEST(RunConfig, PhysicsOverridesReachTheScenario) {
  const auto c = parse("[scenario]\nname = larmor\n[physics]\ncharge = 2\n");
  const auto s = make_scenario(c, 8);
  EXPECT_DOUBLE_EQ(s.references.at("precession_frequency"), 2.0);
  const auto g = make_scenario(parse("[physics]\ncharge = 3\nlight_speed = 2\n"), 32);
  EXPECT_DOUBLE_EQ(g.constants.charge, 3.0);
  EXPECT_DOUBLE_EQ(g.constants.light_speed, 2.0);
}

TEST(Report, StatusFollowsChecks) {
  VerificationReport r{"x"};
  EXPECT_FALSE(r.pass());
  r.checks.push_back(bound_check("a", 1.0, 2.0));
  r.checks.push_back(info_check("b", 1e9, "diagnostic"));
  EXPECT_TRUE(r.pass());
  r.checks.push_back(bound_check("c", std::nan(""), 2.0));
  EXPECT_FALSE(r.pass());
  EXPECT_EQ(r.to_json()["status"], "fail");
}

TEST(Report, ExactResidualsPassOnlyWhereAllowed) {
  const std::vector<ResolutionSample> zero{{0.1, 0.0}, {0.05, 0.0}, {0.025, 0.0}};
  EXPECT_TRUE(slope_check("z", zero, 1.8, 0.0, 1e-12, true).pass);
  EXPECT_FALSE(slope_check("z", zero, 1.8, 0.0, 1e-12, false).pass);
  const std::vector<ResolutionSample> quad{{0.1, 1e-2}, {0.05, 2.5e-3}, {0.025, 6.25e-4}};
  const auto c = slope_check("q", quad, 1.8, 2.2, 1e-12, false);
  EXPECT_TRUE(c.pass);
  EXPECT_NEAR(*c.slope, 2.0, 1e-12);
  EXPECT_FALSE(slope_check("q", quad, 2.1, 2.2, 1e-12, false).pass);
}

TEST(Report, JsonKeysSortedAndStable) {
  VerificationReport r{"s"};
  r.environment["zeta"] = 1;
  r.environment["alpha"] = 2;
  r.checks.push_back(bound_check("a", 0.5, 1.0, "note"));
  const std::string text = report_text(r);
  EXPECT_LT(text.find("\"alpha\""), text.find("\"zeta\""));
  EXPECT_LT(text.find("\"checks\""), text.find("\"suite\""));
  EXPECT_EQ(text, report_text(r));
}

TEST(Verify, UnknownSuiteRejected) {
  EXPECT_THROW(verify({"nonesuch"}, {}), ConfigError);
  EXPECT_THROW(verify({"hydro", "bogus"}, {}), ConfigError);
}

TEST(Verify, ResolutionsMustDouble) {
  VerifyOptions o;
  o.resolutions = {64, 100, 200};
  EXPECT_THROW(verify_hydro(o), ConfigError);
  o.resolutions = {64, 128};
  EXPECT_THROW(verify_hydro(o), ConfigError);
}

TEST(Verify, TeleparallelReportIsDeterministic) {
  const auto a = report_text(verify({"teleparallel"}, {}));
  EXPECT_EQ(a, report_text(verify({"teleparallel"}, {})));
  EXPECT_NE(a.find("\"status\": \"pass\""), std::string::npos);
}

TEST(Verify, InjectedSignFailsCalibration) {
  VerifyOptions o;
  o.fault = {1.0, -1.0};
  const auto r = verify({"triad"}, o);
  EXPECT_FALSE(r.pass());
  for (const auto& c : r.checks) {
    if (c.name != "triad.calibration") {
      EXPECT_TRUE(c.pass) << c.name;
    }
  }
}

TEST(Verify, ListedSuitesRunOnceInOrder) {
  const auto r = verify({"teleparallel", "triad", "teleparallel"}, {});
  EXPECT_EQ(r.suite, "teleparallel,triad");
  EXPECT_NO_THROW(require_known_suite("guidance"));
}
