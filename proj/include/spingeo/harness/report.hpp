#pragma once

// Verification checks and the JSON report they serialize to.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "spingeo/core/convergence.hpp"
#include "spingeo/spinor/euler.hpp"

namespace spingeo::harness {

using nlohmann::json;

/// How `measured` is judged against `tolerance`.
/// `info` records a diagnostic that never fails the report.
enum class Compare { at_most, at_least, slope_within, slope_at_least, flag, info };

struct Check {
  std::string name;
  Compare compare = Compare::at_most;
  double measured = 0.0;
  double tolerance = 0.0;
  double upper = 0.0;  ///< slope_within only
  std::optional<double> slope;
  bool exact = false;  ///< residual at round-off on every grid, no slope
  bool pass = false;
  std::string note;
  json samples = json::array();  ///< [[spacing, norm], ...]

  Check(std::string n, Compare c, double m = 0.0, double tol = 0.0)
      : name(std::move(n)), compare(c), measured(m), tolerance(tol) {}
};

inline const char* compare_name(Compare c) {
  switch (c) {
    case Compare::at_most: return "at_most";
    case Compare::at_least: return "at_least";
    case Compare::slope_within: return "slope_within";
    case Compare::slope_at_least: return "slope_at_least";
    case Compare::flag: return "flag";
    case Compare::info: return "info";
  }
  return "?";
}

inline Check bound_check(std::string name, double measured, double tol, std::string note = {}) {
  Check c{std::move(name), Compare::at_most, measured, tol};
  c.pass = std::isfinite(measured) && measured <= tol;
  c.note = std::move(note);
  return c;
}

inline Check info_check(std::string name, double measured, std::string note) {
  Check c{std::move(name), Compare::info, measured, 0.0};
  c.pass = true;
  c.note = std::move(note);
  return c;
}

inline Check flag_check(std::string name, bool ok, std::string note = {}) {
  Check c{std::move(name), Compare::flag, ok ? 1.0 : 0.0, 1.0};
  c.pass = ok;
  c.note = std::move(note);
  return c;
}

/// Order check from norms at halving spacings. `floor` marks round-off:
/// when every norm sits below it the check reports `exact`, which passes
/// only if `exact_ok`.
inline Check slope_check(std::string name, const std::vector<ResolutionSample>& s, double lo,
                         double hi, double floor, bool exact_ok, std::string note = {}) {
  Check c{std::move(name), hi > 0 ? Compare::slope_within : Compare::slope_at_least};
  c.tolerance = lo;
  c.upper = hi;
  c.note = std::move(note);
  for (const auto& x : s) c.samples.push_back({x.spacing, x.norm});
  c.measured = s.empty() ? 0.0 : s.back().norm;
  const auto r = convergence_order(s, floor);
  c.exact = r.exact;
  if (r.exact) {
    c.pass = exact_ok;
    return c;
  }
  c.slope = r.order;
  c.pass = hi > 0 ? r.within(lo, hi) : r.at_least(lo);
  return c;
}

struct VerificationReport {
  std::string suite;
  std::vector<Check> checks;
  json environment = json::object();

  explicit VerificationReport(std::string name = {}) : suite(std::move(name)) {}

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }

  void append(const VerificationReport& o) {
    checks.insert(checks.end(), o.checks.begin(), o.checks.end());
    for (auto it = o.environment.begin(); it != o.environment.end(); ++it) environment[it.key()] = it.value();
  }

  json to_json() const {
    json j;
    j["suite"] = suite;
    j["status"] = pass() ? "pass" : "fail";
    j["environment"] = environment;
    json arr = json::array();
    for (const auto& c : checks) {
      json e{{"name", c.name},       {"compare", compare_name(c.compare)},
             {"measured", c.measured}, {"tolerance", c.tolerance},
             {"pass", c.pass},        {"exact", c.exact}};
      if (c.compare == Compare::slope_within) e["upper"] = c.upper;
      if (c.slope) e["slope"] = *c.slope;
      if (!c.note.empty()) e["note"] = c.note;
      if (!c.samples.empty()) e["samples"] = c.samples;
      arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    return j;
  }
};

inline json signature_json(const ConventionSignature& s) {
  return {{"sigma_euler", s.sigma_euler}, {"sigma_frenet", s.sigma_frenet}, {"role_swap", s.role_swap}};
}

inline std::string report_text(const VerificationReport& r) { return r.to_json().dump(2) + "\n"; }

}  // namespace spingeo::harness
