#pragma once

#include <algorithm>

#include "spingeo/harness/suite_hydro.hpp"
#include "spingeo/harness/suite_spinor.hpp"
#include "spingeo/harness/suite_tele.hpp"

namespace spingeo::harness {

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"observables", "hydro", "triad", "frenet", "teleparallel"};
  return names;
}

inline void require_known_suite(const std::string& suite) {
  const auto& n = suite_names();
  if (suite != "all" && suite != "guidance" && std::find(n.begin(), n.end(), suite) == n.end())
    throw ConfigError("unknown suite '" + suite + "'");
}

inline VerificationReport verify_suite(const std::string& suite, const VerifyOptions& o) {
  if (suite == "observables" || suite == "guidance") return verify_observables(o);
  if (suite == "hydro") return verify_hydro(o);
  if (suite == "triad") return verify_triad(o);
  if (suite == "frenet") return verify_frenet(o);
  if (suite == "teleparallel") return verify_teleparallel(o);
  if (suite == "all") {
    VerificationReport all{"all"};
    for (const auto& s : suite_names()) all.append(verify_suite(s, o));
    return all;
  }
  throw ConfigError("unknown suite '" + suite + "'");
}

/// Runs each listed suite once, in the order given; "all" expands in place.
inline VerificationReport verify(const std::vector<std::string>& suites, const VerifyOptions& o) {
  for (const auto& s : suites) require_known_suite(s);
  if (suites.size() == 1) return verify_suite(suites.front(), o);
  std::vector<std::string> order;
  for (const auto& s : suites) {
    if (s == "all") {
      order.insert(order.end(), suite_names().begin(), suite_names().end());
      continue;
    }
    order.push_back(s == "guidance" ? "observables" : s);
  }
  VerificationReport out{""};
  std::vector<std::string> done;
  for (const auto& s : order) {
    if (std::find(done.begin(), done.end(), s) != done.end()) continue;
    out.append(verify_suite(s, o));
    out.suite += (done.empty() ? "" : ",") + s;
    done.push_back(s);
  }
  return out;
}

}  // namespace spingeo::harness
