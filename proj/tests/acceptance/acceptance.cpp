// Acceptance: runs `verify all` twice through the CLI, then grades each
// criterion from the named checks of the report.
//
//   acceptance <path-to-spingeo> <work-dir>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  double seconds = 0.0;
  std::string report;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Run verify_all(const std::string& cli, const fs::path& out) {
  fs::remove_all(out);
  const std::string cmd = "\"" + cli + "\" verify --suite all --out \"" + out.string() + "\" > \"" +
                          out.string() + ".log\" 2>&1";
  const auto t0 = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  Run r;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (fs::exists(out / "report.json")) r.report = slurp(out / "report.json");
  return r;
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

struct Criterion {
  int id;
  std::string title;
  std::function<bool(const std::string&)> selects;
  std::size_t expected;  ///< checks the criterion must find
};

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <spingeo> <work-dir>\n";
    return 1;
  }
  const std::string cli = argv[1];
  const fs::path work = argv[2];
  fs::create_directories(work);

  const Run a = verify_all(cli, work / "run_a");
  const Run b = verify_all(cli, work / "run_b");

  json report;
  try {
    report = json::parse(a.report);
  } catch (const std::exception& e) {
    std::cerr << "report.json unreadable: " << e.what() << "\n";
  }

  const std::vector<Criterion> criteria{
      {1, "triad orthonormality and handedness",
       [](const std::string& n) { return starts_with(n, "triad.orthonormality.") || starts_with(n, "triad.handedness."); }, 6},
      {2, "guidance equivalence and plane-wave hand value",
       [](const std::string& n) { return starts_with(n, "observables.guidance_") || starts_with(n, "observables.plane_wave_velocity_"); }, 8},
      {3, "Frenet velocity after calibration",
       [](const std::string& n) {
         return n == "frenet.calibration" || starts_with(n, "frenet.velocity") || starts_with(n, "frenet.plane_wave_div_");
       }, 6},
      {4, "Serret-Frenet against torsion projections",
       [](const std::string& n) { return starts_with(n, "frenet.spin_circle.") || starts_with(n, "frenet.spin_helix_lines."); }, 8},
      {5, "hydrodynamic residuals, Larmor, dispersion", [](const std::string& n) { return starts_with(n, "hydro."); }, 13},
      {6, "teleparallel identities and frame algebra",
       [](const std::string& n) { return starts_with(n, "teleparallel.") && !starts_with(n, "teleparallel.geodesic_"); }, 16},
      {7, "geodesic transport in the rotating frame",
       [](const std::string& n) { return starts_with(n, "teleparallel.geodesic_"); }, 2},
  };

  bool all = true;
  for (const auto& c : criteria) {
    std::size_t found = 0, failed = 0;
    std::string first_fail;
    if (report.contains("checks"))
      for (const auto& chk : report["checks"]) {
        const std::string name = chk.value("name", "");
        if (!c.selects(name)) continue;
        ++found;
        if (!chk.value("pass", false)) {
          ++failed;
          if (first_fail.empty()) first_fail = name;
        }
      }
    const bool ok = found == c.expected && failed == 0;
    all = all && ok;
    std::printf("criterion %d %-50s %s  (%zu/%zu checks", c.id, c.title.c_str(), ok ? "PASS" : "FAIL", found - failed,
                c.expected);
    if (!first_fail.empty()) std::printf(", first failure %s", first_fail.c_str());
    std::printf(")\n");
  }

  const bool same = !a.report.empty() && a.report == b.report;
  const bool budget = a.seconds <= 600.0 && b.seconds <= 600.0;
  const bool ok8 = a.code == 0 && b.code == 0 && same && budget;
  all = all && ok8;
  std::printf("criterion 8 %-50s %s  (exit %d/%d, reports %s, %.1f s and %.1f s of 600 s)\n",
              "verify all: deterministic, within budget", ok8 ? "PASS" : "FAIL", a.code, b.code,
              same ? "byte-identical" : "differ", a.seconds, b.seconds);
  return all ? 0 : 1;
}
