// spingeo: scenario runs, observable exports, streamlines, 4D tetrads,
// convention calibration and the verification suites.
//
// Exit codes: 0 success, 1 error (bad config, instability, I/O), 2 a
// verification or calibration check failed.

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "spingeo/core/parallel.hpp"
#include "spingeo/core/snapshot_io.hpp"
#include "spingeo/harness/config.hpp"
#include "spingeo/harness/verify.hpp"

using namespace spingeo;
using namespace spingeo::harness;
namespace fs = std::filesystem;

namespace {

constexpr const char* kColumns = R"(CSV columns (fixed order, header row included):
  evolve       history.csv       index,time,norm,energy
  observables  observables.csv   x,y,z,rho,sx,sy,sz,vx,vy,vz,valid
  triad        triad.csv         x,y,z,e1x,e1y,e1z,e2x,e2y,e2z,e3x,e3y,e3z,valid
  streamlines  streamline_<i>.csv  s,x,y,z,kappa,tau,flags
               (flags: 1 degenerate, kappa below threshold; 2 truncated at a masked region)
  tetrad4d     tetrad4d.csv      x0,x1,x2,x3,torsion,S,R,rho_matter,trace,valid
JSON outputs (keys sorted): report.json, calibration.json, tetrad4d.json.
Environment: SPIN_GEODESY_THREADS caps worker threads.)";

struct Common {
  std::string config, resolution, out;
  double tolerance_scale = 0.0;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "run configuration file (sectioned key = value)");
  sub->add_option("--resolution", c.resolution, "grid points per axis, N or N,N,N for verification");
  sub->add_option("--out", c.out, "output directory (default: [output] dir, else ./out)");
  sub->add_option("--tolerance-scale", c.tolerance_scale, "multiplies verification tolerances")
      ->check(CLI::PositiveNumber);
}

RunConfig load(const Common& c) {
  RunConfig cfg = c.config.empty() ? RunConfig{} : load_run_config(c.config);
  if (!c.resolution.empty()) cfg.resolutions = parse_resolutions(c.resolution);
  if (!c.out.empty()) cfg.out_dir = c.out;
  if (c.tolerance_scale > 0) cfg.tolerance_scale = c.tolerance_scale;
  return cfg;
}

int resolution_of(const RunConfig& cfg) { return cfg.resolutions.empty() ? 64 : cfg.resolutions.front(); }

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

template <typename... T>
void row(std::ostringstream& os, const T&... v) {
  bool first = true;
  ((os << (first ? "" : ",") << v, first = false), ...);
  os << '\n';
}

EvolveOptions evolve_options(const RunConfig& cfg, const GridSpec& g) {
  if (cfg.steps == 0 && cfg.duration == 0.0)
    throw ConfigError("[evolve] needs 'steps' or 'duration'");
  EvolveOptions o;
  const double h = g.min_spacing();
  o.dt = cfg.dt > 0 ? cfg.dt : 0.5 * PhysicalConstants::mass * h * h / PhysicalConstants::hbar;
  if (cfg.steps > 0) {
    o.steps = cfg.steps;
  } else {
    o.steps = static_cast<int>(std::ceil(cfg.duration / o.dt - 1e-9));
    o.dt = cfg.duration / o.steps;
  }
  if (cfg.stride > o.steps)
    throw ConfigError("key 'evolve.stride': " + std::to_string(cfg.stride) + " exceeds the " +
                      std::to_string(o.steps) + " steps of the run");
  o.stride = cfg.stride;
  return o;
}

bool wants_evolution(const RunConfig& cfg) { return cfg.steps > 0 || cfg.duration > 0; }

/// Configured state: the final snapshot when the config asks for evolution.
SpinorField state_of(const RunConfig& cfg, const Scenario& s) {
  if (!wants_evolution(cfg)) return s.psi;
  return evolve(s.psi, s.ext, s.constants, evolve_options(cfg, s.grid)).snapshots.back();
}

int cmd_evolve(const RunConfig& cfg) {
  const Scenario s = make_scenario(cfg, resolution_of(cfg));
  const auto run = evolve(s.psi, s.ext, s.constants, evolve_options(cfg, s.grid));
  const fs::path dir = cfg.out_dir / "evolve";
  std::ostringstream csv;
  row(csv, "index", "time", "norm", "energy");
  for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
    char base[32];
    std::snprintf(base, sizeof base, "psi_%05zu", i);
    io::write_field(dir / base, run.snapshots[i]);
    row(csv, i, num(run.times[i]), num(run.norms[i]), i < run.energies.size() ? num(run.energies[i]) : "");
  }
  io::write_atomic(dir / "history.csv", csv.str());
  std::cout << "evolve: " << run.snapshots.size() << " snapshots, dt " << run.dt << ", " << dir.string() << "\n";
  return 0;
}

int cmd_observables(const RunConfig& cfg) {
  const Scenario s = make_scenario(cfg, resolution_of(cfg));
  const SpinorField psi = state_of(cfg, s);
  const auto h = hydro_fields(psi, s.ext.A_ptr(), s.constants);
  std::ostringstream csv;
  row(csv, "x", "y", "z", "rho", "sx", "sy", "sz", "vx", "vy", "vz", "valid");
  for (std::size_t n = 0; n < psi.size(); ++n) {
    const Vec3 x = psi.grid.position(n);
    row(csv, num(x[0]), num(x[1]), num(x[2]), num(h.rho[n]), num(h.s[n][0]), num(h.s[n][1]), num(h.s[n][2]),
        num(h.v[n][0]), num(h.v[n][1]), num(h.v[n][2]), int(h.valid[n]));
  }
  io::write_atomic(cfg.out_dir / "observables.csv", csv.str());
  return 0;
}

int cmd_triad(const RunConfig& cfg) {
  const Scenario s = make_scenario(cfg, resolution_of(cfg));
  const auto t = triad_from_spinor(state_of(cfg, s));
  std::ostringstream csv;
  row(csv, "x", "y", "z", "e1x", "e1y", "e1z", "e2x", "e2y", "e2z", "e3x", "e3y", "e3z", "valid");
  for (std::size_t n = 0; n < t.grid().size(); ++n) {
    const Vec3 x = t.grid().position(n);
    const Vec3 &a = t.e[0][n], &b = t.e[1][n], &c = t.e[2][n];
    row(csv, num(x[0]), num(x[1]), num(x[2]), num(a[0]), num(a[1]), num(a[2]), num(b[0]), num(b[1]), num(b[2]),
        num(c[0]), num(c[1]), num(c[2]), int(t.valid[n]));
  }
  io::write_atomic(cfg.out_dir / "triad.csv", csv.str());
  return 0;
}

std::vector<Vec3> parse_seeds(const std::string& text) {
  std::vector<Vec3> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::stringstream is(item);
    Vec3 p = Vec3::Zero();
    std::string c;
    int i = 0;
    while (std::getline(is, c, ',')) {
      if (i > 2) throw ConfigError("seed '" + item + "' has more than 3 coordinates");
      try {
        p[i] = std::stod(c);
      } catch (const std::exception&) {
        throw ConfigError("seed '" + item + "' is not x,y,z");
      }
      ++i;
    }
    if (i != 3) throw ConfigError("seed '" + item + "' is not x,y,z");
    out.push_back(p);
  }
  if (out.empty()) throw ConfigError("--seed-points is empty");
  return out;
}

int cmd_streamlines(const RunConfig& cfg, const std::string& seeds_text, double length) {
  const Scenario s = make_scenario(cfg, resolution_of(cfg));
  const SpinorField psi = state_of(cfg, s);
  const double r0 = s.params.count("r0") ? s.params.at("r0") : 0.0;
  const double b = s.params.count("pitch") ? s.params.at("pitch") : 0.0;
  const std::vector<Vec3> seeds = seeds_text.empty() ? std::vector<Vec3>{Vec3(r0, 0, 0)} : parse_seeds(seeds_text);
  TraceOptions opt;
  opt.max_len = length > 0 ? length : (r0 > 0 ? 2 * states::pi * std::hypot(r0, b) : 0.5 * s.grid.extents()[0]);
  const auto ds = density_spin(psi);
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    const auto line = frenet_apparatus(trace_spin_streamline(ds.s, ds.valid, seeds[k], opt));
    std::ostringstream csv;
    row(csv, "s", "x", "y", "z", "kappa", "tau", "flags");
    for (std::size_t i = 0; i < line.size(); ++i) {
      const Vec3& x = line.points[i];
      row(csv, num(line.arc(i)), num(x[0]), num(x[1]), num(x[2]), num(line.kappa[i]), num(line.tau[i]),
          int(line.flags[i]));
    }
    io::write_atomic(cfg.out_dir / ("streamline_" + std::to_string(k) + ".csv"), csv.str());
  }
  return 0;
}

tele::Config4D tele_config(const RunConfig& cfg) {
  tele::Config4D t;
  if (cfg.nu) t.nu = *cfg.nu;
  if (cfg.light_speed) t.light_speed = *cfg.light_speed;
  t.check();
  return t;
}

int cmd_tetrad4d(const RunConfig& cfg, const std::string& name, double extent) {
  using namespace tele;
  const Config4D t = tele_config(cfg);
  const int N = cfg.resolutions.empty() ? 9 : cfg.resolutions.front();
  const auto G = Grid4::cube(N, extent);
  const auto conn = connection_suite(TetradField4D::sample(G, catalog_tetrad(name, {}, t).tetrad));
  const auto curv = curvature_suite(conn, t);
  std::ostringstream csv;
  row(csv, "x0", "x1", "x2", "x3", "torsion", "S", "R", "rho_matter", "trace", "valid");
  for (std::size_t n = 0; n < G.size(); ++n) {
    const Vec4 x = G.position(n);
    const auto& p = curv.points[n];
    row(csv, num(x[0]), num(x[1]), num(x[2]), num(x[3]), num(conn.T[n].max_abs()), num(p.S), num(p.R),
        num(p.rho_matter), num(p.trace), int(curv.valid[n]));
  }
  io::write_atomic(cfg.out_dir / "tetrad4d.csv", csv.str());
  const auto ck = connection_checks(conn);
  const auto cn = curvature_norms(curv);
  json j{{"tetrad", name},
         {"points", N},
         {"extent", extent},
         {"nu", t.nu},
         {"light_speed", t.light_speed},
         {"decomposition", ck.decomposition},
         {"torsion_routes", ck.routes},
         {"metric_compatibility", ck.metric_compatibility},
         {"max_torsion", ck.max_torsion},
         {"S", cn.S},
         {"R", cn.R},
         {"R_minus_from_T", cn.R_minus_from_T},
         {"trace_mismatch", cn.trace_mismatch},
         {"scalar_mismatch", cn.scalar_mismatch}};
  io::write_atomic(cfg.out_dir / "tetrad4d.json", j.dump(2) + "\n");
  return 0;
}

int cmd_calibrate(const RunConfig& cfg) {
  const int N = cfg.resolutions.empty() ? 256 : cfg.resolutions.front();
  json j;
  int code = 0;
  try {
    const auto r = calibrate_conventions(default_calibration_family(N), 0.05 * cfg.tolerance_scale, fault_of(cfg));
    j["status"] = "pass";
    j["signature"] = signature_json(r.signature);
    j["discrepancy"] = r.discrepancy;
    j["underdetermined"] = r.underdetermined;
    json cands = json::array();
    for (const auto& c : r.candidates)
      cands.push_back({{"signature", signature_json(c.signature)}, {"discrepancy", c.discrepancy}});
    j["candidates"] = cands;
    std::cout << "calibrate: " << signature_json(r.signature).dump() << " discrepancy " << r.discrepancy << "\n";
  } catch (const CalibrationFailure& e) {
    j["status"] = "fail";
    j["error"] = e.what();
    std::cerr << "calibrate: " << e.what() << "\n";
    code = 2;
  }
  j["resolution"] = N;
  j["inject_fault"] = cfg.inject_fault;
  io::write_atomic(cfg.out_dir / "calibration.json", j.dump(2) + "\n");
  return code;
}

int cmd_verify(const RunConfig& cfg, const std::vector<std::string>& suites) {
  VerifyOptions o;
  o.tolerance_scale = cfg.tolerance_scale;
  o.resolutions = cfg.resolutions;
  o.fault = fault_of(cfg);
  o.tele = tele_config(cfg);
  const auto& names = suites.empty() ? cfg.suites : suites;
  VerificationReport r = verify(names, o);
  r.environment["tolerance_scale"] = cfg.tolerance_scale;
  r.environment["inject_fault"] = cfg.inject_fault;
  io::write_atomic(cfg.out_dir / "report.json", report_text(r));
  int failed = 0;
  for (const auto& c : r.checks)
    if (!c.pass) {
      ++failed;
      std::cerr << "FAIL " << c.name << " measured " << c.measured << "\n";
    }
  std::cout << "verify " << r.suite << ": " << (r.pass() ? "pass" : "fail") << " (" << r.checks.size()
            << " checks, " << failed << " failed) -> " << (cfg.out_dir / "report.json").string() << "\n";
  return r.pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin geometry of the Pauli field: observables, hydrodynamics, triads and tetrads"};
  app.footer(kColumns);
  app.require_subcommand(1);

  Common c;
  std::string seeds, tetrad = "rotating";
  std::vector<std::string> suites;
  double length = 0.0, extent = 2.0;

  auto* ev = app.add_subcommand("evolve", "split-step evolution; snapshots and norm/energy history");
  auto* ob = app.add_subcommand("observables", "density, spin and bilinear velocity per node");
  auto* tr = app.add_subcommand("triad", "spin triad per node");
  auto* st = app.add_subcommand("streamlines", "spin streamlines with curvature and torsion");
  auto* te = app.add_subcommand("tetrad4d", "connection and curvature of a catalog tetrad");
  auto* ca = app.add_subcommand("calibrate", "sign and role conventions of the velocity forms");
  auto* ve = app.add_subcommand("verify", "verification suites; report.json");
  for (auto* s : {ev, ob, tr, st, te, ca, ve}) add_common(s, c);
  st->add_option("--seed-points", seeds, "seeds as \"x,y,z;x,y,z\" (default: (r0,0,0))");
  st->add_option("--length", length, "arc length per line (default: one ring turn)")->check(CLI::PositiveNumber);
  te->add_option("--tetrad", tetrad, "identity, boost, rotation, rotating or perturbed");
  te->add_option("--extent", extent, "edge of the 4D cube patch")->check(CLI::PositiveNumber);
  ve->add_option("--suite", suites, "observables|guidance, hydro, triad, frenet, teleparallel or all")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const RunConfig cfg = load(c);
    if (*ev) return cmd_evolve(cfg);
    if (*ob) return cmd_observables(cfg);
    if (*tr) return cmd_triad(cfg);
    if (*st) return cmd_streamlines(cfg, seeds, length);
    if (*te) return cmd_tetrad4d(cfg, tetrad, extent);
    if (*ca) return cmd_calibrate(cfg);
    if (*ve) return cmd_verify(cfg, suites);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
