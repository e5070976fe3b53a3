#pragma once

#include <string>
#include <vector>

#include "spingeo/harness/report.hpp"
#include "spingeo/pauli/evolve.hpp"
#include "spingeo/scenarios/catalog.hpp"
#include "spingeo/tele/frames.hpp"

namespace spingeo::harness {

struct VerifyOptions {
  double tolerance_scale = 1.0;  ///< multiplies absolute and relative bounds, not slope windows
  std::vector<int> resolutions;  ///< overrides the resolution ladder of the grid-based suites
  InjectedFault fault;
  tele::Config4D tele;
};

inline void require_halving(const std::vector<int>& r) {
  if (r.size() < 3) throw ConfigError("verification needs at least 3 resolutions");
  for (std::size_t i = 1; i < r.size(); ++i)
    if (r[i] != 2 * r[i - 1]) throw ConfigError("verification resolutions must double at each step");
}

inline std::vector<int> ladder(const VerifyOptions& o, std::vector<int> fallback = {64, 128, 256}) {
  if (o.resolutions.empty()) return fallback;
  require_halving(o.resolutions);
  return o.resolutions;
}

/// Nodes with rho above `ratio` of its maximum, eroded by `margin`.
inline Mask core_mask(const SpinorField& psi, double ratio = 1e-6, int margin = 2) {
  return erode(psi.grid, density_mask(density(psi), ratio), margin);
}

/// max |a - b| / scale over nodes valid in both and in `core`; scale is the
/// larger of max |b| there and `floor_scale`.
inline double relative_gap(const MaskedVectorField& a, const MaskedVectorField& b, const Mask& core,
                           double floor_scale = 0.0) {
  double gap = 0.0, scale = floor_scale;
  std::size_t used = 0;
  for (std::size_t n = 0; n < a.field.size(); ++n) {
    if (!a.valid[n] || !b.valid[n] || (!core.empty() && !core[n])) continue;
    gap = std::max(gap, (a.field[n] - b.field[n]).norm());
    scale = std::max(scale, b.field[n].norm());
    ++used;
  }
  if (used == 0 || scale == 0.0) return std::numeric_limits<double>::infinity();
  return gap / scale;
}

/// Final state of a free evolution over [0, T], dt <= dx^2 / 2.
inline SpinorField evolved(const Scenario& s, double T) {
  return evolve_window(s.psi, s.ext, s.constants, T, 1).snapshots.back();
}

}  // namespace spingeo::harness
