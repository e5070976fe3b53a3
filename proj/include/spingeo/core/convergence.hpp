#pragma once

#include <cmath>
#include <vector>

#include "spingeo/core/error.hpp"

namespace spingeo {

struct ResolutionSample {
  double spacing;
  double norm;
};

/// Least-squares slope of log(norm) against log(spacing).
///
/// `exact` is set instead of a slope when every norm is at or below `floor`
/// (zero by default): the residual sits at round-off on every grid, so there
/// is no discretization error left to measure.
struct ConvergenceResult {
  bool exact = false;
  double order = 0.0;

  bool at_least(double p) const { return exact || order >= p; }
  bool within(double lo, double hi) const {
    return !exact && order >= lo && order <= hi;
  }
};

inline ConvergenceResult convergence_order(
    const std::vector<ResolutionSample>& samples, double floor = 0.0) {
  if (samples.size() < 3)
    throw InvalidArgument("convergence_order: need at least 3 resolutions");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double ratio = samples[i - 1].spacing / samples[i].spacing;
    if (!(ratio > 1.9 && ratio < 2.1))
      throw InvalidArgument("convergence_order: spacings must halve");
  }
  bool exact = true;
  for (const auto& s : samples) {
    if (!std::isfinite(s.norm) || s.norm < 0)
      throw InvalidArgument("convergence_order: invalid residual norm");
    if (s.norm > floor) exact = false;
  }
  if (exact) return {true, 0.0};
  for (const auto& s : samples)
    if (s.norm == 0.0)
      throw InvalidArgument(
          "convergence_order: mixed zero and non-zero residuals");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(samples.size());
  for (const auto& s : samples) {
    const double x = std::log(s.spacing), y = std::log(s.norm);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return {false, (n * sxy - sx * sy) / (n * sxx - sx * sx)};
}

}  // namespace spingeo
