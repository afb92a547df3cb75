#pragma once

// Structure and curvature invariants evaluated over a set of sample points.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kmu/tensor.hpp"

namespace kmu {

struct CheckResult {
  std::string name;
  /// Largest residual over the points; for lower-bound checks (is_lower_bound)
  /// the smallest observed value instead.
  double value = 0.0;
  double tolerance = 0.0;
  bool is_lower_bound = false;
  bool pass = false;
};

/// n points uniform in [−1, 1]² × (middle 80% of the z-domain).
std::vector<Point> random_points(const ModelSpace& space, std::size_t n, std::uint64_t seed);

/// Contact-metric axioms, frame algebra, connection, h-operator, curvature
/// symmetries, κ/μ and bracket relations. `tol_override` replaces every
/// per-check tolerance except the non-Sasakian lower bound.
std::vector<CheckResult> structure_checks(const ModelSpace& space, const std::vector<Point>& points,
                                          std::optional<double> tol_override = std::nullopt);

}  // namespace kmu
