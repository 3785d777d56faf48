#pragma once

#include <cmath>

namespace dualalpha {

/// Numerical tolerances shared by the dual solver and the alpha builder.
/// Each is an absolute-plus-relative threshold.
struct Tolerances {
  /// Optimal values up to c1 + bound_rel * (1 + |c1|) are accepted.
  double bound_rel = 1e-9;
  /// A constraint counts as violated when its residual exceeds
  /// feasibility_rel * (1 + max diag B).
  double feasibility_rel = 1e-11;
  /// Working-set pivots below pivot_rel * max diag B mark linear dependence.
  double pivot_rel = 1e-10;

  double bound_slack(double c1) const { return bound_rel * (1.0 + std::abs(c1)); }
};

}  // namespace dualalpha
