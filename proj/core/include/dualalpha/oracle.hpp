#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dualalpha/alpha_builder.hpp"
#include "dualalpha/cech_graph.hpp"
#include "dualalpha/tolerances.hpp"

namespace dualalpha {

// Reference implementations for small inputs. Nothing here shares code
// with the dual solver or with the Cech/lazy pruning of build_alpha.

/// minimize 1/2 |y - x|^2  s.t.  A_J y = V_J,  A_i y <= V_i (i not in J).
struct PrimalProblem {
  Eigen::VectorXd x;
  Eigen::MatrixXd A;
  Eigen::VectorXd V;
  std::vector<int> equalities;
};

struct PrimalSolution {
  bool feasible = false;
  Eigen::VectorXd y;
  double cstar = std::numeric_limits<double>::infinity();
};

inline constexpr std::size_t kMaxEnumerationConstraints = 24;
inline constexpr std::size_t kMaxOraclePoints = 25;

/// Exhaustive active-set enumeration: every constraint set T containing J
/// whose inequality rows extend a basis of the equality rows is solved as
/// an equality-constrained projection. The optimum is the first point that
/// is feasible and satisfies the KKT sign conditions; failing that, the
/// best feasible point; failing that, the problem is infeasible.
/// Throws std::invalid_argument for more than kMaxEnumerationConstraints rows.
PrimalSolution primal_enumerate(const PrimalProblem& problem, double feasibility_tol = 1e-10);

struct OracleOptions {
  Tolerances tol{};
  unsigned threads = 1;
};

/// Tests every subset of at most d + 1 points with constraints from all
/// other sites. Throws std::invalid_argument for more than kMaxOraclePoints.
AlphaComplex brute_alpha(const WeightedPoints& points, int d, const OracleOptions& options = {});

struct ComparisonTolerances {
  double weight_rel = 1e-9;  // |dw| <= weight_rel * (1 + |w|)
  double witness = 1e-7;     // Euclidean
};

struct ComparisonReport {
  std::size_t only_in_first = 0;
  std::size_t only_in_second = 0;
  std::size_t weight_mismatches = 0;
  std::size_t witness_mismatches = 0;
  double max_weight_delta = 0.0;
  double max_witness_delta = 0.0;
  std::vector<std::string> discrepancies;  // at most the first 10

  bool same_simplices() const { return only_in_first == 0 && only_in_second == 0; }
  bool identical() const {
    return same_simplices() && weight_mismatches == 0 && witness_mismatches == 0;
  }
  std::string summary() const;
};

ComparisonReport compare(const AlphaComplex& first, const AlphaComplex& second,
                         ComparisonTolerances tol = {});

}  // namespace dualalpha
