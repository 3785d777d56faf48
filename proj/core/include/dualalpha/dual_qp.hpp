#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "dualalpha/tolerances.hpp"

namespace dualalpha {

/// maximize  -1/2 l^T B l + U^T l   subject to  l_i >= 0 for i not in J,
/// stopping as soon as the objective is known to exceed `bound`.
///
/// B = A A^T and U = A x - V for the primal projection problem
///   minimize 1/2 |y - x|^2  s.t.  A_J y = V_J,  A_i y <= V_i otherwise.
struct DualProblem {
  Eigen::MatrixXd B;
  Eigen::VectorXd U;
  std::vector<int> equalities;  // 0-based indices into U
  double bound = std::numeric_limits<double>::infinity();
};

enum class DualStatus { Optimal, BoundExceeded };

struct DualSolution {
  DualStatus status = DualStatus::BoundExceeded;
  Eigen::VectorXd lambda;  // meaningful only when Optimal
  double cstar = std::numeric_limits<double>::infinity();
  int iterations = 0;
  /// Dual objective after every working-set change; filled only when
  /// DualSolver::record_trace is set.
  std::vector<double> trace;

  bool optimal() const { return status == DualStatus::Optimal; }
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dual active-set solver. Starts from lambda = 0, adds violated
/// constraints one at a time and removes blocking ones, keeping a Cholesky
/// factor of the working-set block of B. A dependent entering constraint
/// produces a ray; a ray with no blocking sign constraint certifies that
/// the dual is unbounded (the primal is infeasible).
///
/// One instance holds reusable buffers and must not be shared between
/// concurrent solves.
class DualSolver {
 public:
  explicit DualSolver(Tolerances tol = {}) : tol_(tol) {}

  /// Unchecked solve; B must be symmetric PSD. Throws SolverError when the
  /// iteration cap (100 n) is hit.
  DualSolution solve(const Eigen::MatrixXd& B, const Eigen::VectorXd& U,
                     const std::vector<int>& equalities, double bound);

  bool record_trace = false;

 private:
  bool factor_append(int index);
  void factor_remove(std::size_t position);
  void solve_working(const Eigen::VectorXd& rhs, Eigen::VectorXd& out) const;
  void refresh_dual_gradient();
  double objective() const;

  Tolerances tol_;
  const Eigen::MatrixXd* B_ = nullptr;
  const Eigen::VectorXd* U_ = nullptr;
  std::vector<int> working_;
  std::vector<char> in_working_;
  std::vector<char> is_equality_;
  Eigen::MatrixXd L_;
  Eigen::VectorXd lambda_;
  Eigen::VectorXd gradient_;
  Eigen::VectorXd rhs_;
  Eigen::VectorXd target_;
  Eigen::VectorXd column_;
  double pivot_floor_ = 0.0;
};

/// Validates `problem` (square symmetric B with nonnegative diagonal,
/// matching U, equality indices in range) and solves it. Invalid input
/// throws std::invalid_argument.
DualSolution solve_dual(const DualProblem& problem, Tolerances tol = {});

/// KKT recovery of the primal minimizer: y = x - A^T lambda.
Eigen::VectorXd primal_from_dual(const Eigen::VectorXd& x, const Eigen::MatrixXd& A,
                                 const Eigen::VectorXd& lambda);

/// Lower bound U_i^2 / (2 B_ii) on the primal optimum from the single
/// constraint i; zero when lambda_i >= 0 is binding and U_i <= 0.
/// Throws std::domain_error when B_ii is (numerically) zero.
double single_constraint_bound(const DualProblem& problem, int i);

}  // namespace dualalpha
