#include "dualalpha/dual_qp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dualalpha {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool DualSolver::factor_append(int index) {
  const auto& B = *B_;
  const auto w = static_cast<Eigen::Index>(working_.size());
  // Forward substitution L l = B(W, index).
  for (Eigen::Index r = 0; r < w; ++r) {
    double s = B(working_[r], index);
    for (Eigen::Index q = 0; q < r; ++q) s -= L_(r, q) * L_(w, q);
    L_(w, r) = s / L_(r, r);
  }
  double d = B(index, index);
  for (Eigen::Index q = 0; q < w; ++q) d -= L_(w, q) * L_(w, q);
  if (d <= pivot_floor_) return false;
  L_(w, w) = std::sqrt(d);
  working_.push_back(index);
  in_working_[index] = 1;
  return true;
}

void DualSolver::factor_remove(std::size_t position) {
  const auto& B = *B_;
  in_working_[working_[position]] = 0;
  working_.erase(working_.begin() + static_cast<std::ptrdiff_t>(position));
  const auto w = static_cast<Eigen::Index>(working_.size());
  // Rows above `position` are unaffected; rebuild the trailing rows.
  for (auto r = static_cast<Eigen::Index>(position); r < w; ++r) {
    for (Eigen::Index c = 0; c < r; ++c) {
      double s = B(working_[r], working_[c]);
      for (Eigen::Index q = 0; q < c; ++q) s -= L_(r, q) * L_(c, q);
      L_(r, c) = s / L_(c, c);
    }
    double d = B(working_[r], working_[r]);
    for (Eigen::Index q = 0; q < r; ++q) d -= L_(r, q) * L_(r, q);
    L_(r, r) = std::sqrt(std::max(d, pivot_floor_));
  }
}

void DualSolver::solve_working(const Eigen::VectorXd& rhs, Eigen::VectorXd& out) const {
  const auto w = static_cast<Eigen::Index>(working_.size());
  out.resize(w);
  for (Eigen::Index r = 0; r < w; ++r) {
    double s = rhs[r];
    for (Eigen::Index q = 0; q < r; ++q) s -= L_(r, q) * out[q];
    out[r] = s / L_(r, r);
  }
  for (Eigen::Index r = w - 1; r >= 0; --r) {
    double s = out[r];
    for (Eigen::Index q = r + 1; q < w; ++q) s -= L_(q, r) * out[q];
    out[r] = s / L_(r, r);
  }
}

void DualSolver::refresh_dual_gradient() {
  // gradient = U - B lambda, with lambda supported on nonzero entries only.
  gradient_ = *U_;
  for (Eigen::Index j = 0; j < lambda_.size(); ++j) {
    if (lambda_[j] != 0.0) gradient_.noalias() -= B_->col(j) * lambda_[j];
  }
}

double DualSolver::objective() const {
  // -1/2 l^T B l + U^T l = 1/2 sum l_i (U_i + gradient_i)
  double f = 0.0;
  for (Eigen::Index j = 0; j < lambda_.size(); ++j) {
    if (lambda_[j] != 0.0) f += lambda_[j] * ((*U_)[j] + gradient_[j]);
  }
  return 0.5 * f;
}

DualSolution DualSolver::solve(const Eigen::MatrixXd& B, const Eigen::VectorXd& U,
                               const std::vector<int>& equalities, double bound) {
  const auto n = static_cast<Eigen::Index>(U.size());
  B_ = &B;
  U_ = &U;
  working_.clear();
  in_working_.assign(static_cast<std::size_t>(n), 0);
  is_equality_.assign(static_cast<std::size_t>(n), 0);
  for (int j : equalities) is_equality_[static_cast<std::size_t>(j)] = 1;
  if (L_.rows() < n + 1) L_.resize(n + 1, n + 1);
  lambda_.setZero(n);
  gradient_ = U;

  double max_diag = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) max_diag = std::max(max_diag, B(i, i));
  pivot_floor_ = tol_.pivot_rel * std::max(max_diag, std::numeric_limits<double>::min());
  const double violation = tol_.feasibility_rel * (1.0 + max_diag);
  const double limit = std::isfinite(bound) ? bound + tol_.bound_slack(bound) : kInf;

  DualSolution result;
  double f = 0.0;
  auto record = [&] {
    f = objective();
    if (record_trace) result.trace.push_back(f);
    return f > limit;
  };
  auto exceeded = [&] {
    result.status = DualStatus::BoundExceeded;
    result.cstar = kInf;
    result.lambda = lambda_;
    return result;
  };
  if (record_trace) result.trace.push_back(0.0);
  if (0.0 > limit) return exceeded();

  const int cap = 100 * std::max<int>(static_cast<int>(n), 1);
  auto tick = [&] {
    if (++result.iterations > cap) {
      throw SolverError("dual active-set solver exceeded " + std::to_string(cap) +
                        " iterations (cycling)");
    }
  };

  bool degenerate = false;
  int pending = -1;
  while (true) {
    tick();
    int enter = pending;
    pending = -1;
    if (enter < 0) {
      // Equalities first, then the most violated inequality; smallest index
      // after a zero-length step.
      double best = violation;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (in_working_[i] || !is_equality_[i]) continue;
        const double v = std::abs(gradient_[i]);
        if (v > best) {
          best = v;
          enter = static_cast<int>(i);
          if (degenerate) break;
        }
      }
      if (enter < 0) {
        best = violation;
        for (Eigen::Index i = 0; i < n; ++i) {
          if (in_working_[i] || is_equality_[i]) continue;
          if (gradient_[i] > best) {
            best = gradient_[i];
            enter = static_cast<int>(i);
            if (degenerate) break;
          }
        }
      }
      if (enter < 0) {
        result.status = DualStatus::Optimal;
        result.lambda = lambda_;
        result.cstar = f;
        return result;
      }
    }

    if (!factor_append(enter)) {
      // Dependent on the working set: move along the null direction of the
      // enlarged block, which raises the objective linearly.
      const double sign = is_equality_[enter] ? (gradient_[enter] >= 0 ? 1.0 : -1.0) : 1.0;
      const auto w = static_cast<Eigen::Index>(working_.size());
      rhs_.resize(w);
      for (Eigen::Index r = 0; r < w; ++r) rhs_[r] = B(working_[r], enter);
      solve_working(rhs_, column_);
      column_ *= -sign;
      double slope = sign * gradient_[enter];
      for (Eigen::Index r = 0; r < w; ++r) slope += gradient_[working_[r]] * column_[r];
      if (!(slope > 0.0)) {
        throw SolverError("dual active-set solver: non-ascent ray");
      }
      double step = kInf;
      Eigen::Index block = -1;
      for (Eigen::Index r = 0; r < w; ++r) {
        const int j = working_[r];
        if (is_equality_[j] || column_[r] >= 0.0) continue;
        const double t = lambda_[j] / -column_[r];
        if (t < step || (t == step && block >= 0 && j < working_[block])) {
          step = t;
          block = r;
        }
      }
      if (block < 0) return exceeded();  // unbounded dual: primal infeasible
      for (Eigen::Index r = 0; r < w; ++r) lambda_[working_[r]] += step * column_[r];
      lambda_[enter] += step * sign;
      lambda_[working_[block]] = 0.0;
      factor_remove(static_cast<std::size_t>(block));
      refresh_dual_gradient();
      if (record()) return exceeded();
      degenerate = step == 0.0;
      pending = enter;
      continue;
    }

    // Equality-restricted maximization over the working set, stepping back
    // to the first sign constraint that blocks.
    while (true) {
      const auto w = static_cast<Eigen::Index>(working_.size());
      rhs_.resize(w);
      for (Eigen::Index r = 0; r < w; ++r) rhs_[r] = U[working_[r]];
      solve_working(rhs_, target_);
      double alpha = 1.0;
      Eigen::Index block = -1;
      for (Eigen::Index r = 0; r < w; ++r) {
        const int j = working_[r];
        if (is_equality_[j] || target_[r] >= 0.0) continue;
        const double current = lambda_[j];
        const double a = current / (current - target_[r]);
        if (a < alpha || (a == alpha && block >= 0 && j < working_[block])) {
          alpha = a;
          block = r;
        }
      }
      if (block < 0) {
        for (Eigen::Index r = 0; r < w; ++r) lambda_[working_[r]] = target_[r];
        refresh_dual_gradient();
        if (record()) return exceeded();
        degenerate = false;
        break;
      }
      for (Eigen::Index r = 0; r < w; ++r) {
        const int j = working_[r];
        lambda_[j] += alpha * (target_[r] - lambda_[j]);
      }
      lambda_[working_[block]] = 0.0;
      factor_remove(static_cast<std::size_t>(block));
      refresh_dual_gradient();
      if (record()) return exceeded();
      degenerate = alpha == 0.0;
      tick();
    }
  }
}

DualSolution solve_dual(const DualProblem& problem, Tolerances tol) {
  const auto& B = problem.B;
  const auto n = problem.U.size();
  if (B.rows() != n || B.cols() != n) {
    throw std::invalid_argument("solve_dual: B must be " + std::to_string(n) + "x" +
                                std::to_string(n));
  }
  const double scale = 1.0 + (n > 0 ? B.cwiseAbs().maxCoeff() : 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (B(i, i) < 0.0) {
      throw std::invalid_argument("solve_dual: negative diagonal entry at " + std::to_string(i));
    }
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(B(i, j) - B(j, i)) > 1e-12 * scale) {
        throw std::invalid_argument("solve_dual: B is not symmetric at (" + std::to_string(i) +
                                    "," + std::to_string(j) + ")");
      }
    }
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int j : problem.equalities) {
    if (j < 0 || j >= n) {
      throw std::invalid_argument("solve_dual: equality index " + std::to_string(j) +
                                  " out of range");
    }
    if (seen[j]++) {
      throw std::invalid_argument("solve_dual: duplicate equality index " + std::to_string(j));
    }
  }
  DualSolver solver(tol);
  return solver.solve(B, problem.U, problem.equalities, problem.bound);
}

Eigen::VectorXd primal_from_dual(const Eigen::VectorXd& x, const Eigen::MatrixXd& A,
                                 const Eigen::VectorXd& lambda) {
  if (A.rows() != lambda.size() || A.cols() != x.size()) {
    throw std::invalid_argument("primal_from_dual: dimension mismatch");
  }
  return x - A.transpose() * lambda;
}

double single_constraint_bound(const DualProblem& problem, int i) {
  if (i < 0 || i >= problem.U.size()) {
    throw std::invalid_argument("single_constraint_bound: index out of range");
  }
  const double b = problem.B(i, i);
  const double u = problem.U[i];
  const double scale = problem.B.diagonal().cwiseAbs().maxCoeff();
  if (b <= 1e-14 * std::max(scale, 1.0)) {
    throw std::domain_error("single_constraint_bound: degenerate constraint " +
                            std::to_string(i) + " (B_ii = 0)");
  }
  const bool free_sign =
      std::find(problem.equalities.begin(), problem.equalities.end(), i) != problem.equalities.end();
  if (!free_sign && u <= 0.0) return 0.0;
  return u * u / (2.0 * b);
}

}  // namespace dualalpha
