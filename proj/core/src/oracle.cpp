#include "dualalpha/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dualalpha {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Orthonormal basis of the active constraint rows, A_T = R Q with R lower
// triangular, and the affine set {A_T y = V_T} written as Q y = b.
class ActiveBasis {
 public:
  explicit ActiveBasis(Eigen::Index m)
      : Q_(m, m), R_(m, m), b_(m), coeff_(m), residual_(m), g_(m), lambda_(m) {}

  Eigen::Index size() const { return size_; }
  Eigen::Index capacity() const { return Q_.rows(); }
  int row_index(Eigen::Index j) const { return rows_[static_cast<std::size_t>(j)]; }

  enum class Push { Added, Dependent, Inconsistent };

  Push push(const Eigen::Ref<const Eigen::RowVectorXd>& a, double v, int index, double tol) {
    const Eigen::Index r = size_;
    const double norm = a.norm();
    // Two passes of Gram-Schmidt.
    residual_ = a.transpose();
    coeff_.head(r).setZero();
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index l = 0; l < r; ++l) {
        const double c = Q_.row(l).dot(residual_);
        coeff_[l] += c;
        residual_ -= c * Q_.row(l).transpose();
      }
    }
    const double rn = residual_.norm();
    if (r == capacity() || rn <= 1e-9 * std::max(norm, 1e-300)) {
      const double implied = coeff_.head(r).dot(b_.head(r));
      return std::abs(implied - v) <= tol * (1.0 + std::abs(v)) ? Push::Dependent
                                                                : Push::Inconsistent;
    }
    Q_.row(r) = residual_.transpose() / rn;
    R_.row(r).head(r) = coeff_.head(r).transpose();
    R_(r, r) = rn;
    b_[r] = (v - coeff_.head(r).dot(b_.head(r))) / rn;
    rows_.push_back(index);
    ++size_;
    return Push::Added;
  }

  void pop() {
    --size_;
    rows_.pop_back();
  }

  // Projection of x onto the affine set; multipliers() then satisfy
  // x - y = A_T^T lambda.
  void project(const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    const Eigen::Index r = size_;
    y = x;
    for (Eigen::Index j = 0; j < r; ++j) {
      g_[j] = Q_.row(j).dot(x) - b_[j];
      y -= g_[j] * Q_.row(j).transpose();
    }
    for (Eigen::Index j = r - 1; j >= 0; --j) {
      double s = g_[j];
      for (Eigen::Index l = j + 1; l < r; ++l) s -= R_(l, j) * lambda_[l];
      lambda_[j] = s / R_(j, j);
    }
  }
  auto multipliers() const { return lambda_.head(size_); }

 private:
  RowMatrix Q_;
  Eigen::MatrixXd R_;
  Eigen::VectorXd b_;
  Eigen::VectorXd coeff_;
  Eigen::VectorXd residual_;
  Eigen::VectorXd g_;
  Eigen::VectorXd lambda_;
  std::vector<int> rows_;
  Eigen::Index size_ = 0;
};

PrimalSolution enumerate(const Eigen::VectorXd& x, const RowMatrix& A,
                         const Eigen::VectorXd& V, const std::vector<int>& equalities,
                         double tol, double bound = std::numeric_limits<double>::infinity()) {
  const auto n = A.rows();
  const auto m = A.cols();
  PrimalSolution best;
  ActiveBasis basis(m);

  std::vector<char> is_equality(static_cast<std::size_t>(n), 0);
  for (int j : equalities) {
    is_equality[static_cast<std::size_t>(j)] = 1;
    if (basis.push(A.row(j), V[j], j, tol) == ActiveBasis::Push::Inconsistent) return best;
  }
  const Eigen::Index fixed = basis.size();
  std::vector<int> inequalities;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!is_equality[i]) inequalities.push_back(static_cast<int>(i));
  }

  Eigen::VectorXd y(m);
  // Projections onto smaller affine sets are closer to x, so a node whose
  // value exceeds `cutoff` has no descendant below `bound`.
  const double cutoff = bound + 1e-9 * (1.0 + std::abs(bound));
  enum class Node { Kkt, Open, Closed };
  auto evaluate = [&]() {
    basis.project(x, y);
    const double c = 0.5 * (y - x).squaredNorm();
    if (c > cutoff) return Node::Closed;
    for (int i : inequalities) {
      if (A.row(i).dot(y) > V[i] + tol * (1.0 + std::abs(V[i]))) return Node::Open;
    }
    if (c < best.cstar) {
      best.feasible = true;
      best.cstar = c;
      best.y = y;
    }
    const auto lambda = basis.multipliers();
    const double lambda_tol =
        tol * (1.0 + (lambda.size() > 0 ? lambda.cwiseAbs().maxCoeff() : 0.0));
    for (Eigen::Index j = fixed; j < basis.size(); ++j) {
      if (lambda[j] < -lambda_tol) return Node::Open;
    }
    best.cstar = c;
    best.y = y;
    return Node::Kkt;
  };

  // Preorder walk over index-increasing extensions that keep the rows
  // linearly independent.
  auto walk = [&](auto&& self, std::size_t start) -> bool {
    const Node node = evaluate();
    if (node == Node::Kkt) return true;
    if (node == Node::Closed || basis.size() == basis.capacity()) return false;
    for (std::size_t k = start; k < inequalities.size(); ++k) {
      const int i = inequalities[k];
      if (basis.push(A.row(i), V[i], i, tol) != ActiveBasis::Push::Added) continue;
      const bool done = self(self, k + 1);
      basis.pop();
      if (done) return true;
    }
    return false;
  };
  walk(walk, 0);
  return best;
}

// Rows x_i - x and offsets V_i for the power cell of `base` against every
// other site; `others[i]` is the site behind row i.
struct CellConstraints {
  std::vector<Vertex> others;
  RowMatrix A;
  Eigen::VectorXd V;
};

CellConstraints cell_constraints(const WeightedPoints& points, Vertex base) {
  CellConstraints c;
  const auto n = static_cast<Eigen::Index>(points.size());
  const auto m = static_cast<Eigen::Index>(points.ambient_dim());
  c.A.resize(n - 1, m);
  c.V.resize(n - 1);
  const double base_sq = points.point(base).squaredNorm();
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i == base) continue;
    c.others.push_back(static_cast<Vertex>(i));
    c.A.row(r) = points.point(i) - points.point(base);
    c.V[r] = 0.5 * (points.point(i).squaredNorm() - base_sq - points.power[i] +
                    points.power[base]);
    ++r;
  }
  return c;
}

}  // namespace

PrimalSolution primal_enumerate(const PrimalProblem& problem, double feasibility_tol) {
  const auto n = problem.A.rows();
  if (static_cast<std::size_t>(n) > kMaxEnumerationConstraints) {
    throw std::invalid_argument("primal_enumerate: " + std::to_string(n) +
                                " constraints exceed the enumeration cap of " +
                                std::to_string(kMaxEnumerationConstraints));
  }
  if (problem.V.size() != n || problem.A.cols() != problem.x.size()) {
    throw std::invalid_argument("primal_enumerate: dimension mismatch");
  }
  for (int j : problem.equalities) {
    if (j < 0 || j >= n) throw std::invalid_argument("primal_enumerate: bad equality index");
  }
  const RowMatrix A = problem.A;
  return enumerate(problem.x, A, problem.V, problem.equalities, feasibility_tol);
}

AlphaComplex brute_alpha(const WeightedPoints& points, int d, const OracleOptions& options) {
  points.validate();
  const std::size_t N = points.size();
  if (N > kMaxOraclePoints) {
    throw std::invalid_argument("brute_alpha: " + std::to_string(N) +
                                " points exceed the oracle cap of " +
                                std::to_string(kMaxOraclePoints));
  }
  if (d < 0) throw std::invalid_argument("brute_alpha: d must be >= 0");

  // Per base vertex: every subset containing it as smallest vertex.
  std::vector<std::vector<std::pair<Simplex, std::optional<SimplexResult>>>> per_base(N);
  auto process = [&](Vertex base) {
    const CellConstraints cell = cell_constraints(points, base);
    const Eigen::VectorXd x = points.point(base).transpose();
    const double p = points.power[base];
    const double c1 = 0.5 * (points.a1 + p);
    auto& out = per_base[base];

    std::vector<Vertex> chosen{base};
    auto visit = [&](auto&& self) -> void {
      std::vector<int> J;
      for (std::size_t i = 1; i < chosen.size(); ++i) J.push_back(static_cast<int>(chosen[i]) - 1);
      // Rows skip `base`, so sites above it shift down by one.
      const double bound = c1 + options.tol.bound_slack(c1);
      PrimalSolution sol = enumerate(x, cell.A, cell.V, J, 1e-10, bound);
      std::optional<SimplexResult> result;
      if (sol.feasible && sol.cstar <= bound) {
        result = SimplexResult{2.0 * sol.cstar - p, sol.y};
      }
      out.emplace_back(Simplex(chosen), std::move(result));
      if (static_cast<int>(chosen.size()) > d) return;
      for (Vertex v = chosen.back() + 1; v < N; ++v) {
        chosen.push_back(v);
        self(self);
        chosen.pop_back();
      }
    };
    visit(visit);
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, N));
  if (threads == 1) {
    for (Vertex v = 0; v < N; ++v) process(v);
  } else {
    std::atomic<Vertex> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (Vertex v = next++; v < N; v = next++) process(v);
      });
    }
    for (auto& t : pool) t.join();
  }

  AlphaComplex out{FilteredComplex{}, WitnessMap(points.ambient_dim())};
  for (auto& list : per_base) {
    for (auto& [sigma, result] : list) {
      if (!result) continue;
      out.witness.set(sigma, std::move(result->witness));
      out.complex.insert(std::move(sigma), result->weight);
    }
  }
  out.complex.sort_filtration_order();
  return out;
}

std::string ComparisonReport::summary() const {
  std::ostringstream os;
  if (identical()) {
    os << "OK: complexes identical";
  } else {
    os << "MISMATCH: " << only_in_first << " only in first, " << only_in_second
       << " only in second, " << weight_mismatches << " weight and " << witness_mismatches
       << " witness mismatches";
  }
  os.precision(3);
  os << " (max weight delta " << max_weight_delta << ", max witness delta "
     << max_witness_delta << ")";
  for (const auto& d : discrepancies) os << "\n  " << d;
  return os.str();
}

ComparisonReport compare(const AlphaComplex& first, const AlphaComplex& second,
                         ComparisonTolerances tol) {
  ComparisonReport report;
  auto note = [&](std::string message) {
    if (report.discrepancies.size() < 10) report.discrepancies.push_back(std::move(message));
  };
  const int top = std::max(first.complex.dimension(), second.complex.dimension());
  for (int k = 0; k <= top; ++k) {
    auto s = first.complex.simplices(k);
    auto w = first.complex.weights(k);
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto other = second.complex.weight(s[i]);
      if (!other) {
        ++report.only_in_first;
        note("simplex " + s[i].to_string() + " missing from second");
        continue;
      }
      const double dw = std::abs(w[i] - *other);
      report.max_weight_delta = std::max(report.max_weight_delta, dw);
      if (dw > tol.weight_rel * (1.0 + std::abs(w[i]))) {
        ++report.weight_mismatches;
        std::ostringstream os;
        os.precision(17);
        os << "simplex " << s[i].to_string() << " weight " << w[i] << " vs " << *other;
        note(os.str());
      }
      const auto* ya = first.witness.find(s[i]);
      const auto* yb = second.witness.find(s[i]);
      if (ya && yb && ya->size() == yb->size()) {
        const double dy = (*ya - *yb).norm();
        report.max_witness_delta = std::max(report.max_witness_delta, dy);
        if (dy > tol.witness) {
          ++report.witness_mismatches;
          std::ostringstream os;
          os.precision(3);
          os << "simplex " << s[i].to_string() << " witnesses differ by " << dy;
          note(os.str());
        }
      } else if (static_cast<bool>(ya) != static_cast<bool>(yb)) {
        ++report.witness_mismatches;
        note("simplex " + s[i].to_string() + " has a witness on one side only");
      }
    }
    for (const Simplex& t : second.complex.simplices(k)) {
      if (!first.complex.contains(t)) {
        ++report.only_in_second;
        note("simplex " + t.to_string() + " missing from first");
      }
    }
  }
  return report;
}

}  // namespace dualalpha
