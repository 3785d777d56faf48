#include "dualalpha/alpha_builder.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace dualalpha {

VertexCoefficients vertex_coefficients(const WeightedPoints& points,
                                       std::span<const Vertex> neighbor_ids, Vertex x) {
  const auto n = static_cast<Eigen::Index>(neighbor_ids.size());
  const auto m = static_cast<Eigen::Index>(points.ambient_dim());
  VertexCoefficients c;
  c.base = x;
  c.neighbor_ids.assign(neighbor_ids.begin(), neighbor_ids.end());
  c.base_point = points.point(x).transpose();
  c.base_power = points.power[x];
  c.c1 = 0.5 * (points.a1 + c.base_power);
  c.offsets.resize(n, m);
  c.U.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vertex xi = neighbor_ids[static_cast<std::size_t>(i)];
    c.offsets.row(i) = points.point(xi) - points.point(x);
    const double d2 = c.offsets.row(i).squaredNorm();
    if (d2 == 0.0) {
      throw std::invalid_argument("points " + std::to_string(x) + " and " + std::to_string(xi) +
                                  " coincide");
    }
    c.U[i] = 0.5 * (points.power[xi] - c.base_power - d2);
  }
  c.B.noalias() = c.offsets * c.offsets.transpose();
  return c;
}

VertexCoefficients vertex_coefficients(const WeightedPoints& points, const CechGraph& graph,
                                       Vertex x) {
  return vertex_coefficients(points, graph.neighbors(x), x);
}

std::optional<SimplexResult> test_simplex(const VertexCoefficients& coeffs, const Simplex& sigma,
                                          DualSolver& solver) {
  if (sigma.front() != coeffs.base) {
    throw std::invalid_argument("test_simplex: " + sigma.to_string() + " is not based at " +
                                std::to_string(coeffs.base));
  }
  std::vector<int> equalities;
  equalities.reserve(sigma.size() - 1);
  const auto& ids = coeffs.neighbor_ids;
  for (std::size_t i = 1; i < sigma.size(); ++i) {
    auto it = std::lower_bound(ids.begin(), ids.end(), sigma[i]);
    if (it == ids.end() || *it != sigma[i]) return std::nullopt;
    equalities.push_back(static_cast<int>(it - ids.begin()));
  }
  DualSolution sol = solver.solve(coeffs.B, coeffs.U, equalities, coeffs.c1);
  if (!sol.optimal()) return std::nullopt;
  SimplexResult r;
  r.weight = 2.0 * sol.cstar - coeffs.base_power;
  r.witness = coeffs.base_point;
  if (sol.lambda.size() > 0) r.witness.noalias() -= coeffs.offsets.transpose() * sol.lambda;
  return r;
}

std::optional<SimplexResult> test_simplex(const VertexCoefficients& coeffs, const Simplex& sigma,
                                          Tolerances tol) {
  DualSolver solver(tol);
  return test_simplex(coeffs, sigma, solver);
}

namespace {

std::vector<Vertex> all_others(std::size_t n, Vertex x) {
  std::vector<Vertex> out;
  out.reserve(n - 1);
  for (std::size_t v = 0; v < n; ++v) {
    if (v != x) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

// Runs `task(worker, i)` for i in [0, count) on `threads` workers.
template <class Task>
void parallel_for(std::size_t count, unsigned threads, Task&& task) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(0u, i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < count; i = next++) task(w, i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

AlphaComplex build_alpha(const WeightedPoints& points, const BuildParams& params) {
  if (params.max_dim < 0) throw std::invalid_argument("build_alpha: max_dim must be >= 0");
  const CechGraph graph = build_cech_graph(points);
  AlphaComplex out{FilteredComplex{}, WitnessMap(points.ambient_dim())};
  FilteredComplex& X = out.complex;

  const unsigned threads = std::max(1u, params.threads);
  std::vector<DualSolver> solvers(threads, DualSolver(params.tol));

  for (int k = 0; k <= params.max_dim; ++k) {
    std::vector<Simplex> candidates;
    if (k == 0) {
      for (Vertex v : graph.active_vertices()) candidates.push_back(Simplex{v});
    } else if (k == 1) {
      for (Simplex& e : graph.edges()) {
        if (X.contains(Simplex{e[0]}) && X.contains(Simplex{e[1]})) {
          candidates.push_back(std::move(e));
        }
      }
    } else {
      candidates = lazy_candidates(X, k);
    }
    if (candidates.empty()) break;

    // Candidates are lexicographic, so each base vertex owns a contiguous run.
    std::vector<std::size_t> runs{0};
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      if (candidates[i].front() != candidates[i - 1].front()) runs.push_back(i);
    }
    runs.push_back(candidates.size());

    std::vector<std::optional<SimplexResult>> results(candidates.size());
    parallel_for(runs.size() - 1, threads, [&](unsigned worker, std::size_t r) {
      const Vertex x = candidates[runs[r]].front();
      const VertexCoefficients coeffs =
          params.restrict_to_neighbors
              ? vertex_coefficients(points, graph, x)
              : vertex_coefficients(points, all_others(points.size(), x), x);
      for (std::size_t i = runs[r]; i < runs[r + 1]; ++i) {
        results[i] = test_simplex(coeffs, candidates[i], solvers[worker]);
      }
    });

    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (!results[i]) continue;
      out.witness.set(candidates[i], std::move(results[i]->witness));
      X.insert(std::move(candidates[i]), results[i]->weight);
    }
  }
  X.sort_filtration_order();
  return out;
}

BettiVector betti_pipeline(const WeightedPoints& points, const BuildParams& params,
                           std::uint32_t prime) {
  if (!is_prime(prime)) {
    throw std::invalid_argument("betti_pipeline: modulus " + std::to_string(prime) +
                                " is not prime");
  }
  const AlphaComplex alpha = build_alpha(points, params);
  return betti(alpha.complex, prime, std::max(params.max_dim - 1, 0));
}

}  // namespace dualalpha
