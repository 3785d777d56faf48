#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "dualalpha/cech_graph.hpp"
#include "dualalpha/complex.hpp"
#include "dualalpha/dual_qp.hpp"
#include "dualalpha/homology.hpp"
#include "dualalpha/tolerances.hpp"

namespace dualalpha {

/// Dual program data for the power cell of `base` against its neighbours.
/// B_ij = (x_i - x).(x_j - x), U_i = (p_i - p_x - |x_i - x|^2) / 2,
/// c1 = (a1 + p_x) / 2. Shared by every candidate simplex based at x.
struct VertexCoefficients {
  Vertex base = 0;
  std::vector<Vertex> neighbor_ids;
  Eigen::MatrixXd B;
  Eigen::VectorXd U;
  double c1 = 0.0;
  double base_power = 0.0;
  Eigen::VectorXd base_point;
  Eigen::MatrixXd offsets;  // row i is x_i - x
};

struct BuildParams {
  int max_dim = 2;
  Tolerances tol{};
  unsigned threads = 1;
  /// Use only Cech-graph neighbours as constraints. When false, every
  /// other site contributes a constraint.
  bool restrict_to_neighbors = true;
};

struct SimplexResult {
  double weight;
  Eigen::VectorXd witness;
};

struct AlphaComplex {
  FilteredComplex complex;
  WitnessMap witness;
};

/// Throws std::invalid_argument if a neighbour coincides with x.
VertexCoefficients vertex_coefficients(const WeightedPoints& points,
                                       std::span<const Vertex> neighbor_ids, Vertex x);
/// Requires x active in `graph`.
VertexCoefficients vertex_coefficients(const WeightedPoints& points, const CechGraph& graph,
                                       Vertex x);

/// Weight and witness of `sigma` if it belongs to the alpha complex at
/// level a1, nullopt otherwise. sigma.front() must equal coeffs.base; a
/// vertex outside the neighbour list rejects without a solve.
std::optional<SimplexResult> test_simplex(const VertexCoefficients& coeffs, const Simplex& sigma,
                                          DualSolver& solver);
std::optional<SimplexResult> test_simplex(const VertexCoefficients& coeffs, const Simplex& sigma,
                                          Tolerances tol = {});

/// The max_dim-skeleton of the weighted alpha complex with weights and
/// witnesses. Each dimension of the output is ordered by (weight,
/// vertices); the result does not depend on `threads`.
AlphaComplex build_alpha(const WeightedPoints& points, const BuildParams& params);

/// Betti numbers 0..max(max_dim - 1, 0) of the alpha complex over F_prime.
BettiVector betti_pipeline(const WeightedPoints& points, const BuildParams& params,
                           std::uint32_t prime);

}  // namespace dualalpha
