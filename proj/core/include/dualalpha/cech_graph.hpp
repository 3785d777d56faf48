#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "dualalpha/complex.hpp"

namespace dualalpha {

using PointMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Sites of a power diagram: coordinates (one row per point), powers p and
/// the cutoff a1, all in squared-length units.
struct WeightedPoints {
  PointMatrix coords;
  Eigen::VectorXd power;
  double a1 = 0.0;

  std::size_t size() const { return static_cast<std::size_t>(coords.rows()); }
  std::size_t ambient_dim() const { return static_cast<std::size_t>(coords.cols()); }
  auto point(std::size_t i) const { return coords.row(static_cast<Eigen::Index>(i)); }

  /// pi_i(y) = |y - x_i|^2 - p(x_i)
  double power_distance(std::size_t i, const Eigen::VectorXd& y) const;

  /// Unweighted sites with a1 = a.
  static WeightedPoints unweighted(PointMatrix coords, double a);

  /// Throws std::invalid_argument on empty input, non-finite values or a
  /// power vector of the wrong length.
  void validate() const;
};

/// One-skeleton of the weighted Cech complex at level a1.
class CechGraph {
 public:
  CechGraph() = default;
  CechGraph(std::vector<char> active, std::vector<std::vector<Vertex>> adjacency);

  std::size_t vertex_count() const { return active_.size(); }
  bool is_active(Vertex v) const { return v < active_.size() && active_[v]; }
  std::vector<Vertex> active_vertices() const;

  /// Sorted neighbour list; throws std::invalid_argument for an inactive vertex.
  std::span<const Vertex> neighbors(Vertex v) const;

  /// Edges (i, j) with i < j in lexicographic order.
  std::vector<Simplex> edges() const;
  std::size_t edge_count() const;
  double average_degree() const;

 private:
  std::vector<char> active_;
  std::vector<std::vector<Vertex>> adjacency_;
};

/// A vertex is active iff a1 + p(x) >= 0; an edge joins active x, y iff
/// their closed balls of radius sqrt(a1 + p) meet.
CechGraph build_cech_graph(const WeightedPoints& points);

/// One line `i j` per edge, sorted.
void write_edge_list(const CechGraph& graph, std::ostream& out);

}  // namespace dualalpha
