#include "dualalpha/cech_graph.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace dualalpha {

double WeightedPoints::power_distance(std::size_t i, const Eigen::VectorXd& y) const {
  return (y.transpose() - point(i)).squaredNorm() - power[static_cast<Eigen::Index>(i)];
}

WeightedPoints WeightedPoints::unweighted(PointMatrix coords, double a) {
  WeightedPoints p;
  p.power = Eigen::VectorXd::Zero(coords.rows());
  p.coords = std::move(coords);
  p.a1 = a;
  return p;
}

void WeightedPoints::validate() const {
  if (coords.rows() < 1 || coords.cols() < 1) {
    throw std::invalid_argument("point set must contain at least one point of dimension >= 1");
  }
  if (power.size() != coords.rows()) {
    throw std::invalid_argument("power vector has " + std::to_string(power.size()) +
                                " entries for " + std::to_string(coords.rows()) + " points");
  }
  if (!coords.allFinite() || !power.allFinite() || !std::isfinite(a1)) {
    throw std::invalid_argument("point coordinates, powers and a1 must be finite");
  }
}

CechGraph::CechGraph(std::vector<char> active, std::vector<std::vector<Vertex>> adjacency)
    : active_(std::move(active)), adjacency_(std::move(adjacency)) {}

std::vector<Vertex> CechGraph::active_vertices() const {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < active_.size(); ++v) {
    if (active_[v]) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::span<const Vertex> CechGraph::neighbors(Vertex v) const {
  if (!is_active(v)) {
    throw std::invalid_argument("vertex " + std::to_string(v) + " is not active in the Cech graph");
  }
  return adjacency_[v];
}

std::vector<Simplex> CechGraph::edges() const {
  std::vector<Simplex> out;
  for (std::size_t v = 0; v < adjacency_.size(); ++v) {
    for (Vertex u : adjacency_[v]) {
      if (u > v) out.push_back(Simplex{static_cast<Vertex>(v), u});
    }
  }
  return out;
}

std::size_t CechGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& list : adjacency_) twice += list.size();
  return twice / 2;
}

double CechGraph::average_degree() const {
  std::size_t n = 0;
  for (char a : active_) n += a ? 1 : 0;
  return n == 0 ? 0.0 : 2.0 * static_cast<double>(edge_count()) / static_cast<double>(n);
}

CechGraph build_cech_graph(const WeightedPoints& points) {
  points.validate();
  const std::size_t n = points.size();
  std::vector<char> active(n, 0);
  std::vector<double> radius(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double r2 = points.a1 + points.power[static_cast<Eigen::Index>(i)];
    if (r2 >= 0.0) {
      active[i] = 1;
      radius[i] = std::sqrt(r2);
    }
  }
  std::vector<std::vector<Vertex>> adjacency(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!active[j]) continue;
      const double dist = (points.point(i) - points.point(j)).norm();
      if (dist <= radius[i] + radius[j]) {
        adjacency[i].push_back(static_cast<Vertex>(j));
        adjacency[j].push_back(static_cast<Vertex>(i));
      }
    }
  }
  // Lists are already sorted: j increases in the inner loop and every i < j
  // is appended before any later one.
  return CechGraph(std::move(active), std::move(adjacency));
}

void write_edge_list(const CechGraph& graph, std::ostream& out) {
  for (const Simplex& e : graph.edges()) out << e[0] << ' ' << e[1] << '\n';
}

}  // namespace dualalpha
