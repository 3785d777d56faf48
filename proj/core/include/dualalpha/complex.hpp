#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "dualalpha/sparse_fp.hpp"

namespace dualalpha {

using Vertex = std::uint32_t;

/// An abstract simplex: a strictly increasing tuple of vertex indices.
class Simplex {
 public:
  Simplex() = default;
  /// Throws std::invalid_argument unless `vertices` is nonempty and strictly increasing.
  explicit Simplex(std::vector<Vertex> vertices);
  Simplex(std::initializer_list<Vertex> vertices);

  /// Sorts and validates; duplicates are rejected.
  static Simplex from_unsorted(std::vector<Vertex> vertices);

  int dimension() const { return static_cast<int>(vertices_.size()) - 1; }
  std::size_t size() const { return vertices_.size(); }
  Vertex operator[](std::size_t i) const { return vertices_[i]; }
  Vertex front() const { return vertices_.front(); }
  Vertex back() const { return vertices_.back(); }
  std::span<const Vertex> vertices() const { return vertices_; }

  /// The facet obtained by deleting the vertex at position `i`.
  Simplex facet(std::size_t i) const;
  /// The simplex with `v` added; `v` must be larger than every vertex.
  Simplex extended(Vertex v) const;
  bool contains(Vertex v) const;
  /// True when every vertex of `this` is a vertex of `other`.
  bool is_face_of(const Simplex& other) const;

  std::string to_string() const;

  friend bool operator==(const Simplex&, const Simplex&) = default;
  friend auto operator<=>(const Simplex& a, const Simplex& b) {
    return a.vertices_ <=> b.vertices_;
  }

 private:
  std::vector<Vertex> vertices_;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

/// A chain of simplices, each a proper face of the next.
struct Flag {
  std::vector<Simplex> chain;
};

/// Simplices grouped by dimension, each with a real weight in power units.
///
/// Insertion does not enforce face closure; `validate` reports violations.
/// Reads are safe from several threads; insertion is single-writer.
class FilteredComplex {
 public:
  /// Highest dimension holding at least one simplex, or -1 when empty.
  int dimension() const;
  bool empty() const { return dimension() < 0; }
  std::size_t size(int k) const;
  std::size_t total_size() const;

  std::span<const Simplex> simplices(int k) const;
  std::span<const double> weights(int k) const;

  bool contains(const Simplex& s) const { return index_of(s).has_value(); }
  std::optional<std::size_t> index_of(const Simplex& s) const;
  std::optional<double> weight(const Simplex& s) const;

  /// Throws std::invalid_argument if `s` is already present.
  void insert(Simplex s, double weight);

  /// Orders each dimension by (weight, lexicographic vertices).
  void sort_filtration_order();
  /// Orders each dimension lexicographically.
  void sort_lexicographic();

  /// Face-closure and weight-monotonicity violations, one message each.
  std::vector<std::string> validate(double slack = 1e-9) const;

 private:
  struct Layer {
    std::vector<Simplex> simplices;
    std::vector<double> weights;
    std::unordered_map<Simplex, std::size_t, SimplexHash> index;
  };
  void reindex(Layer& layer);

  std::vector<Layer> layers_;
};

/// Simplex -> point of R^m.
class WitnessMap {
 public:
  WitnessMap() = default;
  explicit WitnessMap(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t size() const { return points_.size(); }

  void set(const Simplex& s, Eigen::VectorXd point);
  const Eigen::VectorXd* find(const Simplex& s) const;
  /// Throws std::out_of_range naming the simplex if absent.
  const Eigen::VectorXd& at(const Simplex& s) const;

 private:
  std::size_t ambient_dim_ = 0;
  std::unordered_map<Simplex, Eigen::VectorXd, SimplexHash> points_;
};

/// Simplices of dimension at most k; k = -1 yields the empty complex.
FilteredComplex skeleton(const FilteredComplex& complex, int k);

/// The k-simplices of the largest complex sharing the (k-1)-skeleton of
/// `complex`, in lexicographic order. Requires k >= 2.
std::vector<Simplex> lazy_candidates(const FilteredComplex& complex, int k);

/// Same, with the cases k = 0 and k = 1 included. The complete complex at
/// k = 0 needs the size of the vertex set.
std::vector<Simplex> lazy_candidates(const FilteredComplex& complex, int k,
                                     std::size_t vertex_count);

/// Simplices with weight <= a.
FilteredComplex sublevel(const FilteredComplex& complex, double a);

/// Boundary map from k-chains to (k-1)-chains over F_p. Rows and columns
/// follow the lexicographic order of the (k-1)- and k-simplices.
SparseMatrixFp boundary_matrix(const FilteredComplex& complex, int k, std::uint32_t prime);

/// Barycentric subdivision with each vertex (a simplex of the input)
/// placed at its witness.
struct BarycentricEmbedding {
  std::vector<Simplex> vertices;
  Eigen::MatrixXd coordinates;  // one row per vertex
  /// flags[k] lists the k-simplices of the subdivision as index chains into
  /// `vertices`, smallest simplex first.
  std::vector<std::vector<std::vector<std::size_t>>> flags;

  Flag flag(std::size_t k, std::size_t i) const;
};

BarycentricEmbedding barycentric_embed(const FilteredComplex& complex, const WitnessMap& witness,
                                       int max_flag_dim);

long long euler_characteristic(const FilteredComplex& complex);

}  // namespace dualalpha
