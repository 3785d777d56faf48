#include "dualalpha/complex.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace dualalpha {

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) {
    throw std::invalid_argument("simplex must have at least one vertex");
  }
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    if (vertices_[i - 1] >= vertices_[i]) {
      throw std::invalid_argument("simplex vertices must be strictly increasing: " + to_string());
    }
  }
}

Simplex::Simplex(std::initializer_list<Vertex> vertices)
    : Simplex(std::vector<Vertex>(vertices)) {}

Simplex Simplex::from_unsorted(std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  return Simplex(std::move(vertices));
}

Simplex Simplex::facet(std::size_t i) const {
  if (vertices_.size() < 2) {
    throw std::invalid_argument("a vertex has no facets");
  }
  std::vector<Vertex> out;
  out.reserve(vertices_.size() - 1);
  for (std::size_t j = 0; j < vertices_.size(); ++j) {
    if (j != i) out.push_back(vertices_[j]);
  }
  Simplex s;
  s.vertices_ = std::move(out);
  return s;
}

Simplex Simplex::extended(Vertex v) const {
  if (!vertices_.empty() && v <= vertices_.back()) {
    throw std::invalid_argument("extended: vertex must exceed the largest vertex");
  }
  Simplex s = *this;
  s.vertices_.push_back(v);
  return s;
}

bool Simplex::contains(Vertex v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Simplex::is_face_of(const Simplex& other) const {
  return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(),
                       vertices_.end());
}

std::string Simplex::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (i) os << ',';
    os << vertices_[i];
  }
  os << ']';
  return os.str();
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (Vertex v : s.vertices()) {
    h ^= v;
    h *= 0x100000001b3ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------

int FilteredComplex::dimension() const {
  for (int k = static_cast<int>(layers_.size()) - 1; k >= 0; --k) {
    if (!layers_[k].simplices.empty()) return k;
  }
  return -1;
}

std::size_t FilteredComplex::size(int k) const {
  if (k < 0 || k >= static_cast<int>(layers_.size())) return 0;
  return layers_[k].simplices.size();
}

std::size_t FilteredComplex::total_size() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) n += layer.simplices.size();
  return n;
}

std::span<const Simplex> FilteredComplex::simplices(int k) const {
  if (k < 0 || k >= static_cast<int>(layers_.size())) return {};
  return layers_[k].simplices;
}

std::span<const double> FilteredComplex::weights(int k) const {
  if (k < 0 || k >= static_cast<int>(layers_.size())) return {};
  return layers_[k].weights;
}

std::optional<std::size_t> FilteredComplex::index_of(const Simplex& s) const {
  const int k = s.dimension();
  if (k < 0 || k >= static_cast<int>(layers_.size())) return std::nullopt;
  const auto& index = layers_[k].index;
  if (auto it = index.find(s); it != index.end()) return it->second;
  return std::nullopt;
}

std::optional<double> FilteredComplex::weight(const Simplex& s) const {
  if (auto i = index_of(s)) return layers_[s.dimension()].weights[*i];
  return std::nullopt;
}

void FilteredComplex::insert(Simplex s, double weight) {
  const int k = s.dimension();
  if (k < 0) throw std::invalid_argument("cannot insert an empty simplex");
  if (static_cast<int>(layers_.size()) <= k) layers_.resize(k + 1);
  Layer& layer = layers_[k];
  auto [it, inserted] = layer.index.emplace(s, layer.simplices.size());
  if (!inserted) {
    throw std::invalid_argument("simplex already present: " + s.to_string());
  }
  layer.simplices.push_back(std::move(s));
  layer.weights.push_back(weight);
}

void FilteredComplex::reindex(Layer& layer) {
  layer.index.clear();
  layer.index.reserve(layer.simplices.size());
  for (std::size_t i = 0; i < layer.simplices.size(); ++i) {
    layer.index.emplace(layer.simplices[i], i);
  }
}

namespace {

template <class Less>
void permute_layer(std::vector<Simplex>& simplices, std::vector<double>& weights, Less less) {
  std::vector<std::size_t> order(simplices.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), less);
  std::vector<Simplex> s;
  std::vector<double> w;
  s.reserve(order.size());
  w.reserve(order.size());
  for (std::size_t i : order) {
    s.push_back(std::move(simplices[i]));
    w.push_back(weights[i]);
  }
  simplices = std::move(s);
  weights = std::move(w);
}

}  // namespace

void FilteredComplex::sort_filtration_order() {
  for (auto& layer : layers_) {
    const auto& s = layer.simplices;
    const auto& w = layer.weights;
    permute_layer(layer.simplices, layer.weights, [&](std::size_t a, std::size_t b) {
      if (w[a] != w[b]) return w[a] < w[b];
      return s[a] < s[b];
    });
    reindex(layer);
  }
}

void FilteredComplex::sort_lexicographic() {
  for (auto& layer : layers_) {
    const auto& s = layer.simplices;
    permute_layer(layer.simplices, layer.weights,
                  [&](std::size_t a, std::size_t b) { return s[a] < s[b]; });
    reindex(layer);
  }
}

std::vector<std::string> FilteredComplex::validate(double slack) const {
  std::vector<std::string> problems;
  for (int k = 1; k < static_cast<int>(layers_.size()); ++k) {
    const Layer& layer = layers_[k];
    for (std::size_t i = 0; i < layer.simplices.size(); ++i) {
      const Simplex& s = layer.simplices[i];
      for (std::size_t j = 0; j < s.size(); ++j) {
        Simplex f = s.facet(j);
        auto w = weight(f);
        if (!w) {
          problems.push_back("facet " + f.to_string() + " of " + s.to_string() + " missing");
        } else if (*w > layer.weights[i] + slack) {
          std::ostringstream os;
          os.precision(17);
          os << "facet " << f.to_string() << " weight " << *w << " exceeds " << s.to_string()
             << " weight " << layer.weights[i];
          problems.push_back(os.str());
        }
      }
    }
  }
  return problems;
}

// ---------------------------------------------------------------------------

void WitnessMap::set(const Simplex& s, Eigen::VectorXd point) {
  if (static_cast<std::size_t>(point.size()) != ambient_dim_) {
    throw std::invalid_argument("witness for " + s.to_string() + " has wrong dimension");
  }
  points_.insert_or_assign(s, std::move(point));
}

const Eigen::VectorXd* WitnessMap::find(const Simplex& s) const {
  auto it = points_.find(s);
  return it == points_.end() ? nullptr : &it->second;
}

const Eigen::VectorXd& WitnessMap::at(const Simplex& s) const {
  if (const auto* p = find(s)) return *p;
  throw std::out_of_range("no witness for simplex " + s.to_string());
}

// ---------------------------------------------------------------------------

FilteredComplex skeleton(const FilteredComplex& complex, int k) {
  FilteredComplex out;
  for (int j = 0; j <= std::min(k, complex.dimension()); ++j) {
    auto s = complex.simplices(j);
    auto w = complex.weights(j);
    for (std::size_t i = 0; i < s.size(); ++i) out.insert(s[i], w[i]);
  }
  return out;
}

FilteredComplex sublevel(const FilteredComplex& complex, double a) {
  FilteredComplex out;
  for (int j = 0; j <= complex.dimension(); ++j) {
    auto s = complex.simplices(j);
    auto w = complex.weights(j);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (w[i] <= a) out.insert(s[i], w[i]);
    }
  }
  return out;
}

std::vector<Simplex> lazy_candidates(const FilteredComplex& complex, int k) {
  if (k < 2) {
    throw std::invalid_argument("lazy_candidates: k >= 2 required without a vertex count");
  }
  auto edges = complex.simplices(1);
  Vertex max_vertex = 0;
  for (const Simplex& v : complex.simplices(0)) max_vertex = std::max(max_vertex, v.front());
  for (const Simplex& e : edges) max_vertex = std::max(max_vertex, e.back());

  // Upper adjacency: for each vertex the sorted larger neighbours.
  std::vector<std::vector<Vertex>> upper(static_cast<std::size_t>(max_vertex) + 1);
  for (const Simplex& e : edges) upper[e.front()].push_back(e.back());
  for (auto& list : upper) std::sort(list.begin(), list.end());

  std::vector<Simplex> seeds(complex.simplices(k - 1).begin(), complex.simplices(k - 1).end());
  std::sort(seeds.begin(), seeds.end());

  std::vector<Simplex> out;
  std::vector<Vertex> common;
  std::vector<Vertex> scratch;
  for (const Simplex& tau : seeds) {
    // Neighbours of tau[0] above tau.back(), intersected with those of the rest.
    const auto& first = upper[tau.front()];
    common.assign(std::upper_bound(first.begin(), first.end(), tau.back()), first.end());
    for (std::size_t i = 1; i < tau.size() && !common.empty(); ++i) {
      const auto& nb = upper[tau[i]];
      scratch.clear();
      std::set_intersection(common.begin(), common.end(), nb.begin(), nb.end(),
                            std::back_inserter(scratch));
      common.swap(scratch);
    }
    for (Vertex v : common) {
      Simplex sigma = tau.extended(v);
      bool closed = true;
      // The facet omitting v is tau itself.
      for (std::size_t i = 0; i + 1 < sigma.size() && closed; ++i) {
        closed = complex.contains(sigma.facet(i));
      }
      if (closed) out.push_back(std::move(sigma));
    }
  }
  return out;
}

std::vector<Simplex> lazy_candidates(const FilteredComplex& complex, int k,
                                     std::size_t vertex_count) {
  if (k >= 2) return lazy_candidates(complex, k);
  std::vector<Simplex> out;
  if (k == 0) {
    for (std::size_t v = 0; v < vertex_count; ++v) out.push_back(Simplex{static_cast<Vertex>(v)});
  } else if (k == 1) {
    std::vector<Vertex> verts;
    for (const Simplex& s : complex.simplices(0)) verts.push_back(s.front());
    std::sort(verts.begin(), verts.end());
    for (std::size_t i = 0; i < verts.size(); ++i) {
      for (std::size_t j = i + 1; j < verts.size(); ++j) out.push_back(Simplex{verts[i], verts[j]});
    }
  }
  return out;
}

SparseMatrixFp boundary_matrix(const FilteredComplex& complex, int k, std::uint32_t prime) {
  if (!is_prime(prime)) {
    throw std::invalid_argument("boundary_matrix: modulus " + std::to_string(prime) +
                                " is not prime");
  }
  if (k < 1) throw std::invalid_argument("boundary_matrix: k >= 1 required");

  auto sorted_layer = [&](int j) {
    std::vector<Simplex> s(complex.simplices(j).begin(), complex.simplices(j).end());
    std::sort(s.begin(), s.end());
    return s;
  };
  const std::vector<Simplex> rows = sorted_layer(k - 1);
  const std::vector<Simplex> cols = sorted_layer(k);

  std::vector<SparseMatrixFp::Triplet> triplets;
  triplets.reserve(cols.size() * (k + 1));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t i = 0; i < cols[c].size(); ++i) {
      Simplex f = cols[c].facet(i);
      auto it = std::lower_bound(rows.begin(), rows.end(), f);
      if (it == rows.end() || *it != f) {
        throw std::invalid_argument("boundary_matrix: facet " + f.to_string() + " of " +
                                    cols[c].to_string() + " is not in the complex");
      }
      triplets.push_back({static_cast<std::size_t>(it - rows.begin()), c, (i % 2 == 0) ? 1 : -1});
    }
  }
  return SparseMatrixFp(rows.size(), cols.size(), prime, std::move(triplets));
}

Flag BarycentricEmbedding::flag(std::size_t k, std::size_t i) const {
  Flag f;
  for (std::size_t v : flags.at(k).at(i)) f.chain.push_back(vertices[v]);
  return f;
}

BarycentricEmbedding barycentric_embed(const FilteredComplex& complex, const WitnessMap& witness,
                                       int max_flag_dim) {
  BarycentricEmbedding out;
  std::unordered_map<Simplex, std::size_t, SimplexHash> id;
  for (int k = 0; k <= complex.dimension(); ++k) {
    for (const Simplex& s : complex.simplices(k)) {
      id.emplace(s, out.vertices.size());
      out.vertices.push_back(s);
    }
  }

  out.coordinates.resize(static_cast<Eigen::Index>(out.vertices.size()),
                         static_cast<Eigen::Index>(witness.ambient_dim()));
  for (std::size_t i = 0; i < out.vertices.size(); ++i) {
    const Eigen::VectorXd* y = witness.find(out.vertices[i]);
    if (!y) {
      throw std::invalid_argument("barycentric_embed: missing witness for simplex " +
                                  out.vertices[i].to_string());
    }
    out.coordinates.row(static_cast<Eigen::Index>(i)) = y->transpose();
  }
  if (max_flag_dim < 0) return out;

  // Proper cofaces of every simplex, in vertex-list order.
  std::vector<std::vector<std::size_t>> cofaces(out.vertices.size());
  for (std::size_t t = 0; t < out.vertices.size(); ++t) {
    const Simplex& tau = out.vertices[t];
    const std::size_t n = tau.size();
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
      std::vector<Vertex> face;
      for (std::size_t b = 0; b < n; ++b) {
        if (mask & (std::uint64_t{1} << b)) face.push_back(tau[b]);
      }
      if (auto it = id.find(Simplex(std::move(face))); it != id.end()) {
        cofaces[it->second].push_back(t);
      }
    }
  }
  for (auto& list : cofaces) std::sort(list.begin(), list.end());

  out.flags.resize(static_cast<std::size_t>(max_flag_dim) + 1);
  for (std::size_t v = 0; v < out.vertices.size(); ++v) out.flags[0].push_back({v});
  for (std::size_t k = 1; k < out.flags.size(); ++k) {
    for (const auto& chain : out.flags[k - 1]) {
      for (std::size_t next : cofaces[chain.back()]) {
        auto longer = chain;
        longer.push_back(next);
        out.flags[k].push_back(std::move(longer));
      }
    }
  }
  return out;
}

long long euler_characteristic(const FilteredComplex& complex) {
  long long chi = 0;
  for (int k = 0; k <= complex.dimension(); ++k) {
    const auto n = static_cast<long long>(complex.size(k));
    chi += (k % 2 == 0) ? n : -n;
  }
  return chi;
}

}  // namespace dualalpha
