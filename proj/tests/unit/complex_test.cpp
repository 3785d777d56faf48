#include <doctest.h>

#include <algorithm>
#include <random>

#include "dualalpha/complex.hpp"
#include "test_support.hpp"

using namespace dualalpha;
using dualalpha::testing::closure_of;
using dualalpha::testing::complex_of;

namespace {

FilteredComplex hollow_triangle() { return closure_of({{0, 1}, {0, 2}, {1, 2}}); }
FilteredComplex filled_triangle() { return closure_of({{0, 1, 2}}); }

FilteredComplex random_complex(std::mt19937_64& rng, Vertex n, int top, double keep) {
  // Random weights made monotone by taking the max over facets.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  FilteredComplex c;
  for (Vertex v = 0; v < n; ++v) c.insert(Simplex{v}, unit(rng));
  for (int k = 1; k <= top; ++k) {
    for (const Simplex& s : lazy_candidates(c, k, n)) {
      if (unit(rng) > keep) continue;
      double w = unit(rng);
      for (std::size_t i = 0; i < s.size(); ++i) w = std::max(w, *c.weight(s.facet(i)));
      c.insert(s, w);
    }
  }
  return c;
}

}  // namespace

TEST_CASE("simplex invariants") {
  CHECK_THROWS_AS(Simplex(std::vector<Vertex>{}), std::invalid_argument);
  CHECK_THROWS_AS((Simplex{1, 1}), std::invalid_argument);
  CHECK_THROWS_AS((Simplex{2, 1}), std::invalid_argument);
  CHECK(Simplex::from_unsorted({3, 0, 2}) == Simplex{0, 2, 3});
  CHECK_THROWS_AS(Simplex::from_unsorted({1, 1}), std::invalid_argument);

  const Simplex s{0, 2, 5};
  CHECK(s.dimension() == 2);
  CHECK(s.facet(0) == Simplex{2, 5});
  CHECK(s.facet(1) == Simplex{0, 5});
  CHECK(s.facet(2) == Simplex{0, 2});
  CHECK_THROWS_AS(Simplex{4}.facet(0), std::invalid_argument);
  CHECK(s.extended(7) == Simplex{0, 2, 5, 7});
  CHECK_THROWS_AS(s.extended(5), std::invalid_argument);
  CHECK(s.contains(2));
  CHECK_FALSE(s.contains(1));
  CHECK((Simplex{0, 5}).is_face_of(s));
  CHECK_FALSE((Simplex{1, 5}).is_face_of(s));
  CHECK(s.to_string() == "[0,2,5]");
  CHECK((Simplex{0, 1}) < (Simplex{0, 2}));
  CHECK((Simplex{0, 9}) < (Simplex{1, 2}));
}

TEST_CASE("filtered complex storage") {
  FilteredComplex c;
  CHECK(c.empty());
  CHECK(c.dimension() == -1);
  c.insert(Simplex{1}, 0.1);
  c.insert(Simplex{0}, 0.2);
  c.insert(Simplex{0, 1}, 0.25);
  CHECK(c.dimension() == 1);
  CHECK(c.total_size() == 3);
  CHECK(c.weight(Simplex{0, 1}) == doctest::Approx(0.25));
  CHECK_FALSE(c.weight(Simplex{0, 2}).has_value());
  CHECK_THROWS_AS(c.insert(Simplex{0}, 1.0), std::invalid_argument);

  c.sort_filtration_order();
  CHECK(c.simplices(0)[0] == Simplex{1});
  CHECK(c.index_of(Simplex{1}) == 0u);
  CHECK(c.weights(0)[0] == 0.1);
  c.sort_lexicographic();
  CHECK(c.simplices(0)[1] == Simplex{1});
  CHECK(c.index_of(Simplex{1}) == 1u);
  CHECK(c.weight(Simplex{1}) == 0.1);
  CHECK(c.validate().empty());
}

TEST_CASE("validate reports closure and monotonicity violations") {
  auto c = complex_of({{{0}, 0.0}, {{0, 1}, 0.3}});
  CHECK(c.validate().size() == 1);
  auto d = complex_of({{{0}, 0.5}, {{1}, 0.0}, {{0, 1}, 0.2}});
  CHECK(d.validate().size() == 1);
  auto e = complex_of({{{0}, 0.2 + 5e-10}, {{1}, 0.0}, {{0, 1}, 0.2}});
  CHECK(e.validate().empty());
}

TEST_CASE("witness map") {
  WitnessMap w(2);
  w.set(Simplex{0}, Eigen::Vector2d(1, 2));
  CHECK(w.size() == 1);
  CHECK(w.find(Simplex{1}) == nullptr);
  CHECK(w.at(Simplex{0})[1] == 2.0);
  CHECK_THROWS_AS(w.at(Simplex{3}), std::out_of_range);
  CHECK_THROWS_AS(w.set(Simplex{1}, Eigen::Vector3d::Zero()), std::invalid_argument);
}

TEST_CASE("skeleton") {
  const auto filled = filled_triangle();
  auto one = skeleton(filled, 1);
  CHECK(one.size(0) == 3);
  CHECK(one.size(1) == 3);
  CHECK(one.size(2) == 0);
  CHECK(skeleton(filled, 5).total_size() == filled.total_size());
  auto zero = skeleton(hollow_triangle(), 0);
  CHECK(zero.total_size() == 3);
  CHECK(skeleton(filled, -1).empty());
}

TEST_CASE("lazy candidates") {
  const auto tri = hollow_triangle();
  CHECK(lazy_candidates(tri, 2) == std::vector<Simplex>{{0, 1, 2}});
  const auto open = closure_of({{0, 1}, {0, 2}});
  CHECK(lazy_candidates(open, 2).empty());
  const auto k4 = closure_of({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  CHECK(lazy_candidates(k4, 3) == std::vector<Simplex>{{0, 1, 2, 3}});
  CHECK_THROWS_AS(lazy_candidates(k4, 1), std::invalid_argument);

  SUBCASE("low dimensions") {
    CHECK(lazy_candidates(FilteredComplex{}, 0, 3).size() == 3);
    const auto verts = closure_of({{0}, {2}, {5}});
    CHECK(lazy_candidates(verts, 1, 6) == std::vector<Simplex>{{0, 2}, {0, 5}, {2, 5}});
  }

  SUBCASE("agrees with an exhaustive scan and contains the stored layer") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const Vertex n = 9;
      const auto c = random_complex(rng, n, 3, 0.7);
      for (int k = 2; k <= 3; ++k) {
        std::vector<Simplex> brute;
        // All (k+1)-subsets in lexicographic order.
        std::vector<char> mask(n, 0);
        std::fill(mask.begin(), mask.begin() + k + 1, 1);
        do {
          std::vector<Vertex> v;
          for (Vertex i = 0; i < n; ++i) {
            if (mask[i]) v.push_back(i);
          }
          Simplex s(v);
          bool ok = true;
          for (std::size_t i = 0; i < s.size() && ok; ++i) ok = c.contains(s.facet(i));
          if (ok) brute.push_back(s);
        } while (std::prev_permutation(mask.begin(), mask.end()));
        std::sort(brute.begin(), brute.end());
        const auto lazy = lazy_candidates(c, k);
        CHECK(lazy == brute);
        for (const Simplex& s : c.simplices(k)) {
          CHECK(std::binary_search(lazy.begin(), lazy.end(), s));
        }
      }
    }
  }
}

TEST_CASE("sublevel") {
  auto line = complex_of({{{0}, 0}, {{1}, 0}, {{2}, 0}, {{0, 1}, 0.25}, {{1, 2}, 0.25}});
  CHECK(sublevel(line, 1e300).total_size() == 5);
  CHECK(sublevel(line, -1).empty());
  auto low = sublevel(line, 0.1);
  CHECK(low.size(0) == 3);
  CHECK(low.size(1) == 0);

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = random_complex(rng, 8, 3, 0.8);
    for (double a : {0.2, 0.5, 0.9}) {
      const auto s = sublevel(c, a);
      CHECK(s.validate().empty());
      for (double b : {0.1, 0.6}) {
        const auto lhs = sublevel(s, b);
        const auto rhs = sublevel(c, std::min(a, b));
        REQUIRE(lhs.dimension() == rhs.dimension());
        for (int k = 0; k <= lhs.dimension(); ++k) {
          auto x = std::vector<Simplex>(lhs.simplices(k).begin(), lhs.simplices(k).end());
          auto y = std::vector<Simplex>(rhs.simplices(k).begin(), rhs.simplices(k).end());
          std::sort(x.begin(), x.end());
          std::sort(y.begin(), y.end());
          CHECK(x == y);
        }
      }
    }
  }
}

TEST_CASE("boundary matrix") {
  const auto filled = filled_triangle();
  auto d2 = boundary_matrix(filled, 2, 7);
  CHECK(d2.rows() == 3);
  CHECK(d2.cols() == 1);
  // Rows [0,1], [0,2], [1,2]: +[1,2] - [0,2] + [0,1].
  CHECK(d2.at(0, 0) == 1);
  CHECK(d2.at(1, 0) == 6);
  CHECK(d2.at(2, 0) == 1);

  auto d1 = boundary_matrix(closure_of({{0, 1}}), 1, 5);
  CHECK(d1.at(0, 0) == 4);
  CHECK(d1.at(1, 0) == 1);

  const auto tet = closure_of({{0, 1, 2, 3}});
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 101u}) {
    for (int k = 1; k <= 2; ++k) {
      CHECK(boundary_matrix(tet, k, p).multiply(boundary_matrix(tet, k + 1, p)).nonzeros() == 0);
    }
  }
  CHECK_THROWS_AS(boundary_matrix(filled, 1, 4), std::invalid_argument);
  CHECK_THROWS_AS(boundary_matrix(filled, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(boundary_matrix(complex_of({{{0, 1}, 0}}), 1, 2), std::invalid_argument);

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = random_complex(rng, 10, 4, 0.9);
    for (int k = 1; k < c.dimension(); ++k) {
      CHECK(boundary_matrix(c, k, 3).multiply(boundary_matrix(c, k + 1, 3)).nonzeros() == 0);
    }
  }
}

TEST_CASE("barycentric embedding") {
  SUBCASE("edge through its midpoint") {
    const auto edge = closure_of({{0, 1}});
    WitnessMap w(1);
    w.set(Simplex{0}, Eigen::VectorXd::Constant(1, 0.0));
    w.set(Simplex{1}, Eigen::VectorXd::Constant(1, 2.0));
    w.set(Simplex{0, 1}, Eigen::VectorXd::Constant(1, 1.0));
    const auto b = barycentric_embed(edge, w, 1);
    CHECK(b.vertices.size() == 3);
    REQUIRE(b.flags[1].size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      const Flag f = b.flag(1, i);
      CHECK(f.chain.back() == Simplex{0, 1});
      CHECK(f.chain.front().is_face_of(f.chain.back()));
    }
    const auto mid = std::find(b.vertices.begin(), b.vertices.end(), Simplex{0, 1}) -
                     b.vertices.begin();
    CHECK(b.coordinates(mid, 0) == 1.0);
  }
  SUBCASE("single vertex") {
    WitnessMap w(2);
    w.set(Simplex{0}, Eigen::Vector2d(3, 4));
    const auto b = barycentric_embed(closure_of({{0}}), w, 2);
    CHECK(b.vertices.size() == 1);
    CHECK(b.flags[1].empty());
    CHECK(b.coordinates(0, 1) == 4.0);
  }
  SUBCASE("filled triangle") {
    const auto tri = filled_triangle();
    WitnessMap w(2);
    for (int k = 0; k <= 2; ++k) {
      for (const Simplex& s : tri.simplices(k)) w.set(s, Eigen::Vector2d::Zero());
    }
    const auto b = barycentric_embed(tri, w, 2);
    CHECK(b.vertices.size() == 7);
    CHECK(b.flags[1].size() == 12);
    CHECK(b.flags[2].size() == 6);
    std::size_t boundary = 0;
    for (std::size_t i = 0; i < b.flags[1].size(); ++i) {
      if (b.flag(1, i).chain.back().dimension() == 1) ++boundary;
    }
    CHECK(boundary == 6);
  }
  SUBCASE("missing witness names the simplex") {
    WitnessMap w(1);
    w.set(Simplex{0}, Eigen::VectorXd::Zero(1));
    CHECK_THROWS_WITH_AS(barycentric_embed(closure_of({{0, 1}}), w, 1),
                         doctest::Contains("[1]"), std::invalid_argument);
  }
}

TEST_CASE("euler characteristic") {
  CHECK(euler_characteristic(hollow_triangle()) == 0);
  CHECK(euler_characteristic(filled_triangle()) == 1);
  const auto octahedron = closure_of({{0, 2, 4}, {0, 2, 5}, {0, 3, 4}, {0, 3, 5},
                                      {1, 2, 4}, {1, 2, 5}, {1, 3, 4}, {1, 3, 5}});
  CHECK(octahedron.size(0) == 6);
  CHECK(octahedron.size(1) == 12);
  CHECK(octahedron.size(2) == 8);
  CHECK(euler_characteristic(octahedron) == 2);
}
