#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dualalpha/alpha_builder.hpp"
#include "dualalpha/io.hpp"
#include "test_support.hpp"

using namespace dualalpha;
using namespace dualalpha::testing;

namespace {

WeightedPoints read(const std::string& points, const std::string* weights = nullptr) {
  std::istringstream p(points);
  if (!weights) return read_points(p);
  std::istringstream w(*weights);
  return read_points(p, &w);
}

void check_same(const ComplexFile& a, const ComplexFile& b) {
  CHECK(a.ambient_dim == b.ambient_dim);
  CHECK(a.a1 == b.a1);
  REQUIRE(a.complex.dimension() == b.complex.dimension());
  for (int k = 0; k <= a.complex.dimension(); ++k) {
    auto s = a.complex.simplices(k);
    auto w = a.complex.weights(k);
    REQUIRE(s.size() == b.complex.size(k));
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(b.complex.weight(s[i]) == w[i]);
      if (a.witness) CHECK(b.witness->at(s[i]) == a.witness->at(s[i]));
    }
  }
  CHECK(a.witness.has_value() == b.witness.has_value());
}

}  // namespace

TEST_CASE("read_points") {
  const auto line = read("0\n1\n2\n");
  CHECK(line.size() == 3);
  CHECK(line.ambient_dim() == 1);
  CHECK(line.coords(2, 0) == 2.0);
  CHECK(line.power.isZero());
  CHECK(line.a1 == 0.0);

  const auto tri = read("0,0\n1,0\n0.5,0.8660254\n");
  CHECK(tri.ambient_dim() == 2);
  CHECK(tri.coords(2, 1) == 0.8660254);

  const std::string weights = "3\n1\n";
  const auto w = read("0,0\n1, 1\n", &weights);
  CHECK(w.power[0] == 3.0);
  CHECK(w.power[1] == 1.0);

  CHECK(read("# header\n\n1e-3,-2\r\n+4,5\n").coords(0, 0) == 1e-3);
}

TEST_CASE("read_points errors carry line numbers") {
  CHECK_THROWS_WITH_AS(read("0,0\n1\n"), doctest::Contains(":2:"), ParseError);
  CHECK_THROWS_WITH_AS(read("0,0\n1,x\n"), doctest::Contains(":2: not a number"), ParseError);
  CHECK_THROWS_WITH_AS(read("0,,1\n"), doctest::Contains(":1:"), ParseError);
  CHECK_THROWS_AS(read(""), ParseError);
  CHECK_THROWS_AS(read("nan,1\n"), ParseError);
  const std::string short_w = "1\n";
  CHECK_THROWS_WITH_AS(read("0\n1\n", &short_w), doctest::Contains("1 weights for 2 points"),
                       ParseError);
  const std::string long_w = "1\n2\n3\n";
  CHECK_THROWS_WITH_AS(read("0\n1\n", &long_w), doctest::Contains(":3:"), ParseError);
  CHECK_THROWS_AS(parse_points("/nonexistent/points.csv"), std::runtime_error);
}

TEST_CASE("format_real") {
  CHECK(format_real(0.25) == "0.25");
  CHECK(format_real(0.0) == "0");
  CHECK(format_real(-0.0) == "0");
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(1.0 / 3.0) == "0.33333333333333331");
  CHECK(std::stod(format_real(std::sqrt(2.0))) == std::sqrt(2.0));
}

TEST_CASE("write_complex") {
  PointMatrix c(3, 1);
  c << 0, 1, 2;
  const auto pts = WeightedPoints::unweighted(c, 1.0);
  auto a = build_alpha(pts, {2});
  std::ostringstream os;
  write_complex(ComplexFile{1, 1.0, a.complex, std::nullopt}, os);
  CHECK(os.str() ==
        "#alpha v1\n#ambient 1\n#a1 1\n0 0 0\n0 0 1\n0 0 2\n1 0.25 0 1\n1 0.25 1 2\n");

  std::ostringstream empty;
  write_complex(ComplexFile{3, 0.5, {}, std::nullopt}, empty);
  CHECK(empty.str() == "#alpha v1\n#ambient 3\n#a1 0.5\n");

  // Sorting is by weight first, then vertices.
  FilteredComplex unsorted;
  unsorted.insert(Simplex{1}, 0.0);
  unsorted.insert(Simplex{0}, 0.5);
  unsorted.insert(Simplex{2}, 0.0);
  std::ostringstream sorted;
  write_complex(ComplexFile{1, 1.0, unsorted, std::nullopt}, sorted);
  CHECK(sorted.str() == "#alpha v1\n#ambient 1\n#a1 1\n0 0 1\n0 0 2\n0 0.5 0\n");
}

TEST_CASE("complex round trip") {
  Rng rng(404);
  for (int t = 0; t < 20; ++t) {
    const Instance inst = random_instance(rng, t % 2 == 0);
    auto a = build_alpha(inst.points, {inst.d});
    ComplexFile file{inst.points.ambient_dim(), inst.points.a1, a.complex, std::nullopt};
    if (t % 2 == 0) file.witness = a.witness;
    std::ostringstream os;
    write_complex(file, os);
    std::istringstream is(os.str());
    const ComplexFile back = read_complex(is);
    check_same(file, back);
    std::ostringstream again;
    write_complex(back, again);
    CHECK(again.str() == os.str());
  }
}

TEST_CASE("read_complex errors") {
  auto parse = [](const std::string& text) {
    std::istringstream is(text);
    return read_complex(is, "c.alpha");
  };
  CHECK_THROWS_WITH_AS(parse("0 0 0\n"), doctest::Contains("c.alpha:1"), ParseError);
  CHECK_THROWS_AS(parse("#alpha v2\n"), ParseError);
  CHECK_THROWS_WITH_AS(parse("#alpha v1\n0 0 0\n"), doctest::Contains("ambient"), ParseError);
  CHECK_THROWS_WITH_AS(parse("#alpha v1\n#ambient 2\n1 0 0\n"), doctest::Contains(":3:"),
                       ParseError);
  CHECK_THROWS_AS(parse("#alpha v1\n#ambient 2\n0 0 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse("#alpha v1\n#ambient 1\n0 0 0 1\n0 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse("#alpha v1\n#ambient 1\n1 0 1 0\n"), ParseError);
  CHECK_THROWS_AS(parse("#alpha v1\n#ambient 1\n0 0 0\n0 1 0\n"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK(parse("#alpha v1\n#ambient 1\n#a1 2\n").complex.empty());
}

TEST_CASE("write_off") {
  PointMatrix c(3, 2);
  c << 0, 0, 1, 0, 0.5, std::sqrt(3.0) / 2;
  const auto a = build_alpha(WeightedPoints::unweighted(c, 0.4), {2});
  const auto emb = barycentric_embed(a.complex, a.witness, 2);
  std::ostringstream os;
  write_off(emb, os);
  std::istringstream is(os.str());
  std::string magic;
  std::size_t nv = 0, nf = 0, ne = 0;
  is >> magic >> nv >> nf >> ne;
  CHECK(magic == "OFF");
  CHECK(nv == 7);
  CHECK(nf == 18);
  double x = 0, y = 0, z = 1;
  is >> x >> y >> z;
  CHECK(z == 0.0);

  PointMatrix high = PointMatrix::Zero(1, 4);
  const auto b = build_alpha(WeightedPoints::unweighted(high, 1.0), {0});
  std::ostringstream sink;
  CHECK_THROWS_AS(write_off(barycentric_embed(b.complex, b.witness, 0), sink), std::invalid_argument);
}

TEST_CASE("run config") {
  RunConfig cfg;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.alpha = 0.5;
  CHECK(cfg.cutoff() == 0.5);
  cfg.radius = 2.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.alpha.reset();
  CHECK(cfg.cutoff() == 4.0);
  cfg.weights_path = "w.txt";
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("unweighted"), std::invalid_argument);
  cfg.weights_path.reset();
  cfg.radius = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.radius = 1.0;
  cfg.threads = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.threads = 3;
  cfg.max_dim = 4;
  CHECK(cfg.build_params().max_dim == 4);
  CHECK(cfg.build_params().threads == 3);
}

TEST_CASE("radius equals alpha of its square") {
  const auto pts = circle_points(24);
  BuildParams params{2};
  const auto by_alpha = build_alpha(WeightedPoints::unweighted(pts, 0.3 * 0.3), params);
  RunConfig cfg;
  cfg.radius = 0.3;
  const auto by_radius = build_alpha(WeightedPoints::unweighted(pts, cfg.cutoff()), params);
  std::ostringstream a, b;
  write_complex(ComplexFile{2, 0.3 * 0.3, by_alpha.complex, by_alpha.witness}, a);
  write_complex(ComplexFile{2, cfg.cutoff(), by_radius.complex, by_radius.witness}, b);
  CHECK(a.str() == b.str());
}
