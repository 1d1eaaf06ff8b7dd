#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "hyperlabel/geometry.hpp"

using namespace hyperlabel;

TEST_CASE("orthant label index encoding") {
  CHECK(OrthantLabel({1, 1}).index() == 1);
  CHECK(OrthantLabel({-1, -1}).index() == 4);
  CHECK(OrthantLabel({1, -1}).index() == 2);
  CHECK(OrthantLabel({-1, 1}).index() == 3);
  CHECK(OrthantLabel({-1}).index() == 2);
  for (int k = 1; k <= 8; ++k) CHECK(OrthantLabel::from_index(k, 3).index() == k);
  CHECK(OrthantLabel::parse("+-+") == OrthantLabel({1, -1, 1}));
  CHECK(OrthantLabel({1, -1, 1}).str() == "+-+");
  CHECK_THROWS_AS(OrthantLabel({1, 0}), Error);
  CHECK_THROWS_AS(OrthantLabel::from_index(0, 2), Error);
  CHECK_THROWS_AS(OrthantLabel::from_index(5, 2), Error);
  CHECK_THROWS_AS(OrthantLabel::parse("+x"), Error);
}

TEST_CASE("label index is a bijection onto 1..2^d") {
  for (int d = 1; d <= 5; ++d) {
    std::set<int> seen;
    for (std::uint32_t b = 0; b < (1u << d); ++b) {
      const auto l = OrthantLabel::from_bits(b, d);
      CHECK(OrthantLabel(l.signs()) == l);
      seen.insert(l.index());
    }
    CHECK(seen.size() == (1u << d));
    CHECK(*seen.begin() == 1);
    CHECK(*seen.rbegin() == (1 << d));
  }
}

TEST_CASE("sign_of with tolerance") {
  CHECK(sign_of(0.3, 1e-9) == 1);
  CHECK(sign_of(-1e-12, 1e-9) == 0);
  CHECK(sign_of(-0.2, 1e-9) == -1);
  CHECK(sign_of(1e-9, 1e-9) == 0);
  CHECK(sign_of(0.0, 0.0) == 0);
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(BoxDomain({0.0}, {0.0}), InputError);
  CHECK_THROWS_AS(BoxDomain({0.0, 1.0}, {1.0}), InputError);
  CHECK_THROWS_AS(BoxDomain({0.0}, {std::numeric_limits<double>::infinity()}), InputError);
  CHECK_THROWS_AS(GridSpec(BoxDomain::cube(2, 0, 1), 0), InputError);
}

TEST_CASE("cell vertices and faces") {
  const GridSpec g(BoxDomain::cube(2, -1, 1), 1);
  const auto v = cell_vertices(g, Cell{{0, 0}});
  REQUIRE(v.size() == 4);
  const std::set<Point> expect{{-1, -1}, {1, -1}, {-1, 1}, {1, 1}};
  CHECK(std::set<Point>(v.begin(), v.end()) == expect);

  const auto faces = cell_faces(Cell{{0, 0}});
  REQUIRE(faces.size() == 4);
  std::set<std::pair<int, int>> kinds;
  for (const auto& f : faces) kinds.insert({f.axis, f.side});
  CHECK(kinds == std::set<std::pair<int, int>>{{0, -1}, {0, 1}, {1, -1}, {1, 1}});

  const GridSpec g3(BoxDomain::cube(3, 0, 1), 2);
  for (const auto& f : cell_faces(Cell{{1, 0, 1}})) {
    const auto fv = face_vertices(g3, f);
    CHECK(fv.size() == 4);
    const double wall = f.side < 0 ? g3.coord(f.axis, f.cell.base[f.axis]) : g3.coord(f.axis, f.cell.base[f.axis] + 1);
    for (const auto& p : fv) CHECK(p[f.axis] == wall);
  }
}

TEST_CASE("shared faces have bit-identical vertices") {
  const GridSpec g(BoxDomain({-0.7, 0.1, 0.0}, {1.3, 0.9, 3.0}), 7);
  for (int i = 0; i + 1 < 7; ++i) {
    const Face upper{Cell{{i, 3, 2}}, 0, 1};
    const Face lower{Cell{{i + 1, 3, 2}}, 0, -1};
    auto a = face_vertices(g, upper);
    auto b = face_vertices(g, lower);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }
}

TEST_CASE("grid cells tile the domain") {
  // Rational check: every cell box is [k h, (k+1) h] per axis and the grid
  // endpoints are exactly lo and hi.
  const BoxDomain dom({-1, 0}, {1, 3});
  for (int n : {1, 3, 8, 10}) {
    const GridSpec g(dom, n);
    CHECK(g.coord(0, 0) == -1.0);
    CHECK(g.coord(0, n) == 1.0);
    CHECK(g.coord(1, n) == 3.0);
    CHECK(g.cell_count() == static_cast<std::size_t>(n * n));
    double area = 0;
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
      const auto b = g.cell_box(Cell{g.cell_index(c)});
      area += (b.hi[0] - b.lo[0]) * (b.hi[1] - b.lo[1]);
      const auto idx = g.cell_index(c);
      if (idx[0] + 1 < n) CHECK(b.hi[0] == g.cell_box(Cell{{idx[0] + 1, idx[1]}}).lo[0]);
    }
    CHECK(area == doctest::Approx(6.0));
    CHECK(g.cell_diameter() == doctest::Approx(3.0 / n));
  }
}

TEST_CASE("flat numbering round trip") {
  const GridSpec g(BoxDomain::cube(3, 0, 1), 4);
  for (std::size_t i = 0; i < g.vertex_count(); ++i) CHECK(g.vertex_flat(g.vertex_index(i)) == i);
  CHECK(g.vertex_flat(Index{1, 0, 0}) == 25);
}

TEST_CASE("carrier") {
  const auto dom = BoxDomain::cube(2, -1, 1);
  CHECK(carrier(Point{1, 0}, dom, 0) == std::vector<int>{1, 0});
  CHECK(carrier(Point{0, 0}, dom, 0) == std::vector<int>{0, 0});
  CHECK(carrier(Point{-1, 1}, dom, 0) == std::vector<int>{-1, 1});
  CHECK_THROWS_AS(carrier(Point{1.5, 0}, dom, 0), InputError);
}

TEST_CASE("carrier is monotone in the tolerance") {
  const auto dom = BoxDomain::cube(3, -1, 1);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 500; ++t) {
    Point z{u(rng), u(rng), u(rng)};
    z[t % 3] = t % 2 ? 1 - 1e-4 * std::abs(u(rng) * u(rng)) : -1 + 1e-5;
    const auto wide = carrier(z, dom, 1e-3);
    const auto narrow = carrier(z, dom, 1e-6);
    for (int i = 0; i < 3; ++i)
      if (narrow[i] != 0) CHECK(narrow[i] == wide[i]);
  }
}

TEST_CASE("corner labels point inward and are distinct") {
  const auto dom = BoxDomain::cube(2, -1, 1);
  CHECK(corner_label(Point{1, 1}, dom) == OrthantLabel({-1, -1}));
  CHECK(corner_label(Point{-1, 1}, dom) == OrthantLabel({1, -1}));
  CHECK_THROWS_AS(corner_label(Point{0, 1}, dom), InputError);
  for (int d = 1; d <= 4; ++d) {
    const auto box = BoxDomain::cube(d, 0, 2);
    std::set<std::uint32_t> seen;
    for (const auto& v : box.box().corners()) {
      const auto l = corner_label(v, box);
      seen.insert(l.bits());
      const auto s = carrier(v, box, 0);
      for (int i = 0; i < d; ++i) CHECK(l[i] == -s[i]);
    }
    CHECK(seen.size() == (1u << d));
  }
}
