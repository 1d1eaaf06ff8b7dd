#include <doctest.h>

#include <random>
#include <sstream>

#include "hyperlabel/labeling.hpp"

using namespace hyperlabel;

namespace {

OrthantLabel label_of(const VertexLabel& v) {
  REQUIRE(std::holds_alternative<OrthantLabel>(v));
  return std::get<OrthantLabel>(v);
}

Correspondence constant(Point p, double lo = -1, double hi = 1) {
  const int d = static_cast<int>(p.size());
  return Correspondence(BoxDomain::cube(d, lo, hi), [p](std::span<const double>) { return ConvexImage{{p}, true}; });
}

std::vector<MapSpec> catalog() {
  return {
      MapSpec::builtin("constant", Box{{-1, -1}, {1, 1}}, {{"point", {0.1, -0.3}}}),
      MapSpec::builtin("contraction", Box{{-1, -1}, {1, 1}}, {{"offset", {0.3, 0.1}}}),
      MapSpec::builtin("step-usc", Box{{0.0}, {1.0}}),
      MapSpec::builtin("step-lgdp", Box{{0.0}, {1.0}}),
      MapSpec::bimatrix({{{1, -1}, {-1, 1}}}, {{{-1, 1}, {1, -1}}}),
      MapSpec::bimatrix({{{1, 0}, {0, 1}}}, {{{1, 0}, {0, 1}}}),
  };
}

}  // namespace

TEST_CASE("admissible labels") {
  CHECK(admissible_labels(Point{0.3, -0.2}, 1e-9) == std::vector<OrthantLabel>{OrthantLabel({1, -1})});
  const auto wall = admissible_labels(Point{0, 0.5}, 1e-9);
  CHECK(wall.size() == 2);
  CHECK(std::find(wall.begin(), wall.end(), OrthantLabel({1, 1})) != wall.end());
  CHECK(std::find(wall.begin(), wall.end(), OrthantLabel({-1, 1})) != wall.end());
  CHECK(admissible_labels(Point{0, 0}, 1e-9).size() == 4);
}

TEST_CASE("admissible label count is 2^zeros") {
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> pick(-1, 1);
  for (int t = 0; t < 300; ++t) {
    const int d = 1 + t % 4;
    Point dz(static_cast<std::size_t>(d));
    int zeros = 0;
    for (auto& x : dz) {
      x = 0.25 * pick(rng);
      zeros += x == 0.0;
    }
    CHECK(admissible_labels(dz, 1e-9).size() == (std::size_t{1} << zeros));
  }
}

TEST_CASE("choose_label examples") {
  const auto dom = BoxDomain::cube(2, -1, 1);
  CHECK(label_of(choose_label(Point{0, 0}, ConvexImage{{{0.3, -0.2}}}, dom)) == OrthantLabel({1, -1}));
  CHECK(label_of(choose_label(Point{1, 0}, ConvexImage{{{1, 0.4}}}, dom)) == OrthantLabel({-1, 1}));
  CHECK(label_of(choose_label(Point{1, 1}, ConvexImage{{{0.9, 0.95}}}, dom)) == OrthantLabel({-1, -1}));
  // Free zero coordinates prefer +.
  CHECK(label_of(choose_label(Point{0, 0}, ConvexImage{{{0, 0.5}}}, dom)) == OrthantLabel({1, 1}));
  const auto hit = choose_label(Point{0.2, 0.2}, ConvexImage{{{0.2, 0.2 + 1e-8}}}, dom);
  REQUIRE(std::holds_alternative<FixedHit>(hit));
  CHECK(std::get<FixedHit>(hit).residual == doctest::Approx(1e-8));
  // Zero residual without small displacement: z inside a wide image.
  CHECK(std::holds_alternative<FixedHit>(choose_label(Point{0, 0}, ConvexImage{{{-1, 0}, {1, 0}}}, dom)));
  // Displacement pointing out of the wall it sits on.
  CHECK_THROWS_AS(choose_label(Point{1, 0}, ConvexImage{{{1.5, 0}}}, dom), MapError);
}

TEST_CASE("label_grid examples") {
  const auto c = constant({0, 0});
  const GridSpec g(c.domain(), 2);
  const auto gl = label_grid(g, c);
  CHECK(gl.label(g.vertex_flat(Index{2, 2})) == OrthantLabel({-1, -1}));
  CHECK(gl.label(g.vertex_flat(Index{0, 0})) == OrthantLabel({1, 1}));
  CHECK(gl.is_fixed(g.vertex_flat(Index{1, 1})));
  CHECK(gl.fixed_vertices() == std::vector<std::size_t>{g.vertex_flat(Index{1, 1})});

  const auto id = make_correspondence(MapSpec::builtin("identity", Box{{0, 0}, {1, 1}}));
  const auto all = label_grid(GridSpec(id.domain(), 4), id);
  CHECK(all.fixed_vertices().size() == 25);
  for (double r : all.residuals()) CHECK(r == 0.0);

  const auto step = make_correspondence(MapSpec::builtin("step-usc", Box{{0.0}, {1.0}}));
  const GridSpec g1(step.domain(), 10);
  const auto sl = label_grid(g1, step);
  for (int i = 0; i <= 10; ++i) {
    const auto flat = static_cast<std::size_t>(i);
    if (i < 5) CHECK(sl.label(flat) == OrthantLabel({1}));
    if (i == 5) CHECK(sl.is_fixed(flat));
    if (i > 5) CHECK(sl.label(flat) == OrthantLabel({-1}));
  }
}

TEST_CASE("chosen labels are admissible and boundary labels point inward") {
  for (const auto& spec : catalog()) {
    const auto f = make_correspondence(spec);
    for (int n : {8, 16, 32}) {
      const GridSpec g(f.domain(), n);
      const auto gl = label_grid(g, f);
      for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        const auto l = gl.label(v);
        if (!l) continue;
        const auto idx = g.vertex_index(v);
        const auto z = g.vertex(idx);
        const auto img = f.evaluate(z);
        const auto rep = representative(img);
        Point dz(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) dz[i] = rep[i] - z[i];
        const auto adm = admissible_labels(dz, 1e-9);
        CHECK(std::find(adm.begin(), adm.end(), *l) != adm.end());
        for (int i = 0; i < g.dim(); ++i) {
          if (idx[i] == 0) CHECK((*l)[i] == 1);
          if (idx[i] == n) CHECK((*l)[i] == -1);
        }
      }
    }
  }
}

TEST_CASE("labelling is deterministic and thread-independent") {
  const auto f = make_correspondence(MapSpec::builtin("contraction", Box{{-1, -1}, {1, 1}}, {{"offset", {0.3, 0.1}}}));
  const GridSpec g(f.domain(), 40);
  LabelConfig cfg;
  const auto a = label_grid(g, f, cfg);
  const auto b = label_grid(g, f, cfg);
  cfg.threads = 4;
  const auto c = label_grid(g, f, cfg);
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("labels are stable under small perturbations") {
  const auto dom = BoxDomain::cube(3, -1, 1);
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  std::uniform_real_distribution<double> tiny(-1e-9, 1e-9);
  for (int t = 0; t < 1000; ++t) {
    Point dz{u(rng), u(rng), u(rng)};
    for (auto& x : dz)
      if (std::abs(x) <= 2e-9) x = 3e-9;
    Point dz2 = dz;
    for (auto& x : dz2) x += 0.99 * tiny(rng);
    const Point z{0, 0, 0};
    CHECK(label_of(choose_label(z, ConvexImage{{dz}}, dom)) == label_of(choose_label(z, ConvexImage{{dz2}}, dom)));
  }
}

TEST_CASE("early exit stops at the first fixed hit") {
  const auto c = constant({0, 0});
  LabelConfig cfg;
  cfg.early_exit = true;
  const auto gl = label_grid(GridSpec(c.domain(), 2), c, cfg);
  CHECK_FALSE(gl.complete());
  CHECK(gl.fixed_vertices().size() == 1);
}

TEST_CASE("grid CSV") {
  const auto c = constant({0.5});
  const auto gl = label_grid(GridSpec(c.domain(), 4), c);
  std::ostringstream out;
  write_grid_csv(out, gl);
  const std::string csv = out.str();
  CHECK(csv.rfind("i1,x1,s1,is_fixed,residual\n", 0) == 0);
  CHECK(csv.find("\n0,-1,1,0,1.5\n") != std::string::npos);
  CHECK(csv.find("\n3,0.5,,1,0\n") != std::string::npos);
}

TEST_CASE("grids outside the map domain are rejected") {
  const auto c = constant({0.5}, 0, 1);
  CHECK_THROWS_AS(label_grid(GridSpec(BoxDomain::cube(1, 0, 2), 4), c), InputError);
}
