#ifndef HYPERLABEL_TESTS_FIXTURES_HPP
#define HYPERLABEL_TESTS_FIXTURES_HPP

// Triangulation generators and catalog maps shared by the test suites.

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <utility>

#include "hyperlabel/correspondence.hpp"
#include "hyperlabel/degree.hpp"

namespace fixtures {

using hyperlabel::LabeledTriangulation;

/// Regular subdivision of the triangle (0,0),(1,0),(0,1) into n^2
/// triangles; corners labelled 1, 2, 3 counterclockwise.  Labels start at 0
/// and are filled in by the caller.
inline LabeledTriangulation triangle_grid(int n, std::map<std::pair<int, int>, int>* index = nullptr) {
  LabeledTriangulation t;
  t.n = 3;
  t.polygon = {{0, 0}, {1, 0}, {0, 1}};
  t.corner_labels = {1, 2, 3};
  std::map<std::pair<int, int>, int> idx;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i + j <= n; ++i) {
      idx[{i, j}] = static_cast<int>(t.vertices.size());
      t.vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
    }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i + j < n; ++i) {
      t.triangles.push_back({idx[{i, j}], idx[{i + 1, j}], idx[{i, j + 1}]});
      if (i + j + 2 <= n) t.triangles.push_back({idx[{i + 1, j}], idx[{i + 1, j + 1}], idx[{i, j + 1}]});
    }
  t.labels.assign(t.vertices.size(), 0);
  if (index) *index = std::move(idx);
  return t;
}

/// Sperner-valid random labelling of triangle_grid(n).
inline LabeledTriangulation random_sperner(int n, std::mt19937& rng) {
  std::map<std::pair<int, int>, int> idx;
  auto t = triangle_grid(n, &idx);
  std::uniform_int_distribution<int> coin(0, 1), any(1, 3);
  for (const auto& [ij, v] : idx) {
    const auto [i, j] = ij;
    int l;
    if (i == 0 && j == 0) l = 1;
    else if (i == n) l = 2;
    else if (j == n) l = 3;
    else if (j == 0) l = coin(rng) ? 1 : 2;
    else if (i == 0) l = coin(rng) ? 1 : 3;
    else if (i + j == n) l = coin(rng) ? 2 : 3;
    else l = any(rng);
    t.labels[static_cast<std::size_t>(v)] = l;
  }
  return t;
}

/// Regular k-gon of radius 1 with each edge split into m segments and
/// `rings` concentric copies triangulated down to a centre vertex.  The
/// outer ring comes first, in counterclockwise order from corner 0.
inline LabeledTriangulation polygon_rings(int k, int m, int rings, int n) {
  LabeledTriangulation t;
  t.n = n;
  for (int c = 0; c < k; ++c) {
    const double a = 2 * std::numbers::pi * c / k;
    t.polygon.push_back({std::cos(a), std::sin(a)});
  }
  const int per_ring = k * m;
  for (int r = 0; r < rings; ++r) {
    const double s = 1.0 - static_cast<double>(r) / rings;
    for (int c = 0; c < k; ++c) {
      const auto& a = t.polygon[static_cast<std::size_t>(c)];
      const auto& b = t.polygon[static_cast<std::size_t>((c + 1) % k)];
      for (int j = 0; j < m; ++j) {
        const double u = static_cast<double>(j) / m;
        t.vertices.push_back({s * (a[0] + u * (b[0] - a[0])), s * (a[1] + u * (b[1] - a[1]))});
      }
    }
  }
  const int centre = static_cast<int>(t.vertices.size());
  t.vertices.push_back({0, 0});
  for (int r = 0; r + 1 < rings; ++r)
    for (int j = 0; j < per_ring; ++j) {
      const int a = r * per_ring + j, b = r * per_ring + (j + 1) % per_ring;
      const int c = a + per_ring, d = b + per_ring;
      t.triangles.push_back({a, b, d});
      t.triangles.push_back({a, d, c});
    }
  const int last = (rings - 1) * per_ring;
  for (int j = 0; j < per_ring; ++j) t.triangles.push_back({last + j, last + (j + 1) % per_ring, centre});
  t.labels.assign(t.vertices.size(), 1);
  t.corner_labels.assign(static_cast<std::size_t>(k), 1);
  return t;
}

/// Copies labels of corner vertices into corner_labels.
inline void sync_corners(LabeledTriangulation& t, int m) {
  for (std::size_t c = 0; c < t.polygon.size(); ++c) t.corner_labels[c] = t.labels[c * static_cast<std::size_t>(m)];
}

/// Winding labelling: boundary vertex at angle a gets the label of the
/// target sector containing w * a; interior labels random.
inline void winding_labels(LabeledTriangulation& t, int k, int m, int w, double phase, std::mt19937& rng) {
  std::uniform_int_distribution<int> any(1, t.n);
  const int per_ring = k * m;
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    if (static_cast<int>(v) < per_ring) {
      double a = w * std::atan2(t.vertices[v][1], t.vertices[v][0]) + phase;
      a = std::fmod(a, 2 * std::numbers::pi);
      if (a < 0) a += 2 * std::numbers::pi;
      t.labels[v] = 1 + static_cast<int>(a / (2 * std::numbers::pi) * t.n) % t.n;
    } else {
      t.labels[v] = any(rng);
    }
  }
  sync_corners(t, m);
}

/// Triangles whose labels are pairwise distinct (n = 3 oracle).
inline int count_rainbow(const LabeledTriangulation& t) {
  int count = 0;
  for (const auto& tri : t.triangles) {
    std::set<int> s{t.labels[static_cast<std::size_t>(tri[0])], t.labels[static_cast<std::size_t>(tri[1])],
                    t.labels[static_cast<std::size_t>(tri[2])]};
    count += s.size() == 3;
  }
  return count;
}

/// The 1D and 2D catalog maps used by the property and acceptance suites.
inline std::vector<std::pair<std::string, hyperlabel::MapSpec>> catalog() {
  using hyperlabel::Box;
  using hyperlabel::MapSpec;
  return {
      {"constant", MapSpec::builtin("constant", Box{{-1, -1}, {1, 1}}, {{"point", {0.1, -0.3}}})},
      {"contraction", MapSpec::builtin("contraction", Box{{-1, -1}, {1, 1}}, {{"factor", 0.5}, {"offset", {0.3, 0.1}}})},
      {"identity", MapSpec::builtin("identity", Box{{0.0}, {1.0}})},
      {"step-usc", MapSpec::builtin("step-usc", Box{{0.0}, {1.0}})},
      {"step-lgdp", MapSpec::builtin("step-lgdp", Box{{0.0}, {1.0}})},
      {"matching-pennies", MapSpec::bimatrix({{{1, -1}, {-1, 1}}}, {{{-1, 1}, {1, -1}}})},
      {"coordination", MapSpec::bimatrix({{{1, 0}, {0, 1}}}, {{{1, 0}, {0, 1}}})},
  };
}

}  // namespace fixtures

#endif  // HYPERLABEL_TESTS_FIXTURES_HPP
