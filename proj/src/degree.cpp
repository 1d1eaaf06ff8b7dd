#include "hyperlabel/degree.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hyperlabel {

using nlohmann::json;

namespace {

using P2 = std::array<double, 2>;

[[noreturn]] void bad_field(const std::string& field, const std::string& what) {
  throw InputError("triangulation field '" + field + "': " + what);
}

double polygon_scale(const std::vector<P2>& poly) {
  double s = 0;
  for (const auto& p : poly) s = std::max({s, std::abs(p[0]), std::abs(p[1])});
  return std::max(s, 1.0);
}

// Parameter of p along segment a->b if p lies on it (within tol), else -1.
double on_segment(const P2& p, const P2& a, const P2& b, double tol) {
  const double ex = b[0] - a[0], ey = b[1] - a[1];
  const double len2 = ex * ex + ey * ey;
  if (len2 == 0) return -1;
  const double t = ((p[0] - a[0]) * ex + (p[1] - a[1]) * ey) / len2;
  if (t < -tol || t > 1 + tol) return -1;
  const double cx = a[0] + t * ex - p[0], cy = a[1] + t * ey - p[1];
  if (std::sqrt(cx * cx + cy * cy) > tol) return -1;
  return std::clamp(t, 0.0, 1.0);
}

std::vector<P2> read_p2s(const json& j, const std::string& field) {
  if (!j.is_array()) bad_field(field, "expected an array of [x,y] points");
  std::vector<P2> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& p = j[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      bad_field(field + "[" + std::to_string(i) + "]", "expected [x,y]");
    out.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return out;
}

std::vector<int> read_ints(const json& j, const std::string& field) {
  if (!j.is_array()) bad_field(field, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) bad_field(field + "[" + std::to_string(i) + "]", "expected an integer");
    out.push_back(j[i].get<int>());
  }
  return out;
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad_field(key, "missing");
  return j.at(key);
}

}  // namespace

// ---------------------------------------------------------------------------
// LabeledTriangulation

void LabeledTriangulation::validate() const {
  if (n < 3) bad_field("n", "must be at least 3");
  if (polygon.size() < 3) bad_field("polygon", "needs at least 3 corners");
  if (corner_labels.size() != polygon.size()) bad_field("corner_labels", "one label per polygon corner required");
  if (labels.size() != vertices.size()) bad_field("labels", "one label per vertex required");
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] < 1 || labels[i] > n) bad_field("labels[" + std::to_string(i) + "]", "out of range 1..n");
  for (std::size_t i = 0; i < corner_labels.size(); ++i)
    if (corner_labels[i] < 1 || corner_labels[i] > n)
      bad_field("corner_labels[" + std::to_string(i) + "]", "out of range 1..n");
  for (std::size_t i = 0; i < triangles.size(); ++i)
    for (int v : triangles[i])
      if (v < 0 || v >= static_cast<int>(vertices.size()))
        bad_field("triangles[" + std::to_string(i) + "]", "vertex index out of range");
  const double tol = 1e-9 * polygon_scale(polygon);
  for (std::size_t c = 0; c < polygon.size(); ++c) {
    bool found = false;
    for (std::size_t v = 0; v < vertices.size() && !found; ++v) {
      if (std::hypot(vertices[v][0] - polygon[c][0], vertices[v][1] - polygon[c][1]) <= tol) {
        found = true;
        if (labels[v] != corner_labels[c])
          bad_field("labels[" + std::to_string(v) + "]", "differs from the label of the corner it sits on");
      }
    }
    if (!found) bad_field("polygon[" + std::to_string(c) + "]", "corner is not a triangulation vertex");
  }
}

LabeledTriangulation LabeledTriangulation::from_json(const json& j) {
  if (!j.is_object()) throw InputError("triangulation must be a JSON object");
  LabeledTriangulation t;
  const auto& n = require(j, "n");
  if (!n.is_number_integer()) bad_field("n", "expected an integer");
  t.n = n.get<int>();
  t.polygon = read_p2s(require(j, "polygon"), "polygon");
  t.corner_labels = read_ints(require(j, "corner_labels"), "corner_labels");
  t.vertices = read_p2s(require(j, "vertices"), "vertices");
  t.labels = read_ints(require(j, "labels"), "labels");
  const auto& tris = require(j, "triangles");
  if (!tris.is_array()) bad_field("triangles", "expected an array");
  for (std::size_t i = 0; i < tris.size(); ++i) {
    const auto idx = read_ints(tris[i], "triangles[" + std::to_string(i) + "]");
    if (idx.size() != 3) bad_field("triangles[" + std::to_string(i) + "]", "expected 3 vertex indices");
    t.triangles.push_back({idx[0], idx[1], idx[2]});
  }
  t.validate();
  return t;
}

nlohmann::ordered_json LabeledTriangulation::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["polygon"] = polygon;
  j["corner_labels"] = corner_labels;
  j["vertices"] = vertices;
  j["triangles"] = triangles;
  j["labels"] = labels;
  return j;
}

std::vector<std::vector<int>> boundary_edges_of_vertices(const LabeledTriangulation& t) {
  const double tol = 1e-9 * polygon_scale(t.polygon);
  const auto m = t.polygon.size();
  std::vector<std::vector<int>> out(t.vertices.size());
  for (std::size_t v = 0; v < t.vertices.size(); ++v)
    for (std::size_t e = 0; e < m; ++e)
      if (on_segment(t.vertices[v], t.polygon[e], t.polygon[(e + 1) % m], tol) >= 0)
        out[v].push_back(static_cast<int>(e));
  return out;
}

std::vector<int> boundary_cycle(const LabeledTriangulation& t) {
  const double tol = 1e-9 * polygon_scale(t.polygon);
  const auto m = t.polygon.size();
  std::vector<std::pair<std::pair<std::size_t, double>, int>> keyed;
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    for (std::size_t e = 0; e < m; ++e) {
      const double s = on_segment(t.vertices[v], t.polygon[e], t.polygon[(e + 1) % m], tol);
      // The far endpoint belongs to the next edge.
      if (s >= 0 && s < 1.0 - 1e-12) {
        keyed.push_back({{e, s}, t.labels[v]});
        break;
      }
    }
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> cycle;
  for (const auto& k : keyed) cycle.push_back(k.second);
  return cycle;
}

bool sperner_valid(const LabeledTriangulation& t) {
  if (t.polygon.size() != 3) throw InputError("sperner_valid: outer polygon must be a triangle");
  const std::set<int> corners(t.corner_labels.begin(), t.corner_labels.end());
  if (corners != std::set<int>{1, 2, 3}) throw InputError("sperner_valid: corner labels must be 1, 2, 3");
  const auto edges = boundary_edges_of_vertices(t);
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    if (edges[v].empty()) continue;  // interior: unconstrained
    std::set<int> allowed{1, 2, 3};
    for (int e : edges[v]) {
      const std::set<int> ends{t.corner_labels[static_cast<std::size_t>(e)],
                               t.corner_labels[static_cast<std::size_t>((e + 1) % 3)]};
      std::set<int> keep;
      std::set_intersection(allowed.begin(), allowed.end(), ends.begin(), ends.end(),
                            std::inserter(keep, keep.begin()));
      allowed = std::move(keep);
    }
    if (!allowed.contains(t.labels[v])) return false;
  }
  return true;
}

bool nondegenerate_valid(const LabeledTriangulation& t, int n) {
  const auto m = t.polygon.size();
  std::vector<std::set<int>> seen(m);
  for (std::size_t e = 0; e < m; ++e) {
    seen[e].insert(t.corner_labels[e]);
    seen[e].insert(t.corner_labels[(e + 1) % m]);
  }
  const auto edges = boundary_edges_of_vertices(t);
  for (std::size_t v = 0; v < t.vertices.size(); ++v)
    for (int e : edges[v]) seen[static_cast<std::size_t>(e)].insert(t.labels[v]);
  return std::none_of(seen.begin(), seen.end(),
                      [n](const std::set<int>& s) { return static_cast<int>(s.size()) >= n; });
}

DegreeResult boundary_degree_2d(std::span<const int> cycle, int n) {
  if (n < 3) throw InputError("boundary_degree_2d: n must be at least 3");
  if (cycle.empty()) throw InputError("boundary_degree_2d: empty cycle");
  for (int l : cycle)
    if (l < 1 || l > n) throw InputError("boundary_degree_2d: label out of range 1..n");
  DegreeResult r;
  const std::size_t len = cycle.size();
  for (std::size_t k = 0; k < len; ++k) {
    const int a = cycle[k] - 1;  // 0-based; arc j runs from label j to j+1
    const int b = cycle[(k + 1) % len] - 1;
    const int delta = ((b - a) % n + n) % n;
    if (delta == 0) continue;
    if (2 * delta == n) r.orientation_ambiguous = true;
    if (2 * delta <= n) {
      // Forward over arcs a, a+1, ..., a+delta-1; the regular point is on arc 0.
      if (((0 - a) % n + n) % n < delta) ++r.degree;
    } else {
      // Backward over arcs a-1, ..., a-(n-delta).
      const int j0 = ((a) % n + n) % n;  // steps back until arc 0
      if (j0 >= 1 && j0 <= n - delta) --r.degree;
    }
  }
  return r;
}

std::vector<std::size_t> completely_labeled_triangles(const LabeledTriangulation& t) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < t.triangles.size(); ++i) {
    const auto& tri = t.triangles[i];
    const std::array<int, 3> c{t.labels[static_cast<std::size_t>(tri[0])], t.labels[static_cast<std::size_t>(tri[1])],
                               t.labels[static_cast<std::size_t>(tri[2])]};
    if (boundary_degree_2d(c, t.n).degree != 0) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cubical grids

namespace {

std::vector<std::size_t> corner_offsets(const GridSpec& g) {
  const int d = g.dim();
  std::vector<std::size_t> stride(static_cast<std::size_t>(d));
  std::size_t s = 1;
  for (int i = d - 1; i >= 0; --i) {
    stride[static_cast<std::size_t>(i)] = s;
    s *= static_cast<std::size_t>(g.resolution() + 1);
  }
  std::vector<std::size_t> out;
  for (std::uint32_t k = 0; k < (std::uint32_t{1} << d); ++k) {
    std::size_t off = 0;
    for (int j = 0; j < d; ++j)
      if ((k >> j) & 1u) off += stride[static_cast<std::size_t>(j)];
    out.push_back(off);
  }
  return out;
}

template <class F>
void for_each_cell(const GridLabeling& gl, F&& f) {
  const auto& g = gl.grid();
  const auto offsets = corner_offsets(g);
  std::vector<std::int32_t> codes(offsets.size());
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    Cell cell{g.cell_index(c)};
    const std::size_t base = g.vertex_flat(cell.base);
    for (std::size_t k = 0; k < offsets.size(); ++k) codes[k] = gl.code(base + offsets[k]);
    f(std::move(cell), codes);
  }
}

}  // namespace

std::vector<Cell> completely_labeled_cells(const GridLabeling& gl) {
  if (!gl.complete()) throw InputError("completely_labeled_cells: labelling is not total");
  std::vector<Cell> out;
  std::vector<bool> seen(std::size_t{1} << gl.dim());
  for_each_cell(gl, [&](Cell cell, const std::vector<std::int32_t>& codes) {
    if (std::any_of(codes.begin(), codes.end(), [](std::int32_t c) { return c < 0; })) return;
    std::fill(seen.begin(), seen.end(), false);
    for (auto c : codes) {
      if (seen[static_cast<std::size_t>(c)]) return;
      seen[static_cast<std::size_t>(c)] = true;
    }
    out.push_back(std::move(cell));
  });
  return out;
}

std::vector<Cell> cells_with_fixed_vertex(const GridLabeling& gl) {
  std::vector<Cell> out;
  for_each_cell(gl, [&](Cell cell, const std::vector<std::int32_t>& codes) {
    if (std::any_of(codes.begin(), codes.end(), [](std::int32_t c) { return c == GridLabeling::kFixed; }))
      out.push_back(std::move(cell));
  });
  return out;
}

}  // namespace hyperlabel
