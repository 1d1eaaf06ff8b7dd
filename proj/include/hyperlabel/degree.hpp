#ifndef HYPERLABEL_DEGREE_HPP
#define HYPERLABEL_DEGREE_HPP

// Combinatorial degree of labelled boundaries and completely labelled
// cells.
//
// For the inward corner labelling of a d-box the induced boundary map is of
// antipodal type, so its degree is (-1)^d: nonzero, which is all the
// existence argument needs.  inward_corner_degree() returns that constant.

#include <array>
#include <span>
#include <vector>

#include <json.hpp>

#include "hyperlabel/geometry.hpp"
#include "hyperlabel/labeling.hpp"

namespace hyperlabel {

struct LabeledTriangulation {
  int n = 3;                                // number of target labels
  std::vector<std::array<double, 2>> polygon;  // outer polygon corners, in order
  std::vector<int> corner_labels;
  std::vector<std::array<double, 2>> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> labels;                  // per vertex, 1..n

  /// Throws InputError naming the offending field.
  void validate() const;
  static LabeledTriangulation from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

/// Polygon edges each vertex lies on (corners lie on two).
std::vector<std::vector<int>> boundary_edges_of_vertices(const LabeledTriangulation& t);

/// Labels of all boundary vertices read once around the polygon, starting
/// at corner 0.
std::vector<int> boundary_cycle(const LabeledTriangulation& t);

/// Sperner condition on a triangle: every boundary vertex carries one of
/// the corner labels of its carrier face.
bool sperner_valid(const LabeledTriangulation& t);

/// No polygon edge carries all n labels among its vertices.
bool nondegenerate_valid(const LabeledTriangulation& t, int n);

struct DegreeResult {
  int degree = 0;
  bool orientation_ambiguous = false;  // a diametrically opposite transition was seen
};

/// Winding number of the label cycle around a regular point inside the
/// target arc (1, 2).  Non-adjacent labels move along the shorter arc; the
/// diametric tie (even n) moves forward and is flagged.
DegreeResult boundary_degree_2d(std::span<const int> cycle, int n);

/// Triangles whose own 3-cycle has nonzero degree.  For n = 3 these are
/// exactly the triangles labelled {1,2,3}.  Sorted indices.
std::vector<std::size_t> completely_labeled_triangles(const LabeledTriangulation& t);

/// Cells whose 2^d vertices carry all 2^d orthant labels.  Cells touching a
/// fixed-hit vertex are excluded (see cells_with_fixed_vertex).
std::vector<Cell> completely_labeled_cells(const GridLabeling& gl);
std::vector<Cell> cells_with_fixed_vertex(const GridLabeling& gl);

inline int inward_corner_degree(int dim) { return dim % 2 == 0 ? 1 : -1; }

}  // namespace hyperlabel

#endif  // HYPERLABEL_DEGREE_HPP
