#ifndef HYPERLABEL_HULL_HPP
#define HYPERLABEL_HULL_HPP

// Distance and separation queries on convex hulls of finite point sets.

#include <optional>
#include <span>
#include <vector>

#include "hyperlabel/geometry.hpp"

namespace hyperlabel {

struct NearestPoint {
  Point point;            // nearest point of conv(vertices)
  double distance = 0.0;
};

/// Nearest point of conv(vertices) to z.  Small inputs are solved by
/// enumerating affinely independent vertex subsets (exact); larger ones by
/// Wolfe's minimum-norm-point iteration.
NearestPoint nearest_in_hull(std::span<const Point> vertices, std::span<const double> z);

/// Minimum-norm point of conv(points) via Wolfe's algorithm.
Point wolfe_min_norm_point(std::span<const Point> points);

/// Minimum-norm point of conv(points) by enumerating affinely independent
/// subsets of at most d + 1 points.
Point enumerate_min_norm_point(std::span<const Point> points);

/// Distance from z to the nearest listed point.
double distance_to_points(std::span<const Point> points, std::span<const double> z);

/// Hyperplane w.x = offset with w.x <= offset - margin on one set and
/// w.y >= offset + margin on the other.
struct SeparationCertificate {
  Point normal;  // unit length
  double offset = 0.0;
  double margin = 0.0;

  /// True iff every point of `low` and `high` satisfies its inequality.
  bool certifies(std::span<const Point> low, std::span<const Point> high) const;
};

/// Maximum-margin hyperplane separating conv(low) from conv(high), or none
/// when the hulls meet (distance at or below `tol`).  Certificates are
/// re-verified against the inputs before being returned.
std::optional<SeparationCertificate> separating_hyperplane(std::span<const Point> low,
                                                           std::span<const Point> high,
                                                           double tol = 1e-12);

}  // namespace hyperlabel

#endif  // HYPERLABEL_HULL_HPP
