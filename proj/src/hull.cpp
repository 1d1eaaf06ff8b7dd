#include "hyperlabel/hull.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hyperlabel {
namespace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

constexpr double kWeightTol = 1e-12;
constexpr std::size_t kEnumerationBudget = 4096;

double norm2(std::span<const double> p) {
  double s = 0;
  for (double v : p) s += v * v;
  return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::size_t dimension_of(std::span<const Point> points) {
  if (points.empty()) throw InputError("convex hull of an empty point set");
  const std::size_t d = points.front().size();
  for (const auto& p : points)
    if (p.size() != d) throw InputError("convex hull: point dimension mismatch");
  return d;
}

// Affine minimum-norm point of the points indexed by `subset`: minimise
// |sum mu_i p_i| subject to sum mu_i = 1.  Returns nullopt when the subset is
// affinely dependent.
std::optional<Vector> affine_min_norm_weights(std::span<const Point> points,
                                              std::span<const std::size_t> subset) {
  const auto k = static_cast<Eigen::Index>(subset.size());
  const auto d = static_cast<Eigen::Index>(points[subset[0]].size());
  if (k == 1) return Vector::Ones(1);
  // Parametrise around the first point: x = p0 + sum_{i>0} t_i (p_i - p0).
  Matrix diffs(d, k - 1);
  for (Eigen::Index i = 1; i < k; ++i)
    for (Eigen::Index r = 0; r < d; ++r)
      diffs(r, i - 1) = points[subset[static_cast<std::size_t>(i)]][static_cast<std::size_t>(r)] -
                        points[subset[0]][static_cast<std::size_t>(r)];
  Vector p0(d);
  for (Eigen::Index r = 0; r < d; ++r) p0(r) = points[subset[0]][static_cast<std::size_t>(r)];

  Eigen::ColPivHouseholderQR<Matrix> qr(diffs);
  qr.setThreshold(1e-12);
  if (qr.rank() < k - 1) return std::nullopt;
  const Vector t = qr.solve(-p0);
  Vector mu(k);
  mu(0) = 1.0 - t.sum();
  mu.tail(k - 1) = t;
  return mu;
}

Point combine(std::span<const Point> points, std::span<const std::size_t> subset, const Vector& mu) {
  Point x(points[subset[0]].size(), 0.0);
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t r = 0; r < x.size(); ++r) x[r] += mu(static_cast<Eigen::Index>(i)) * points[subset[i]][r];
  return x;
}

std::size_t binomial_sum(std::size_t m, std::size_t kmax) {
  std::size_t total = 0;
  double c = 1;
  for (std::size_t k = 1; k <= std::min(m, kmax); ++k) {
    c = c * static_cast<double>(m - k + 1) / static_cast<double>(k);
    if (c > 1e9) return std::numeric_limits<std::size_t>::max();
    total += static_cast<std::size_t>(c);
  }
  return total;
}

}  // namespace

Point enumerate_min_norm_point(std::span<const Point> points) {
  const std::size_t d = dimension_of(points);
  const std::size_t m = points.size();
  const std::size_t kmax = std::min(m, d + 1);

  Point best = points[0];
  double best_n2 = norm2(best);
  for (std::size_t i = 1; i < m; ++i)
    if (const double n2 = norm2(points[i]); n2 < best_n2) best_n2 = n2, best = points[i];

  std::vector<std::size_t> subset;
  // Depth-first enumeration of subsets of size 2..kmax in lexicographic order.
  auto visit = [&](auto&& self, std::size_t start) -> void {
    if (subset.size() >= 2) {
      if (auto mu = affine_min_norm_weights(points, subset)) {
        if (mu->minCoeff() >= -kWeightTol) {
          if (subset.size() == d + 1) {
            // A full-dimensional simplex around the origin: exact zero.
            best.assign(d, 0.0);
            best_n2 = 0;
            return;
          }
          Point x = combine(points, subset, *mu);
          if (const double n2 = norm2(x); n2 < best_n2) best_n2 = n2, best = std::move(x);
        }
      } else {
        return;  // supersets of a dependent set are dependent
      }
    }
    if (subset.size() == kmax) return;
    for (std::size_t i = start; i < m; ++i) {
      subset.push_back(i);
      self(self, i + 1);
      subset.pop_back();
    }
  };
  visit(visit, 0);
  return best;
}

Point wolfe_min_norm_point(std::span<const Point> points) {
  const std::size_t d = dimension_of(points);
  const std::size_t m = points.size();
  double max_n2 = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double n2 = norm2(points[i]);
    max_n2 = std::max(max_n2, n2);
    if (n2 < norm2(points[start])) start = i;
  }
  const double stop_tol = 1e-15 * std::max(max_n2, 1e-300);

  std::vector<std::size_t> active{start};
  Vector lambda = Vector::Ones(1);
  Point x = points[start];

  const std::size_t max_major = 50 * (m + d) + 100;
  for (std::size_t major = 0; major < max_major; ++major) {
    if (norm2(x) <= stop_tol) break;
    std::size_t j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i)
      if (const double v = dot(x, points[i]); v < best) best = v, j = i;
    if (norm2(x) - best <= stop_tol) break;
    if (std::find(active.begin(), active.end(), j) != active.end()) break;

    active.push_back(j);
    Vector grown(lambda.size() + 1);
    grown << lambda, 0.0;
    lambda = grown;

    for (std::size_t minor = 0; minor <= m + 1; ++minor) {
      auto mu = affine_min_norm_weights(points, active);
      if (!mu) {
        // Numerically dependent: drop the newest point and stop.
        active.pop_back();
        lambda.conservativeResize(static_cast<Eigen::Index>(active.size()));
        lambda /= lambda.sum();
        x = combine(points, active, lambda);
        major = max_major;
        break;
      }
      if (mu->minCoeff() > kWeightTol) {
        lambda = *mu;
        break;
      }
      double theta = 1.0;
      for (Eigen::Index i = 0; i < mu->size(); ++i)
        if ((*mu)(i) <= kWeightTol && lambda(i) - (*mu)(i) > 0)
          theta = std::min(theta, lambda(i) / (lambda(i) - (*mu)(i)));
      lambda = theta * (*mu) + (1.0 - theta) * lambda;
      std::vector<std::size_t> kept;
      std::vector<double> kept_w;
      Eigen::Index smallest = 0;
      for (Eigen::Index i = 1; i < lambda.size(); ++i)
        if (lambda(i) < lambda(smallest)) smallest = i;
      for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (i == smallest || lambda(i) <= kWeightTol) continue;
        kept.push_back(active[static_cast<std::size_t>(i)]);
        kept_w.push_back(lambda(i));
      }
      active = std::move(kept);
      lambda = Eigen::Map<Vector>(kept_w.data(), static_cast<Eigen::Index>(kept_w.size()));
      lambda /= lambda.sum();
    }
    x = combine(points, active, lambda);
  }
  return x;
}

NearestPoint nearest_in_hull(std::span<const Point> vertices, std::span<const double> z) {
  const std::size_t d = dimension_of(vertices);
  if (z.size() != d) throw InputError("nearest_in_hull: dimension mismatch");
  std::vector<Point> shifted;
  shifted.reserve(vertices.size());
  for (const auto& v : vertices) {
    Point s(d);
    for (std::size_t i = 0; i < d; ++i) s[i] = v[i] - z[i];
    shifted.push_back(std::move(s));
  }
  Point x = binomial_sum(shifted.size(), d + 1) <= kEnumerationBudget
                ? enumerate_min_norm_point(shifted)
                : wolfe_min_norm_point(shifted);
  NearestPoint out;
  out.distance = std::sqrt(norm2(x));
  out.point.resize(d);
  for (std::size_t i = 0; i < d; ++i) out.point[i] = x[i] + z[i];
  return out;
}

double distance_to_points(std::span<const Point> points, std::span<const double> z) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    double s = 0;
    for (std::size_t i = 0; i < z.size(); ++i) s += (p[i] - z[i]) * (p[i] - z[i]);
    best = std::min(best, s);
  }
  return std::sqrt(best);
}

bool SeparationCertificate::certifies(std::span<const Point> low, std::span<const Point> high) const {
  if (!(margin > 0)) return false;
  for (const auto& p : low)
    if (dot(normal, p) > offset - margin) return false;
  for (const auto& p : high)
    if (dot(normal, p) < offset + margin) return false;
  return true;
}

std::optional<SeparationCertificate> separating_hyperplane(std::span<const Point> low,
                                                           std::span<const Point> high,
                                                           double tol) {
  const std::size_t d = dimension_of(low);
  if (dimension_of(high) != d) throw InputError("separating_hyperplane: dimension mismatch");

  // Nearest point of the Minkowski difference conv(low) - conv(high) to 0.
  std::vector<Point> diff;
  diff.reserve(low.size() * high.size());
  for (const auto& a : low)
    for (const auto& b : high) {
      Point p(d);
      for (std::size_t i = 0; i < d; ++i) p[i] = a[i] - b[i];
      diff.push_back(std::move(p));
    }
  const Point x = binomial_sum(diff.size(), d + 1) <= kEnumerationBudget
                      ? enumerate_min_norm_point(diff)
                      : wolfe_min_norm_point(diff);
  const double gap = std::sqrt(norm2(x));
  if (gap <= tol) return std::nullopt;

  SeparationCertificate cert;
  cert.normal.resize(d);
  for (std::size_t i = 0; i < d; ++i) cert.normal[i] = -x[i] / gap;
  double low_max = -std::numeric_limits<double>::infinity();
  double high_min = std::numeric_limits<double>::infinity();
  for (const auto& a : low) low_max = std::max(low_max, dot(cert.normal, a));
  for (const auto& b : high) high_min = std::min(high_min, dot(cert.normal, b));
  cert.offset = 0.5 * (low_max + high_min);
  // Shrink slightly so the inequalities survive rounding in certifies().
  cert.margin = 0.5 * (high_min - low_max) * (1.0 - 1e-9);
  if (!(cert.margin > 0) || !cert.certifies(low, high)) return std::nullopt;
  return cert;
}

}  // namespace hyperlabel
