#ifndef HYPERLABEL_CORRESPONDENCE_HPP
#define HYPERLABEL_CORRESPONDENCE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperlabel/geometry.hpp"
#include "hyperlabel/hull.hpp"

namespace hyperlabel {

/// One value f(z) of a multivalued map, in V-representation.  When
/// `convex` is false the represented set is the point cloud itself.
struct ConvexImage {
  std::vector<Point> vertices;
  bool convex = true;
};

using Evaluator = std::function<ConvexImage(std::span<const double>)>;

/// A multivalued map on a box.  Evaluators must be pure: the same input
/// yields the same output bits, and concurrent calls are allowed.
class Correspondence {
 public:
  Correspondence(BoxDomain domain, Evaluator evaluator, bool convex_valued = true,
                 double tol = kDefaultSignTol);

  int dim() const { return domain_.dim(); }
  const BoxDomain& domain() const { return domain_; }
  bool convex_valued() const { return convex_valued_; }

  /// Evaluates f(z) and checks the image is nonempty and inside the domain.
  ConvexImage evaluate(std::span<const double> z) const;

 private:
  BoxDomain domain_;
  Evaluator evaluator_;
  bool convex_valued_;
  double tol_;
};

enum class RepresentativePolicy { centroid, first };

RepresentativePolicy parse_policy(std::string_view name);
std::string to_string(RepresentativePolicy policy);

/// A point of the image: the vertex average or the first vertex.
Point representative(const ConvexImage& img, RepresentativePolicy policy = RepresentativePolicy::centroid);

/// dist(z, conv(vertices)) for convex images.  For point clouds, the distance
/// to the nearest listed point, which bounds the hull distance from above.
double residual(std::span<const double> z, const ConvexImage& img);

/// Separation between two finite sets (a box passes its corners).
inline std::optional<SeparationCertificate> separating_hyperplane(const Box& box,
                                                                  std::span<const Point> points) {
  const auto corners = box.corners();
  return separating_hyperplane(std::span<const Point>(corners), points);
}

//------------------------------------------------------------------------------
// MapSpec: the serialisable description of a correspondence.
//------------------------------------------------------------------------------
enum class MapKind { builtin, piecewise, bimatrix };

struct PiecewiseRegion {
  Box box;
  std::vector<Point> image;
};

struct MapSpec {
  int dimension = 0;
  Box domain;
  MapKind kind = MapKind::builtin;

  std::string builtin_name;
  nlohmann::json builtin_params = nlohmann::json::object();

  std::vector<PiecewiseRegion> regions;
  std::vector<Point> default_image;
  bool convex_valued = true;

  std::array<std::array<double, 2>, 2> payoff_a{};
  std::array<std::array<double, 2>, 2> payoff_b{};

  /// Throws InputError naming the offending field.
  static MapSpec from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;

  static MapSpec builtin(std::string name, Box domain, nlohmann::json params = nlohmann::json::object());
  static MapSpec bimatrix(const std::array<std::array<double, 2>, 2>& a,
                          const std::array<std::array<double, 2>, 2>& b);
};

/// Names accepted in the "builtin" catalog.
const std::vector<std::string>& builtin_catalog();

Correspondence make_correspondence(const MapSpec& spec, double tol = kDefaultSignTol);

/// A hull containing f(x) for every x in the box, or none when the spec kind
/// does not support it (bimatrix).
std::optional<ConvexImage> image_hull_over_box(const MapSpec& spec, const Box& box);

/// Best-response correspondence of a 2x2 bimatrix game on [0,1]^2 with
/// coordinates (p, q) = probabilities of each player's first strategy.
Correspondence best_response_correspondence(const std::array<std::array<double, 2>, 2>& a,
                                            const std::array<std::array<double, 2>, 2>& b,
                                            double tie_tol = kDefaultSignTol);

//------------------------------------------------------------------------------
// Sampled local-direction-preservation check.
//------------------------------------------------------------------------------
struct LgdpReport {
  bool dot_product_pass = false;  // (f(y)-y).(f(z)-z) >= 0 on all sampled pairs
  double min_dot = 0.0;
  std::optional<SeparationCertificate> separation;  // neighbourhood vs images
  int samples = 0;

  bool pass() const { return dot_product_pass && separation.has_value(); }
};

/// Samples points of the delta-ball around x (within the domain) and checks
/// both forms of local direction preservation.  Evidence, not proof.
LgdpReport lgdp_sample_check(const Correspondence& f, std::span<const double> x, double delta,
                             int samples, std::uint64_t seed, double fix_tol = 1e-7);

}  // namespace hyperlabel

#endif  // HYPERLABEL_CORRESPONDENCE_HPP
