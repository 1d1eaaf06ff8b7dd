#include "hyperlabel/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hyperlabel {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Correspondence

Correspondence::Correspondence(BoxDomain domain, Evaluator evaluator, bool convex_valued, double tol)
    : domain_(std::move(domain)), evaluator_(std::move(evaluator)), convex_valued_(convex_valued), tol_(tol) {
  if (!evaluator_) throw InputError("correspondence requires an evaluator");
}

ConvexImage Correspondence::evaluate(std::span<const double> z) const {
  if (static_cast<int>(z.size()) != dim()) throw InputError("evaluate: dimension mismatch");
  if (!domain_.contains(z, tol_)) throw InputError("evaluate: point " + format_point(z) + " outside domain");
  ConvexImage img = evaluator_(z);
  if (img.vertices.empty()) throw MapError("map returned an empty image at z = " + format_point(z));
  for (const auto& v : img.vertices) {
    if (static_cast<int>(v.size()) != dim())
      throw MapError("map returned a point of wrong dimension at z = " + format_point(z));
    if (!domain_.contains(v, tol_))
      throw MapError("map image point " + format_point(v) + " leaves the domain at z = " + format_point(z));
  }
  img.convex = img.convex && convex_valued_;
  return img;
}

RepresentativePolicy parse_policy(std::string_view name) {
  if (name == "centroid") return RepresentativePolicy::centroid;
  if (name == "first") return RepresentativePolicy::first;
  throw InputError("unknown representative policy '" + std::string(name) + "'");
}

std::string to_string(RepresentativePolicy policy) {
  return policy == RepresentativePolicy::centroid ? "centroid" : "first";
}

Point representative(const ConvexImage& img, RepresentativePolicy policy) {
  if (img.vertices.empty()) throw InputError("representative of an empty image");
  if (policy == RepresentativePolicy::first) return img.vertices.front();
  Point c(img.vertices.front().size(), 0.0);
  for (const auto& v : img.vertices)
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += v[i];
  for (auto& x : c) x /= static_cast<double>(img.vertices.size());
  return c;
}

double residual(std::span<const double> z, const ConvexImage& img) {
  if (!img.convex) return distance_to_points(img.vertices, z);
  return nearest_in_hull(img.vertices, z).distance;
}

// ---------------------------------------------------------------------------
// MapSpec parsing

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& what) {
  throw InputError("map spec field '" + field + "': " + what);
}

const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) bad_field(path + key, "missing");
  return j.at(key);
}

double read_number(const json& j, const std::string& field) {
  if (!j.is_number()) bad_field(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad_field(field, "must be finite");
  return v;
}

Point read_point(const json& j, const std::string& field, int dim) {
  if (!j.is_array()) bad_field(field, "expected an array of numbers");
  if (static_cast<int>(j.size()) != dim)
    bad_field(field, "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(j.size()));
  Point p;
  for (std::size_t i = 0; i < j.size(); ++i) p.push_back(read_number(j[i], field + "[" + std::to_string(i) + "]"));
  return p;
}

std::vector<Point> read_points(const json& j, const std::string& field, int dim) {
  if (!j.is_array() || j.empty()) bad_field(field, "expected a nonempty array of points");
  std::vector<Point> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(read_point(j[i], field + "[" + std::to_string(i) + "]", dim));
  return out;
}

Box read_box(const json& j, const std::string& field, int dim) {
  Box b{read_point(require(j, "lo", field + "."), field + ".lo", dim),
        read_point(require(j, "hi", field + "."), field + ".hi", dim)};
  for (int i = 0; i < dim; ++i)
    if (b.lo[static_cast<std::size_t>(i)] > b.hi[static_cast<std::size_t>(i)]) bad_field(field, "lo > hi");
  return b;
}

std::array<std::array<double, 2>, 2> read_matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) bad_field(field, "expected a 2x2 matrix");
  std::array<std::array<double, 2>, 2> m{};
  for (std::size_t r = 0; r < 2; ++r) {
    if (!j[r].is_array() || j[r].size() != 2) bad_field(field, "expected a 2x2 matrix");
    for (std::size_t c = 0; c < 2; ++c)
      m[r][c] = read_number(j[r][c], field + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

json points_json(const std::vector<Point>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(p);
  return a;
}

double param(const json& params, const char* key, double fallback) {
  if (!params.contains(key)) return fallback;
  return read_number(params.at(key), std::string("builtin.params.") + key);
}

Point param_point(const json& params, const char* key, Point fallback) {
  if (!params.contains(key)) return fallback;
  return read_point(params.at(key), std::string("builtin.params.") + key, static_cast<int>(fallback.size()));
}

struct StepParams {
  double threshold, left, right;
};

StepParams step_params(const MapSpec& spec) {
  const bool usc = spec.builtin_name == "step-usc";
  return {param(spec.builtin_params, "threshold", usc ? 0.5 : 0.4),
          param(spec.builtin_params, "left", usc ? 0.75 : 0.8),
          param(spec.builtin_params, "right", usc ? 0.25 : 0.9)};
}

void validate_builtin(const MapSpec& spec) {
  const auto& names = builtin_catalog();
  if (std::find(names.begin(), names.end(), spec.builtin_name) == names.end())
    bad_field("builtin.name", "unknown catalog map '" + spec.builtin_name + "'");
  if (!spec.builtin_params.is_object()) bad_field("builtin.params", "expected an object");
  if ((spec.builtin_name == "step-usc" || spec.builtin_name == "step-lgdp") && spec.dimension != 1)
    bad_field("dimension", spec.builtin_name + " requires dimension 1");
  // Touch the parameters so malformed values fail at parse time.
  if (spec.builtin_name == "constant") param_point(spec.builtin_params, "point", Point(spec.domain.lo.size()));
  if (spec.builtin_name == "contraction") {
    param(spec.builtin_params, "factor", 0.5);
    param_point(spec.builtin_params, "offset", Point(spec.domain.lo.size()));
  }
  if (spec.builtin_name.starts_with("step-")) step_params(spec);
}

}  // namespace

const std::vector<std::string>& builtin_catalog() {
  static const std::vector<std::string> names{"constant", "contraction", "step-usc", "step-lgdp", "identity"};
  return names;
}

MapSpec MapSpec::from_json(const json& j) {
  if (!j.is_object()) throw InputError("map spec must be a JSON object");
  MapSpec s;
  const auto& dim = require(j, "dimension", "");
  if (!dim.is_number_integer()) bad_field("dimension", "expected an integer");
  s.dimension = dim.get<int>();
  if (s.dimension < 1 || s.dimension > kMaxDim) bad_field("dimension", "out of range");

  const auto& kind = require(j, "kind", "");
  if (!kind.is_string()) bad_field("kind", "expected a string");
  const auto kind_name = kind.get<std::string>();
  if (kind_name == "builtin")
    s.kind = MapKind::builtin;
  else if (kind_name == "piecewise")
    s.kind = MapKind::piecewise;
  else if (kind_name == "bimatrix")
    s.kind = MapKind::bimatrix;
  else
    bad_field("kind", "unknown kind '" + kind_name + "'");

  if (s.kind == MapKind::bimatrix) {
    if (s.dimension != 2) bad_field("dimension", "bimatrix maps are 2-dimensional");
    s.domain = Box{{0.0, 0.0}, {1.0, 1.0}};
    if (j.contains("domain") && read_box(j.at("domain"), "domain", 2) != s.domain)
      bad_field("domain", "bimatrix domain must be [0,1]^2");
  } else {
    s.domain = read_box(require(j, "domain", ""), "domain", s.dimension);
  }
  try {
    (void)BoxDomain(s.domain);
  } catch (const InputError& e) {
    bad_field("domain", e.what());
  }

  switch (s.kind) {
    case MapKind::builtin: {
      const auto& b = require(j, "builtin", "");
      const auto& name = require(b, "name", "builtin.");
      if (!name.is_string()) bad_field("builtin.name", "expected a string");
      s.builtin_name = name.get<std::string>();
      if (b.contains("params")) s.builtin_params = b.at("params");
      validate_builtin(s);
      break;
    }
    case MapKind::piecewise: {
      const auto& p = require(j, "piecewise", "");
      const auto& regions = require(p, "regions", "piecewise.");
      if (!regions.is_array()) bad_field("piecewise.regions", "expected an array");
      for (std::size_t i = 0; i < regions.size(); ++i) {
        const std::string path = "piecewise.regions[" + std::to_string(i) + "]";
        PiecewiseRegion r;
        r.box = read_box(require(regions[i], "box", path + "."), path + ".box", s.dimension);
        r.image = read_points(require(regions[i], "image", path + "."), path + ".image", s.dimension);
        s.regions.push_back(std::move(r));
      }
      s.default_image = read_points(require(p, "default_image", "piecewise."), "piecewise.default_image", s.dimension);
      if (p.contains("convex_valued")) {
        if (!p.at("convex_valued").is_boolean()) bad_field("piecewise.convex_valued", "expected a boolean");
        s.convex_valued = p.at("convex_valued").get<bool>();
      }
      auto check_inside = [&](const std::vector<Point>& pts, const std::string& field) {
        for (const auto& q : pts)
          if (!s.domain.contains(q, kDefaultSignTol)) bad_field(field, "image point outside the domain");
      };
      for (std::size_t i = 0; i < s.regions.size(); ++i)
        check_inside(s.regions[i].image, "piecewise.regions[" + std::to_string(i) + "].image");
      check_inside(s.default_image, "piecewise.default_image");
      break;
    }
    case MapKind::bimatrix: {
      const auto& b = require(j, "bimatrix", "");
      s.payoff_a = read_matrix(require(b, "A", "bimatrix."), "bimatrix.A");
      s.payoff_b = read_matrix(require(b, "B", "bimatrix."), "bimatrix.B");
      break;
    }
  }
  return s;
}

nlohmann::ordered_json MapSpec::to_json() const {
  nlohmann::ordered_json j;
  j["dimension"] = dimension;
  j["domain"] = {{"lo", domain.lo}, {"hi", domain.hi}};
  switch (kind) {
    case MapKind::builtin:
      j["kind"] = "builtin";
      j["builtin"] = {{"name", builtin_name}, {"params", builtin_params}};
      break;
    case MapKind::piecewise: {
      j["kind"] = "piecewise";
      nlohmann::ordered_json regs = nlohmann::ordered_json::array();
      for (const auto& r : regions)
        regs.push_back({{"box", {{"lo", r.box.lo}, {"hi", r.box.hi}}}, {"image", points_json(r.image)}});
      j["piecewise"] = {{"regions", regs}, {"default_image", points_json(default_image)},
                        {"convex_valued", convex_valued}};
      break;
    }
    case MapKind::bimatrix:
      j["kind"] = "bimatrix";
      j["bimatrix"] = {{"A", payoff_a}, {"B", payoff_b}};
      break;
  }
  return j;
}

MapSpec MapSpec::builtin(std::string name, Box domain, json params) {
  json j{{"dimension", domain.lo.size()},
         {"domain", {{"lo", domain.lo}, {"hi", domain.hi}}},
         {"kind", "builtin"},
         {"builtin", {{"name", std::move(name)}, {"params", std::move(params)}}}};
  return from_json(j);
}

MapSpec MapSpec::bimatrix(const std::array<std::array<double, 2>, 2>& a,
                          const std::array<std::array<double, 2>, 2>& b) {
  json j{{"dimension", 2}, {"kind", "bimatrix"}, {"bimatrix", {{"A", a}, {"B", b}}}};
  return from_json(j);
}

// ---------------------------------------------------------------------------
// Building correspondences

Correspondence make_correspondence(const MapSpec& spec, double tol) {
  BoxDomain domain(spec.domain);
  switch (spec.kind) {
    case MapKind::bimatrix:
      return best_response_correspondence(spec.payoff_a, spec.payoff_b, tol);
    case MapKind::piecewise: {
      auto regions = spec.regions;
      auto fallback = spec.default_image;
      const bool convex = spec.convex_valued;
      return Correspondence(
          domain,
          [regions, fallback, convex](std::span<const double> z) {
            for (const auto& r : regions)
              if (r.box.contains(z)) return ConvexImage{r.image, convex};
            return ConvexImage{fallback, convex};
          },
          convex, tol);
    }
    case MapKind::builtin:
      break;
  }

  const auto& name = spec.builtin_name;
  const auto& params = spec.builtin_params;
  const auto d = static_cast<std::size_t>(spec.dimension);
  if (name == "constant") {
    const Point c = param_point(params, "point", domain.center());
    return Correspondence(domain, [c](std::span<const double>) { return ConvexImage{{c}}; }, true, tol);
  }
  if (name == "identity") {
    return Correspondence(
        domain, [](std::span<const double> z) { return ConvexImage{{Point(z.begin(), z.end())}}; }, true, tol);
  }
  if (name == "contraction") {
    const double factor = param(params, "factor", 0.5);
    const Point offset = param_point(params, "offset", Point(d, 0.0));
    return Correspondence(
        domain,
        [factor, offset](std::span<const double> z) {
          Point p(z.size());
          for (std::size_t i = 0; i < z.size(); ++i) p[i] = factor * z[i] + offset[i];
          return ConvexImage{{std::move(p)}};
        },
        true, tol);
  }
  if (name == "step-usc") {
    const StepParams p = step_params(spec);
    return Correspondence(
        domain,
        [p](std::span<const double> z) {
          if (z[0] < p.threshold) return ConvexImage{{{p.left}}};
          if (z[0] > p.threshold) return ConvexImage{{{p.right}}};
          return ConvexImage{{{p.right}, {p.left}}};
        },
        true, tol);
  }
  if (name == "step-lgdp") {
    const StepParams p = step_params(spec);
    return Correspondence(
        domain,
        [p](std::span<const double> z) { return ConvexImage{{{z[0] <= p.threshold ? p.left : p.right}}}; },
        true, tol);
  }
  throw InputError("map spec field 'builtin.name': unknown catalog map '" + name + "'");
}

std::optional<ConvexImage> image_hull_over_box(const MapSpec& spec, const Box& box) {
  if (box.dim() != spec.dimension) throw InputError("image_hull_over_box: dimension mismatch");
  switch (spec.kind) {
    case MapKind::bimatrix:
      return std::nullopt;
    case MapKind::piecewise: {
      ConvexImage out;
      bool covered = false;
      for (const auto& r : spec.regions) {
        if (!r.box.intersects(box)) continue;
        out.vertices.insert(out.vertices.end(), r.image.begin(), r.image.end());
        if (r.box.contains(box.lo) && r.box.contains(box.hi)) {
          covered = true;
          break;
        }
      }
      if (!covered) out.vertices.insert(out.vertices.end(), spec.default_image.begin(), spec.default_image.end());
      return out;
    }
    case MapKind::builtin:
      break;
  }
  const auto& name = spec.builtin_name;
  const auto& params = spec.builtin_params;
  if (name == "constant") return ConvexImage{{param_point(params, "point", BoxDomain(spec.domain).center())}};
  if (name == "identity") return ConvexImage{box.corners()};
  if (name == "contraction") {
    const double factor = param(params, "factor", 0.5);
    const Point offset = param_point(params, "offset", Point(box.lo.size(), 0.0));
    ConvexImage out;
    for (auto c : box.corners()) {
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = factor * c[i] + offset[i];
      out.vertices.push_back(std::move(c));
    }
    return out;
  }
  const StepParams p = step_params(spec);
  const double lo = box.lo[0], hi = box.hi[0];
  ConvexImage out;
  if (name == "step-usc") {
    if (lo < p.threshold || (lo <= p.threshold && hi >= p.threshold)) out.vertices.push_back({p.left});
    if (hi > p.threshold || (lo <= p.threshold && hi >= p.threshold)) out.vertices.push_back({p.right});
  } else {
    if (lo <= p.threshold) out.vertices.push_back({p.left});
    if (hi > p.threshold) out.vertices.push_back({p.right});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bimatrix best responses

Correspondence best_response_correspondence(const std::array<std::array<double, 2>, 2>& a,
                                            const std::array<std::array<double, 2>, 2>& b, double tie_tol) {
  for (const auto* m : {&a, &b})
    for (const auto& row : *m)
      for (double v : row)
        if (!std::isfinite(v)) throw InputError("payoff matrices must have finite entries");

  return Correspondence(
      BoxDomain::cube(2, 0.0, 1.0),
      [a, b, tie_tol](std::span<const double> z) {
        const double p = z[0], q = z[1];
        // Row player against column mix (q, 1-q).
        const double row1 = a[0][0] * q + a[0][1] * (1.0 - q);
        const double row2 = a[1][0] * q + a[1][1] * (1.0 - q);
        // Column player against row mix (p, 1-p).
        const double col1 = b[0][0] * p + b[1][0] * (1.0 - p);
        const double col2 = b[0][1] * p + b[1][1] * (1.0 - p);
        auto factor = [tie_tol](double first, double second) -> std::vector<double> {
          switch (sign_of(first - second, tie_tol)) {
            case 1: return {1.0};
            case -1: return {0.0};
            default: return {0.0, 1.0};
          }
        };
        ConvexImage img;
        for (double x : factor(row1, row2))
          for (double y : factor(col1, col2)) img.vertices.push_back({x, y});
        return img;
      },
      true, tie_tol);
}

// ---------------------------------------------------------------------------
// LGDP sampling

LgdpReport lgdp_sample_check(const Correspondence& f, std::span<const double> x, double delta, int samples,
                             std::uint64_t seed, double fix_tol) {
  if (!(delta > 0)) throw InputError("lgdp_sample_check: delta must be positive");
  if (samples < 1) throw InputError("lgdp_sample_check: samples must be positive");
  const auto center_img = f.evaluate(x);
  if (residual(x, center_img) <= fix_tol)
    throw InputError("lgdp_sample_check: " + format_point(x) + " is a fixed point");

  const auto& dom = f.domain();
  const auto d = static_cast<std::size_t>(f.dim());
  std::mt19937_64 rng(seed);
  std::vector<std::uniform_real_distribution<double>> axes;
  for (std::size_t i = 0; i < d; ++i) {
    const int a = static_cast<int>(i);
    axes.emplace_back(std::max(dom.lo(a), x[i] - delta), std::min(dom.hi(a), x[i] + delta));
  }

  std::vector<Point> points{Point(x.begin(), x.end())};
  const int max_attempts = 100 * samples;
  for (int attempt = 0; attempt < max_attempts && static_cast<int>(points.size()) <= samples; ++attempt) {
    Point y(d);
    double r2 = 0;
    for (std::size_t i = 0; i < d; ++i) {
      y[i] = axes[i](rng);
      r2 += (y[i] - x[i]) * (y[i] - x[i]);
    }
    if (r2 <= delta * delta) points.push_back(std::move(y));
  }

  std::vector<Point> displacements;
  std::vector<Point> images;
  for (const auto& y : points) {
    const auto img = f.evaluate(y);
    Point rep = representative(img);
    for (std::size_t i = 0; i < d; ++i) rep[i] -= y[i];
    displacements.push_back(std::move(rep));
    images.insert(images.end(), img.vertices.begin(), img.vertices.end());
  }

  LgdpReport report;
  report.samples = static_cast<int>(points.size());
  report.min_dot = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < displacements.size(); ++i)
    for (std::size_t k = i + 1; k < displacements.size(); ++k) {
      double s = 0;
      for (std::size_t c = 0; c < d; ++c) s += displacements[i][c] * displacements[k][c];
      report.min_dot = std::min(report.min_dot, s);
    }
  if (displacements.size() < 2) report.min_dot = 0;
  report.dot_product_pass = report.min_dot >= -1e-12;
  report.separation = separating_hyperplane(std::span<const Point>(points), std::span<const Point>(images));
  return report;
}

}  // namespace hyperlabel
