#include "hyperlabel/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace hyperlabel {

int sign_of(double x, double tol) {
  if (std::abs(x) <= tol) return 0;
  return x > 0 ? 1 : -1;
}

std::string format_point(std::span<const double> p) {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", p[i]);
    if (i) out += ", ";
    out += buf;
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// OrthantLabel

OrthantLabel::OrthantLabel(std::vector<int> signs) : signs_(std::move(signs)) {
  if (signs_.empty() || static_cast<int>(signs_.size()) > kMaxDim)
    throw InputError("orthant label dimension out of range");
  for (int s : signs_)
    if (s != 1 && s != -1) throw InputError("orthant label entries must be +1 or -1");
}

OrthantLabel OrthantLabel::from_bits(std::uint32_t bits, int dim) {
  if (dim < 1 || dim > kMaxDim) throw InputError("orthant label dimension out of range");
  if (bits >> dim) throw InputError("orthant label index out of range");
  std::vector<int> signs(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) signs[static_cast<std::size_t>(i)] = (bits & label_bit(i, dim)) ? -1 : 1;
  return OrthantLabel(std::move(signs));
}

OrthantLabel OrthantLabel::from_index(int index, int dim) {
  if (dim < 1 || dim > kMaxDim) throw InputError("orthant label dimension out of range");
  if (index < 1 || index > (1 << dim))
    throw InputError("orthant label index " + std::to_string(index) + " out of range 1.." +
                     std::to_string(1 << dim));
  return from_bits(static_cast<std::uint32_t>(index - 1), dim);
}

OrthantLabel OrthantLabel::parse(std::string_view text) {
  std::vector<int> signs;
  for (char c : text) {
    if (c == '+')
      signs.push_back(1);
    else if (c == '-')
      signs.push_back(-1);
    else if (c == ' ' || c == '(' || c == ')' || c == ',')
      continue;
    else
      throw InputError("bad sign character '" + std::string(1, c) + "' in label '" +
                       std::string(text) + "'");
  }
  return OrthantLabel(std::move(signs));
}

std::uint32_t OrthantLabel::bits() const {
  std::uint32_t b = 0;
  for (int i = 0; i < dim(); ++i)
    if (signs_[static_cast<std::size_t>(i)] < 0) b |= label_bit(i, dim());
  return b;
}

std::string OrthantLabel::str() const {
  std::string s;
  for (int v : signs_) s += v > 0 ? '+' : '-';
  return s;
}

// ---------------------------------------------------------------------------
// Box / BoxDomain

Point Box::center() const {
  Point c(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
  return c;
}

std::vector<Point> Box::corners() const {
  const int d = dim();
  std::vector<Point> out;
  out.reserve(std::size_t{1} << d);
  for (std::uint32_t k = 0; k < (std::uint32_t{1} << d); ++k) {
    Point p(lo.size());
    for (int j = 0; j < d; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      p[ju] = ((k >> j) & 1u) ? hi[ju] : lo[ju];
    }
    out.push_back(std::move(p));
  }
  return out;
}

bool Box::contains(std::span<const double> z, double tol) const {
  if (z.size() != lo.size()) return false;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (!(z[i] >= lo[i] - tol && z[i] <= hi[i] + tol)) return false;
  return true;
}

bool Box::intersects(const Box& other) const {
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (other.hi[i] < lo[i] || other.lo[i] > hi[i]) return false;
  return true;
}

Box Box::hull_with(const Box& other) const {
  Box out = *this;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    out.lo[i] = std::min(lo[i], other.lo[i]);
    out.hi[i] = std::max(hi[i], other.hi[i]);
  }
  return out;
}

BoxDomain::BoxDomain(Point lo, Point hi) : box_{std::move(lo), std::move(hi)} {
  if (box_.lo.empty() || static_cast<int>(box_.lo.size()) > kMaxDim)
    throw InputError("domain dimension must be in 1.." + std::to_string(kMaxDim));
  if (box_.lo.size() != box_.hi.size()) throw InputError("domain lo/hi dimension mismatch");
  for (std::size_t i = 0; i < box_.lo.size(); ++i) {
    if (!std::isfinite(box_.lo[i]) || !std::isfinite(box_.hi[i]))
      throw InputError("domain bounds must be finite");
    if (!(box_.lo[i] < box_.hi[i]))
      throw InputError("domain requires lo < hi on axis " + std::to_string(i + 1));
  }
}

BoxDomain BoxDomain::cube(int dim, double lo, double hi) {
  return BoxDomain(Point(static_cast<std::size_t>(dim), lo), Point(static_cast<std::size_t>(dim), hi));
}

// ---------------------------------------------------------------------------
// GridSpec

GridSpec::GridSpec(BoxDomain domain, int resolution)
    : domain_(std::move(domain)), resolution_(resolution) {
  if (resolution_ < 1) throw InputError("grid resolution must be positive");
  const double total = std::pow(static_cast<double>(resolution_) + 1.0, dim());
  if (total > 1e9) throw InputError("grid too large: (N+1)^d exceeds 1e9 vertices");
}

double GridSpec::coord(int axis, int i) const {
  if (i == 0) return domain_.lo(axis);
  if (i == resolution_) return domain_.hi(axis);
  return domain_.lo(axis) + domain_.edge(axis) * static_cast<double>(i) / resolution_;
}

Point GridSpec::vertex(std::span<const int> index) const {
  Point p(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) p[i] = coord(static_cast<int>(i), index[i]);
  return p;
}

double GridSpec::cell_diameter() const {
  double m = 0;
  for (int i = 0; i < dim(); ++i) m = std::max(m, spacing(i));
  return m;
}

std::size_t GridSpec::vertex_count() const {
  std::size_t n = 1;
  for (int i = 0; i < dim(); ++i) n *= static_cast<std::size_t>(resolution_ + 1);
  return n;
}

std::size_t GridSpec::cell_count() const {
  std::size_t n = 1;
  for (int i = 0; i < dim(); ++i) n *= static_cast<std::size_t>(resolution_);
  return n;
}

std::size_t GridSpec::vertex_flat(std::span<const int> index) const {
  std::size_t flat = 0;
  for (int v : index) flat = flat * static_cast<std::size_t>(resolution_ + 1) + static_cast<std::size_t>(v);
  return flat;
}

Index GridSpec::vertex_index(std::size_t flat) const {
  Index idx(static_cast<std::size_t>(dim()));
  const auto n = static_cast<std::size_t>(resolution_ + 1);
  for (int i = dim() - 1; i >= 0; --i) {
    idx[static_cast<std::size_t>(i)] = static_cast<int>(flat % n);
    flat /= n;
  }
  return idx;
}

Index GridSpec::cell_index(std::size_t flat) const {
  Index idx(static_cast<std::size_t>(dim()));
  const auto n = static_cast<std::size_t>(resolution_);
  for (int i = dim() - 1; i >= 0; --i) {
    idx[static_cast<std::size_t>(i)] = static_cast<int>(flat % n);
    flat /= n;
  }
  return idx;
}

bool GridSpec::valid_cell(const Cell& c) const {
  if (static_cast<int>(c.base.size()) != dim()) return false;
  return std::all_of(c.base.begin(), c.base.end(),
                     [&](int b) { return b >= 0 && b < resolution_; });
}

bool GridSpec::on_domain_wall(std::span<const int> vertex) const {
  return std::any_of(vertex.begin(), vertex.end(),
                     [&](int v) { return v == 0 || v == resolution_; });
}

Box GridSpec::cell_box(const Cell& c) const {
  if (!valid_cell(c)) throw InputError("cell index out of range");
  Box b{Point(c.base.size()), Point(c.base.size())};
  for (std::size_t i = 0; i < c.base.size(); ++i) {
    b.lo[i] = coord(static_cast<int>(i), c.base[i]);
    b.hi[i] = coord(static_cast<int>(i), c.base[i] + 1);
  }
  return b;
}

Box GridSpec::face_box(const Face& f) const {
  Box b = cell_box(f.cell);
  const auto a = static_cast<std::size_t>(f.axis);
  if (f.side < 0)
    b.hi[a] = b.lo[a];
  else
    b.lo[a] = b.hi[a];
  return b;
}

std::vector<Index> cell_vertex_indices(const GridSpec& g, const Cell& c) {
  if (!g.valid_cell(c)) throw InputError("cell index out of range");
  const int d = g.dim();
  std::vector<Index> out;
  out.reserve(std::size_t{1} << d);
  for (std::uint32_t k = 0; k < (std::uint32_t{1} << d); ++k) {
    Index v = c.base;
    for (int j = 0; j < d; ++j) v[static_cast<std::size_t>(j)] += static_cast<int>((k >> j) & 1u);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Point> cell_vertices(const GridSpec& g, const Cell& c) {
  std::vector<Point> out;
  for (const auto& v : cell_vertex_indices(g, c)) out.push_back(g.vertex(v));
  return out;
}

std::vector<Face> cell_faces(const Cell& c) {
  std::vector<Face> out;
  for (int a = 0; a < static_cast<int>(c.base.size()); ++a) {
    out.push_back(Face{c, a, -1});
    out.push_back(Face{c, a, +1});
  }
  return out;
}

std::vector<Index> face_vertex_indices(const GridSpec& g, const Face& f) {
  if (f.axis < 0 || f.axis >= g.dim() || (f.side != -1 && f.side != 1))
    throw InputError("bad face axis/side");
  std::vector<Index> out;
  for (auto& v : cell_vertex_indices(g, f.cell)) {
    const int offset = v[static_cast<std::size_t>(f.axis)] - f.cell.base[static_cast<std::size_t>(f.axis)];
    if ((f.side < 0 && offset == 0) || (f.side > 0 && offset == 1)) out.push_back(std::move(v));
  }
  return out;
}

std::vector<Point> face_vertices(const GridSpec& g, const Face& f) {
  std::vector<Point> out;
  for (const auto& v : face_vertex_indices(g, f)) out.push_back(g.vertex(v));
  return out;
}

std::vector<int> carrier(std::span<const double> z, const BoxDomain& dom, double tol) {
  if (static_cast<int>(z.size()) != dom.dim()) throw InputError("carrier: dimension mismatch");
  if (!dom.contains(z, tol))
    throw InputError("carrier: point " + format_point(z) + " outside domain");
  std::vector<int> s(z.size(), 0);
  for (int i = 0; i < dom.dim(); ++i) {
    const auto iu = static_cast<std::size_t>(i);
    if (z[iu] >= dom.hi(i) - tol)
      s[iu] = 1;
    else if (z[iu] <= dom.lo(i) + tol)
      s[iu] = -1;
  }
  return s;
}

OrthantLabel corner_label(std::span<const double> v, const BoxDomain& dom, double tol) {
  const auto s = carrier(v, dom, tol);
  std::vector<int> signs(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == 0) throw InputError("corner_label: " + format_point(v) + " is not a domain corner");
    signs[i] = -s[i];
  }
  return OrthantLabel(std::move(signs));
}

}  // namespace hyperlabel
