#ifndef HYPERLABEL_GEOMETRY_HPP
#define HYPERLABEL_GEOMETRY_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hyperlabel {

using Point = std::vector<double>;
using Index = std::vector<int>;

/// Largest ambient dimension supported by the orthant label encoding.
inline constexpr int kMaxDim = 16;
inline constexpr double kDefaultSignTol = 1e-9;

//------------------------------------------------------------------------------
// Errors.  Input problems map to exit code 2 in the CLI, aborts to 1.
//------------------------------------------------------------------------------
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

/// A map evaluated to an empty image or left its domain.
class MapError : public InputError {
 public:
  using InputError::InputError;
};

class SolverAbort : public Error {
 public:
  using Error::Error;
};

/// Returns 0 iff |x| <= tol, otherwise the strict sign of x.
int sign_of(double x, double tol);

std::string format_point(std::span<const double> p);

//------------------------------------------------------------------------------
// OrthantLabel: a sign vector in {-1,+1}^d naming the closed orthant
// {x : x_i * l_i >= 0}.  Encoded as bits, coordinate 1 is the most
// significant bit and a set bit means -1; index() = bits + 1.
//------------------------------------------------------------------------------
class OrthantLabel {
 public:
  explicit OrthantLabel(std::vector<int> signs);

  static OrthantLabel from_index(int index, int dim);
  static OrthantLabel from_bits(std::uint32_t bits, int dim);
  /// Parses a sign string such as "+-+".
  static OrthantLabel parse(std::string_view text);

  int dim() const { return static_cast<int>(signs_.size()); }
  int operator[](int axis) const { return signs_[static_cast<std::size_t>(axis)]; }
  const std::vector<int>& signs() const { return signs_; }

  std::uint32_t bits() const;
  int index() const { return static_cast<int>(bits()) + 1; }
  std::string str() const;

  friend bool operator==(const OrthantLabel&, const OrthantLabel&) = default;
  friend auto operator<=>(const OrthantLabel& a, const OrthantLabel& b) {
    return a.bits() <=> b.bits();
  }

 private:
  std::vector<int> signs_;
};

inline std::uint32_t label_bit(int axis, int dim) {
  return std::uint32_t{1} << (dim - 1 - axis);
}

//------------------------------------------------------------------------------
// Boxes.
//------------------------------------------------------------------------------

/// Closed axis-aligned box, possibly degenerate (lo_i <= hi_i).
struct Box {
  Point lo;
  Point hi;

  int dim() const { return static_cast<int>(lo.size()); }
  Point center() const;
  /// Corners in bit order: bit j of the corner number selects hi on axis j.
  std::vector<Point> corners() const;
  bool contains(std::span<const double> z, double tol = 0.0) const;
  bool intersects(const Box& other) const;
  Box hull_with(const Box& other) const;

  friend bool operator==(const Box&, const Box&) = default;
};

/// The domain of a map: a box with lo_i < hi_i on every axis.
class BoxDomain {
 public:
  BoxDomain(Point lo, Point hi);
  explicit BoxDomain(const Box& box) : BoxDomain(box.lo, box.hi) {}

  static BoxDomain cube(int dim, double lo, double hi);

  int dim() const { return static_cast<int>(box_.lo.size()); }
  const Point& lo() const { return box_.lo; }
  const Point& hi() const { return box_.hi; }
  double lo(int axis) const { return box_.lo[static_cast<std::size_t>(axis)]; }
  double hi(int axis) const { return box_.hi[static_cast<std::size_t>(axis)]; }
  double edge(int axis) const { return hi(axis) - lo(axis); }
  const Box& box() const { return box_; }
  Point center() const { return box_.center(); }
  bool contains(std::span<const double> z, double tol = 0.0) const {
    return box_.contains(z, tol);
  }

  friend bool operator==(const BoxDomain&, const BoxDomain&) = default;

 private:
  Box box_;
};

//------------------------------------------------------------------------------
// Uniform cubical grids.  Vertices carry multi-indices in {0..N}^d, cells
// carry base indices in {0..N-1}^d.  Flat numbering is row-major with axis 0
// slowest.
//------------------------------------------------------------------------------
struct Cell {
  Index base;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct Face {
  Cell cell;
  int axis = 0;  // 0-based
  int side = -1;  // -1 = lower wall of the cell along axis, +1 = upper
  friend auto operator<=>(const Face&, const Face&) = default;
};

class GridSpec {
 public:
  GridSpec(BoxDomain domain, int resolution);

  const BoxDomain& domain() const { return domain_; }
  int resolution() const { return resolution_; }
  int dim() const { return domain_.dim(); }

  /// Lattice coordinate lo + i (hi - lo) / N, exact at i = 0 and i = N.
  double coord(int axis, int i) const;
  Point vertex(std::span<const int> index) const;
  double spacing(int axis) const { return domain_.edge(axis) / resolution_; }
  double cell_diameter() const;

  std::size_t vertex_count() const;
  std::size_t cell_count() const;
  std::size_t vertex_flat(std::span<const int> index) const;
  Index vertex_index(std::size_t flat) const;
  Index cell_index(std::size_t flat) const;

  bool valid_cell(const Cell& c) const;
  bool on_domain_wall(std::span<const int> vertex) const;
  Box cell_box(const Cell& c) const;
  Box face_box(const Face& f) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  BoxDomain domain_;
  int resolution_;
};

/// Vertex multi-indices of a cell, in corner-bit order.
std::vector<Index> cell_vertex_indices(const GridSpec& g, const Cell& c);
std::vector<Point> cell_vertices(const GridSpec& g, const Cell& c);
std::vector<Face> cell_faces(const Cell& c);
std::vector<Index> face_vertex_indices(const GridSpec& g, const Face& f);
std::vector<Point> face_vertices(const GridSpec& g, const Face& f);

/// Smallest box face containing z: s_i = +1 near hi_i, -1 near lo_i, else 0.
std::vector<int> carrier(std::span<const double> z, const BoxDomain& dom, double tol);

/// Inward label of a domain corner: l_i = -sign(v_i - center_i).
OrthantLabel corner_label(std::span<const double> v, const BoxDomain& dom,
                          double tol = kDefaultSignTol);

}  // namespace hyperlabel

#endif  // HYPERLABEL_GEOMETRY_HPP
