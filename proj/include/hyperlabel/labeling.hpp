#ifndef HYPERLABEL_LABELING_HPP
#define HYPERLABEL_LABELING_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "hyperlabel/correspondence.hpp"
#include "hyperlabel/geometry.hpp"

namespace hyperlabel {

struct LabelConfig {
  double sign_tol = kDefaultSignTol;
  double fix_tol = 1e-7;
  RepresentativePolicy policy = RepresentativePolicy::centroid;
  /// Stop at the first fixed hit (forces sequential labelling).
  bool early_exit = false;
  unsigned threads = 1;
};

struct FixedHit {
  Point point;
  double residual = 0.0;
};

/// Either an orthant label or a detected fixed point.
using VertexLabel = std::variant<OrthantLabel, FixedHit>;

/// All labels whose signs agree with every nonzero sign of dz.
std::vector<OrthantLabel> admissible_labels(std::span<const double> dz, double sign_tol);

/// Orthant-sign labelling rule for one vertex.  Walls in the carrier of z
/// force the inward sign; remaining free coordinates prefer +1.
VertexLabel choose_label(std::span<const double> z, const ConvexImage& img, const BoxDomain& dom,
                         const LabelConfig& cfg = {});

/// Labels of every vertex of a grid.  Codes are label bits, kFixed for a
/// fixed hit, or kUnlabeled for vertices skipped after an early exit.
class GridLabeling {
 public:
  static constexpr std::int32_t kFixed = -1;
  static constexpr std::int32_t kUnlabeled = -2;

  GridLabeling(GridSpec grid, std::vector<std::int32_t> codes, std::vector<double> residuals);

  const GridSpec& grid() const { return grid_; }
  int dim() const { return grid_.dim(); }
  std::int32_t code(std::size_t flat) const { return codes_[flat]; }
  std::int32_t code(std::span<const int> vertex) const { return codes_[grid_.vertex_flat(vertex)]; }
  double residual(std::size_t flat) const { return residuals_[flat]; }
  bool is_fixed(std::size_t flat) const { return codes_[flat] == kFixed; }
  bool complete() const;
  std::optional<OrthantLabel> label(std::size_t flat) const;
  std::vector<std::size_t> fixed_vertices() const;

  const std::vector<std::int32_t>& codes() const { return codes_; }
  const std::vector<double>& residuals() const { return residuals_; }

  friend bool operator==(const GridLabeling&, const GridLabeling&) = default;

 private:
  GridSpec grid_;
  std::vector<std::int32_t> codes_;
  std::vector<double> residuals_;
};

/// Labels every vertex of g.  The grid must lie inside f's domain; carrier
/// forcing applies only on walls of f's domain.
GridLabeling label_grid(const GridSpec& g, const Correspondence& f, const LabelConfig& cfg = {});

/// One row per vertex: i1..id, x1..xd, s1..sd, is_fixed, residual (with a
/// header row).  Signs are empty for fixed vertices.
void write_grid_csv(std::ostream& out, const GridLabeling& gl);

}  // namespace hyperlabel

#endif  // HYPERLABEL_LABELING_HPP
