#ifndef HYPERLABEL_SOLVER_HPP
#define HYPERLABEL_SOLVER_HPP

// Fixed-point search over labelled cubical grids.
//
// Each round labels one or more grids, collects candidates (completely
// labelled cells, faces whose label set is not a hyperplane set, and
// vertices where the map already hits itself), scores them by residual,
// and re-grids a neighbourhood of every live candidate at a finer
// resolution.  Residual, not candidacy, decides what is reported.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperlabel/correspondence.hpp"
#include "hyperlabel/dcn.hpp"
#include "hyperlabel/geometry.hpp"
#include "hyperlabel/labeling.hpp"

namespace hyperlabel {

enum class FilterMode { off, piecewise_exact };
FilterMode parse_filter_mode(std::string_view name);
std::string to_string(FilterMode mode);

struct SolverConfig {
  int initial_resolution = 8;
  int max_depth = 8;  // refinement rounds after the initial grid
  int refinement_factor = 2;
  double fix_tol = 1e-7;
  double sign_tol = kDefaultSignTol;
  FaceMode face_mode = FaceMode::equality;
  FilterMode filter = FilterMode::off;
  int adaptive_radius = 2;  // in cells of the parent grid
  RepresentativePolicy policy = RepresentativePolicy::centroid;
  std::uint64_t seed = 0;
  /// Also label the whole domain at every depth.
  bool global_pass = false;
  /// Live candidates refined per round, best residual first.
  int max_boxes = 64;
  unsigned threads = 1;

  void validate() const;
  LabelConfig label_config() const;
  nlohmann::ordered_json to_json() const;
};

enum class CandidateKind { complete_cell, problematic_face, fixed_vertex };
std::string to_string(CandidateKind kind);

struct Candidate {
  CandidateKind kind = CandidateKind::complete_cell;
  Box location;   // cell box, face box, or degenerate point box
  Point witness;  // centre of the location
  double residual = 0.0;
  int depth = 0;
  /// Cell base, face base-cell, or vertex multi-index in the scanned grid.
  Index index;
  int axis = -1;  // face normal axis; -1 otherwise
  int side = 0;   // face side within its cell
  std::optional<SeparationCertificate> spurious;  // set by filter_spurious

  bool live() const { return !spurious.has_value(); }
};

/// Every fixed-hit vertex, completely labelled cell and unsafe face of a
/// total labelling, with residuals at their witness points.  Faces shared
/// by two cells are reported once, attached to the lower cell.
std::vector<Candidate> scan(const GridLabeling& gl, const Correspondence& f, const SolverConfig& cfg,
                            int depth = 0);

/// Marks candidates whose location box is separated from the image hull
/// over that box; such boxes contain no fixed point.
void filter_spurious(std::vector<Candidate>& cands, const MapSpec& spec, const SolverConfig& cfg);

/// Sub-grids to re-solve: each live candidate's location grown by
/// adaptive_radius cells, snapped outward to grid lines, clipped to the map
/// domain, overlapping boxes merged; resolution multiplied by the factor.
std::vector<GridSpec> refine(const std::vector<Candidate>& cands, const GridSpec& g, const BoxDomain& domain,
                             const SolverConfig& cfg);

/// Repeatedly replaces overlapping (closed) boxes by their bounding box;
/// output sorted by lower corner.
std::vector<Box> merge_boxes(std::vector<Box> boxes);

struct DepthTrace {
  int depth = 0;
  int resolution = 0;
  int complete_cells = 0;
  int problematic_faces = 0;
  int fixed_vertices = 0;
  double best_residual = 0.0;
};

struct SolveReport {
  std::string status;  // "fixed_point_found" or "best_candidate_returned"
  Point point;
  double residual = 0.0;
  std::string face_mode;
  std::vector<DepthTrace> depth_trace;
  SolverConfig config;

  nlohmann::ordered_json to_json() const;
};

SolveReport solve(const MapSpec& spec, const SolverConfig& cfg);

}  // namespace hyperlabel

#endif  // HYPERLABEL_SOLVER_HPP
