#include "hyperlabel/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <unordered_map>

#include "hyperlabel/degree.hpp"

namespace hyperlabel {

FilterMode parse_filter_mode(std::string_view name) {
  if (name == "off") return FilterMode::off;
  if (name == "piecewise-exact") return FilterMode::piecewise_exact;
  throw InputError("unknown filter '" + std::string(name) + "'");
}

std::string to_string(FilterMode mode) { return mode == FilterMode::off ? "off" : "piecewise-exact"; }

std::string to_string(CandidateKind kind) {
  switch (kind) {
    case CandidateKind::complete_cell: return "CompleteCell";
    case CandidateKind::problematic_face: return "ProblematicFace";
    case CandidateKind::fixed_vertex: return "FixedVertex";
  }
  return "?";
}

void SolverConfig::validate() const {
  if (initial_resolution < 2) throw InputError("initial resolution must be at least 2");
  if (max_depth < 1) throw InputError("max depth must be at least 1");
  if (refinement_factor < 2) throw InputError("refinement factor must be at least 2");
  if (!(fix_tol > 0) || !(sign_tol > 0)) throw InputError("tolerances must be positive");
  if (adaptive_radius < 0) throw InputError("adaptive radius must be non-negative");
  if (max_boxes < 1) throw InputError("max boxes must be positive");
}

LabelConfig SolverConfig::label_config() const {
  LabelConfig c;
  c.sign_tol = sign_tol;
  c.fix_tol = fix_tol;
  c.policy = policy;
  c.early_exit = false;
  c.threads = threads;
  return c;
}

nlohmann::ordered_json SolverConfig::to_json() const {
  nlohmann::ordered_json j;
  j["initial_resolution"] = initial_resolution;
  j["max_depth"] = max_depth;
  j["refinement_factor"] = refinement_factor;
  j["tolerance"] = fix_tol;
  j["sign_tolerance"] = sign_tol;
  j["face_mode"] = to_string(face_mode);
  j["filter"] = to_string(filter);
  j["adaptive_radius"] = adaptive_radius;
  j["policy"] = to_string(policy);
  j["seed"] = seed;
  j["global_pass"] = global_pass;
  j["max_boxes"] = max_boxes;
  return j;
}

// ---------------------------------------------------------------------------
// scan

namespace {

// face_safe on small label sets, memoised by membership mask.
class FaceOracle {
 public:
  FaceOracle(int dim, FaceMode mode) : dim_(dim), mode_(mode) {}

  bool safe(const std::vector<std::int32_t>& codes) {
    if (dim_ <= 6) {
      std::uint64_t mask = 0;
      for (auto c : codes) mask |= std::uint64_t{1} << c;
      if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
      return memo_[mask] = compute(codes);
    }
    return compute(codes);
  }

 private:
  bool compute(const std::vector<std::int32_t>& codes) const {
    LabelSet s(dim_);
    for (auto c : codes) s.insert(static_cast<std::uint32_t>(c));
    return face_safe(s, mode_);
  }

  int dim_;
  FaceMode mode_;
  std::unordered_map<std::uint64_t, bool> memo_;
};

double witness_residual(const Correspondence& f, const Point& w) { return residual(w, f.evaluate(w)); }

}  // namespace

std::vector<Candidate> scan(const GridLabeling& gl, const Correspondence& f, const SolverConfig& cfg, int depth) {
  if (!gl.complete()) throw InputError("scan: labelling is not total");
  const auto& g = gl.grid();
  const int d = g.dim();
  std::vector<Candidate> out;

  for (std::size_t flat : gl.fixed_vertices()) {
    Candidate c;
    c.kind = CandidateKind::fixed_vertex;
    c.index = g.vertex_index(flat);
    c.witness = g.vertex(c.index);
    c.location = Box{c.witness, c.witness};
    c.residual = gl.residual(flat);
    c.depth = depth;
    out.push_back(std::move(c));
  }

  for (auto& cell : completely_labeled_cells(gl)) {
    Candidate c;
    c.kind = CandidateKind::complete_cell;
    c.location = g.cell_box(cell);
    c.witness = c.location.center();
    c.residual = witness_residual(f, c.witness);
    c.index = std::move(cell.base);
    c.depth = depth;
    out.push_back(std::move(c));
  }

  FaceOracle oracle(d, cfg.face_mode);
  std::vector<std::int32_t> codes;
  const int n = g.resolution();
  for (std::size_t ci = 0; ci < g.cell_count(); ++ci) {
    const Cell cell{g.cell_index(ci)};
    for (int axis = 0; axis < d; ++axis) {
      for (int side : {-1, 1}) {
        // Each face once: the lower face of every cell plus upper faces on the top layer.
        if (side == 1 && cell.base[static_cast<std::size_t>(axis)] != n - 1) continue;
        const Face face{cell, axis, side};
        codes.clear();
        bool fixed = false;
        for (const auto& v : face_vertex_indices(g, face)) {
          const auto code = gl.code(v);
          if (code < 0) fixed = true;
          codes.push_back(code);
        }
        if (fixed || oracle.safe(codes)) continue;
        Candidate c;
        c.kind = CandidateKind::problematic_face;
        c.location = g.face_box(face);
        c.witness = c.location.center();
        c.residual = witness_residual(f, c.witness);
        c.index = cell.base;
        c.axis = axis;
        c.side = side;
        c.depth = depth;
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

void filter_spurious(std::vector<Candidate>& cands, const MapSpec& spec, const SolverConfig& cfg) {
  if (cfg.filter != FilterMode::piecewise_exact) return;
  for (auto& c : cands) {
    const auto hull = image_hull_over_box(spec, c.location);
    if (!hull) continue;
    const auto corners = c.location.corners();
    if (auto cert = separating_hyperplane(std::span<const Point>(corners), std::span<const Point>(hull->vertices)))
      c.spurious = std::move(cert);
  }
}

// ---------------------------------------------------------------------------
// refine

std::vector<Box> merge_boxes(std::vector<Box> boxes) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < boxes.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < boxes.size(); ++j)
        if (boxes[i].intersects(boxes[j])) {
          boxes[i] = boxes[i].hull_with(boxes[j]);
          boxes.erase(boxes.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
          break;
        }
  }
  std::sort(boxes.begin(), boxes.end(), [](const Box& a, const Box& b) {
    return std::tie(a.lo, a.hi) < std::tie(b.lo, b.hi);
  });
  return boxes;
}

namespace {

double grid_line(const GridSpec& g, int axis, long idx) {
  if (idx >= 0 && idx <= g.resolution()) return g.coord(axis, static_cast<int>(idx));
  return g.domain().lo(axis) + g.spacing(axis) * static_cast<double>(idx);
}

Box neighbourhood(const Candidate& c, const GridSpec& g, const BoxDomain& domain, int radius) {
  const int d = g.dim();
  Box b{Point(static_cast<std::size_t>(d)), Point(static_cast<std::size_t>(d))};
  for (int i = 0; i < d; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    const double h = g.spacing(i);
    const double lo_pos = (c.location.lo[iu] - g.domain().lo(i)) / h;
    const double hi_pos = (c.location.hi[iu] - g.domain().lo(i)) / h;
    long lo_idx = std::lround(std::floor(lo_pos + 1e-9));
    long hi_idx = std::lround(std::ceil(hi_pos - 1e-9));
    // A point on a grid line grows symmetrically; with no radius it keeps one cell.
    if (hi_idx < lo_idx) hi_idx = lo_idx;
    if (hi_idx == lo_idx && radius == 0) ++hi_idx;
    lo_idx -= radius;
    hi_idx += radius;
    b.lo[iu] = std::max(domain.lo(i), grid_line(g, i, lo_idx));
    b.hi[iu] = std::min(domain.hi(i), grid_line(g, i, hi_idx));
    if (!(b.lo[iu] < b.hi[iu])) {
      // A point candidate on the domain wall with zero radius: keep one cell.
      b.lo[iu] = std::max(domain.lo(i), b.hi[iu] - h);
      b.hi[iu] = std::min(domain.hi(i), b.lo[iu] + h);
    }
  }
  return b;
}

std::vector<const Candidate*> ranked_live(const std::vector<const Candidate*>& cands, int limit) {
  std::vector<const Candidate*> live;
  for (const auto* c : cands)
    if (c->live()) live.push_back(c);
  std::stable_sort(live.begin(), live.end(), [](const Candidate* a, const Candidate* b) {
    return std::tie(a->residual, a->witness) < std::tie(b->residual, b->witness);
  });
  if (static_cast<int>(live.size()) > limit) live.resize(static_cast<std::size_t>(limit));
  return live;
}

}  // namespace

std::vector<GridSpec> refine(const std::vector<Candidate>& cands, const GridSpec& g, const BoxDomain& domain,
                             const SolverConfig& cfg) {
  std::vector<const Candidate*> ptrs;
  for (const auto& c : cands) ptrs.push_back(&c);
  std::vector<Box> boxes;
  for (const auto* c : ranked_live(ptrs, cfg.max_boxes)) boxes.push_back(neighbourhood(*c, g, domain, cfg.adaptive_radius));
  std::vector<GridSpec> out;
  for (auto& b : merge_boxes(std::move(boxes)))
    out.emplace_back(BoxDomain(b), g.resolution() * cfg.refinement_factor);
  return out;
}

// ---------------------------------------------------------------------------
// solve

nlohmann::ordered_json SolveReport::to_json() const {
  nlohmann::ordered_json j;
  j["status"] = status;
  j["point"] = point;
  j["residual"] = residual;
  j["face_mode"] = face_mode;
  auto trace = nlohmann::ordered_json::array();
  for (const auto& t : depth_trace) {
    nlohmann::ordered_json e;
    e["depth"] = t.depth;
    e["resolution"] = t.resolution;
    e["complete_cells"] = t.complete_cells;
    e["problematic_faces"] = t.problematic_faces;
    e["fixed_vertices"] = t.fixed_vertices;
    e["best_residual"] = t.best_residual;
    trace.push_back(std::move(e));
  }
  j["depth_trace"] = std::move(trace);
  j["config"] = config.to_json();
  return j;
}

namespace {

constexpr double kMaxVerticesPerGrid = 2.5e7;

bool better(double res, const Point& w, double best_res, const Point& best_w) {
  return res < best_res || (res == best_res && w < best_w);
}

}  // namespace

SolveReport solve(const MapSpec& spec, const SolverConfig& cfg) {
  cfg.validate();
  const Correspondence f = make_correspondence(spec, cfg.sign_tol);
  const BoxDomain& domain = f.domain();
  const LabelConfig lcfg = cfg.label_config();
  const int d = f.dim();

  SolveReport report;
  report.config = cfg;
  report.face_mode = to_string(cfg.face_mode);
  double best_res = std::numeric_limits<double>::infinity();
  Point best_point;

  std::vector<GridSpec> grids{GridSpec(domain, cfg.initial_resolution)};
  int resolution = cfg.initial_resolution;
  for (int depth = 0; depth <= cfg.max_depth; ++depth) {
    if (depth > 0 && cfg.global_pass) grids.emplace_back(domain, resolution);

    std::vector<std::pair<GridSpec, std::vector<Candidate>>> rounds;
    DepthTrace trace;
    trace.depth = depth;
    trace.resolution = resolution;
    for (const auto& g : grids) {
      auto cands = scan(label_grid(g, f, lcfg), f, cfg, depth);
      filter_spurious(cands, spec, cfg);
      for (const auto& c : cands) {
        switch (c.kind) {
          case CandidateKind::complete_cell: ++trace.complete_cells; break;
          case CandidateKind::problematic_face: ++trace.problematic_faces; break;
          case CandidateKind::fixed_vertex: ++trace.fixed_vertices; break;
        }
        if (better(c.residual, c.witness, best_res, best_point)) best_res = c.residual, best_point = c.witness;
      }
      rounds.emplace_back(g, std::move(cands));
    }

    std::size_t total = 0;
    for (const auto& r : rounds) total += r.second.size();
    if (depth == 0 && total == 0)
      throw SolverAbort("no candidates — check u.s.c./domain mapping (face mode " + to_string(cfg.face_mode) + ")");
    trace.best_residual = best_res;
    report.depth_trace.push_back(trace);

    if (best_res <= cfg.fix_tol || depth == cfg.max_depth) break;

    // Keep the best live candidates over all grids of this round.
    std::vector<const Candidate*> all;
    for (const auto& r : rounds)
      for (const auto& c : r.second) all.push_back(&c);
    const auto keep = ranked_live(all, cfg.max_boxes);
    if (keep.empty()) break;

    const int next_resolution = resolution * cfg.refinement_factor;
    if (std::pow(next_resolution + 1.0, d) > kMaxVerticesPerGrid) break;

    std::vector<Box> boxes;
    for (const auto& [g, cands] : rounds)
      for (const auto& c : cands)
        if (std::find(keep.begin(), keep.end(), &c) != keep.end())
          boxes.push_back(neighbourhood(c, g, domain, cfg.adaptive_radius));
    grids.clear();
    for (auto& b : merge_boxes(std::move(boxes))) grids.emplace_back(BoxDomain(b), next_resolution);
    resolution = next_resolution;
  }

  report.point = best_point;
  report.residual = best_res;
  report.status = best_res <= cfg.fix_tol ? "fixed_point_found" : "best_candidate_returned";
  return report;
}

}  // namespace hyperlabel
