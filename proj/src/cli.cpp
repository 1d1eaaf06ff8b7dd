#include "hyperlabel/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hyperlabel/dcn.hpp"
#include "hyperlabel/degree.hpp"
#include "hyperlabel/labeling.hpp"
#include "hyperlabel/solver.hpp"

namespace hyperlabel::cli {
namespace {

using Matrix2 = std::array<std::array<double, 2>, 2>;

struct Options {
  std::string map_path;
  std::string game;
  std::string a_literal, b_literal;
  std::string report_path;
  std::string dump_grid_path;
  std::string emit_map_path;
  std::string labeling_path;
  std::string face_mode = "equality";
  std::string filter = "off";
  std::string policy = "centroid";
  std::string set_text;
  int dim = 0;
  SolverConfig solver;
};

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

Matrix2 parse_matrix(const std::string& text, const char* flag) {
  std::string cleaned = text;
  for (auto& c : cleaned)
    if (c == ';' || c == ',' || c == '[' || c == ']') c = ' ';
  std::istringstream in(cleaned);
  std::vector<double> values;
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw InputError(std::string(flag) + ": bad number '" + token + "'");
    }
  }
  if (values.size() != 4) throw InputError(std::string(flag) + ": expected 4 row-major entries of a 2x2 matrix");
  return {{{values[0], values[1]}, {values[2], values[3]}}};
}

MapSpec game_spec(const Options& o) {
  if (!o.game.empty()) {
    if (o.game == "matching-pennies") return MapSpec::bimatrix({{{1, -1}, {-1, 1}}}, {{{-1, 1}, {1, -1}}});
    if (o.game == "coordination") return MapSpec::bimatrix({{{1, 0}, {0, 1}}}, {{{1, 0}, {0, 1}}});
    throw InputError("--game: unknown game '" + o.game + "'");
  }
  if (o.a_literal.empty() || o.b_literal.empty()) throw InputError("game needs --game or both --A and --B");
  return MapSpec::bimatrix(parse_matrix(o.a_literal, "--A"), parse_matrix(o.b_literal, "--B"));
}

MapSpec load_spec(const Options& o) {
  if (!o.map_path.empty()) return MapSpec::from_json(read_json_file(o.map_path));
  if (!o.game.empty() || !o.a_literal.empty()) return game_spec(o);
  throw InputError("--map is required");
}

SolverConfig solver_config(const Options& o) {
  SolverConfig cfg = o.solver;
  cfg.face_mode = parse_face_mode(o.face_mode);
  cfg.filter = parse_filter_mode(o.filter);
  cfg.policy = parse_policy(o.policy);
  cfg.validate();
  return cfg;
}

void emit_report(const SolveReport& report, const Options& o, std::ostream& out) {
  const std::string text = report.to_json().dump(2) + "\n";
  if (o.report_path.empty()) {
    out << text;
  } else {
    write_text_file(o.report_path, text);
    out << "status=" << report.status << " point=" << format_point(report.point) << " residual=" << report.residual
        << "\n";
  }
}

void dump_grid(const MapSpec& spec, const SolverConfig& cfg, const std::string& path) {
  const auto f = make_correspondence(spec, cfg.sign_tol);
  const auto gl = label_grid(GridSpec(f.domain(), cfg.initial_resolution), f, cfg.label_config());
  std::ostringstream csv;
  write_grid_csv(csv, gl);
  write_text_file(path, csv.str());
}

int cmd_solve(const Options& o, std::ostream& out) {
  const auto spec = load_spec(o);
  const auto cfg = solver_config(o);
  if (!o.dump_grid_path.empty()) dump_grid(spec, cfg, o.dump_grid_path);
  emit_report(solve(spec, cfg), o, out);
  return 0;
}

int cmd_label(const Options& o, std::ostream& out) {
  const auto spec = load_spec(o);
  const auto cfg = solver_config(o);
  const auto f = make_correspondence(spec, cfg.sign_tol);
  const auto gl = label_grid(GridSpec(f.domain(), cfg.initial_resolution), f, cfg.label_config());
  if (!o.dump_grid_path.empty()) {
    std::ostringstream csv;
    write_grid_csv(csv, gl);
    write_text_file(o.dump_grid_path, csv.str());
  }
  const auto cands = scan(gl, f, cfg);
  int cells = 0, faces = 0, fixed = 0;
  for (const auto& c : cands) {
    cells += c.kind == CandidateKind::complete_cell;
    faces += c.kind == CandidateKind::problematic_face;
    fixed += c.kind == CandidateKind::fixed_vertex;
  }
  out << "vertices=" << gl.grid().vertex_count() << " complete_cells=" << cells << " problematic_faces=" << faces
      << " fixed_vertices=" << fixed << " face_mode=" << to_string(cfg.face_mode) << "\n";
  return 0;
}

int cmd_dcn(const Options& o, std::ostream& out) {
  if (o.dim < 1 || o.dim > kMaxDim) throw InputError("--d must be in 1.." + std::to_string(kMaxDim));
  const auto s = LabelSet::parse(o.set_text, o.dim);
  if (s.empty()) throw InputError("--set: empty label set");
  if (const auto w = dcn_witness(s))
    out << "dcn=true witness=" << w->sigma.str() << " cut=" << (w->cut_included ? "included" : "excluded") << "\n";
  else
    out << "dcn=false\n";
  out << "face_safe equality=" << (face_safe(s, FaceMode::equality) ? "true" : "false")
      << " subcube=" << (face_safe(s, FaceMode::subcube) ? "true" : "false") << "\n";
  if (const auto ext = dcn_extension(s))
    out << "extension={" << ext->str() << "}\n";
  else
    out << "extension=none\n";
  return 0;
}

int cmd_degree(const Options& o, std::ostream& out) {
  const auto t = LabeledTriangulation::from_json(read_json_file(o.labeling_path));
  const auto r = boundary_degree_2d(boundary_cycle(t), t.n);
  out << r.degree << "\n";
  if (r.orientation_ambiguous) out << "orientation_ambiguous\n";
  return 0;
}

int cmd_sperner(const Options& o, std::ostream& out) {
  const auto t = LabeledTriangulation::from_json(read_json_file(o.labeling_path));
  if (t.polygon.size() == 3) out << "sperner_valid=" << (sperner_valid(t) ? "true" : "false") << "\n";
  out << "nondegenerate=" << (nondegenerate_valid(t, t.n) ? "true" : "false") << "\n";
  const auto tris = completely_labeled_triangles(t);
  out << "completely_labeled=" << tris.size() << " [";
  for (std::size_t i = 0; i < tris.size(); ++i) out << (i ? "," : "") << tris[i];
  out << "]\n";
  return 0;
}

int cmd_game(const Options& o, std::ostream& out) {
  const auto spec = game_spec(o);
  const auto cfg = solver_config(o);
  const auto report = solve(spec, cfg);
  if (o.emit_map_path.empty() && o.report_path.empty()) {
    nlohmann::ordered_json j;
    j["map"] = spec.to_json();
    j["report"] = report.to_json();
    out << j.dump(2) << "\n";
    return 0;
  }
  const std::string map_text = spec.to_json().dump(2) + "\n";
  if (o.emit_map_path.empty())
    out << map_text;
  else
    write_text_file(o.emit_map_path, map_text);
  emit_report(report, o, out);
  return 0;
}

void add_solver_flags(CLI::App* sub, Options& o) {
  sub->add_option("--tol", o.solver.fix_tol, "fixed-point tolerance");
  sub->add_option("--initial-res", o.solver.initial_resolution, "initial grid resolution N0");
  sub->add_option("--max-depth", o.solver.max_depth, "refinement rounds");
  sub->add_option("--factor", o.solver.refinement_factor, "resolution multiplier per round");
  sub->add_option("--radius", o.solver.adaptive_radius, "refinement radius in cells");
  sub->add_option("--sign-tol", o.solver.sign_tol, "sign tolerance");
  sub->add_option("--face-mode", o.face_mode, "equality|subcube");
  sub->add_option("--filter", o.filter, "off|piecewise-exact");
  sub->add_option("--policy", o.policy, "centroid|first");
  sub->add_option("--seed", o.solver.seed, "seed");
  sub->add_option("--max-boxes", o.solver.max_boxes, "live candidates refined per round");
  sub->add_flag("--global-pass", o.solver.global_pass, "also relabel the whole domain each round");
  sub->add_option("--report", o.report_path, "write the JSON report here");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hyperlabel: fixed points of multivalued maps by orthant labelling"};
  app.require_subcommand(1, 1);
  Options o;

  auto* solve_cmd = app.add_subcommand("solve", "locate a fixed point of a map");
  solve_cmd->add_option("--map", o.map_path, "MapSpec JSON");
  solve_cmd->add_option("--game", o.game, "matching-pennies|coordination");
  solve_cmd->add_option("--A", o.a_literal, "row-major 2x2 payoff matrix of player 1");
  solve_cmd->add_option("--B", o.b_literal, "row-major 2x2 payoff matrix of player 2");
  solve_cmd->add_option("--dump-grid", o.dump_grid_path, "write the initial grid labelling as CSV");
  add_solver_flags(solve_cmd, o);

  auto* label_cmd = app.add_subcommand("label", "label the initial grid and count candidates");
  label_cmd->add_option("--map", o.map_path, "MapSpec JSON");
  label_cmd->add_option("--game", o.game, "matching-pennies|coordination");
  label_cmd->add_option("--A", o.a_literal, "row-major 2x2 payoff matrix of player 1");
  label_cmd->add_option("--B", o.b_literal, "row-major 2x2 payoff matrix of player 2");
  label_cmd->add_option("--dump-grid", o.dump_grid_path, "write the grid labelling as CSV");
  add_solver_flags(label_cmd, o);

  auto* dcn_cmd = app.add_subcommand("dcn", "classify a set of orthant labels");
  dcn_cmd->add_option("--d", o.dim, "dimension")->required();
  dcn_cmd->add_option("--set", o.set_text, "comma-separated sign strings, e.g. +++,++-")->required();

  auto* degree_cmd = app.add_subcommand("degree", "boundary degree of a labelled triangulation");
  degree_cmd->add_option("--labeling", o.labeling_path, "triangulation JSON")->required();

  auto* sperner_cmd = app.add_subcommand("sperner", "Sperner checks and completely labelled triangles");
  sperner_cmd->add_option("--labeling", o.labeling_path, "triangulation JSON")->required();

  auto* game_cmd = app.add_subcommand("game", "solve a 2x2 bimatrix game via its best responses");
  game_cmd->add_option("--game", o.game, "matching-pennies|coordination");
  game_cmd->add_option("--A", o.a_literal, "row-major 2x2 payoff matrix of player 1");
  game_cmd->add_option("--B", o.b_literal, "row-major 2x2 payoff matrix of player 2");
  game_cmd->add_option("--emit-map", o.emit_map_path, "write the generated MapSpec here");
  add_solver_flags(game_cmd, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*solve_cmd) return cmd_solve(o, out);
    if (*label_cmd) return cmd_label(o, out);
    if (*dcn_cmd) return cmd_dcn(o, out);
    if (*degree_cmd) return cmd_degree(o, out);
    if (*sperner_cmd) return cmd_sperner(o, out);
    if (*game_cmd) return cmd_game(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const SolverAbort& e) {
    err << "solver aborted: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace hyperlabel::cli
