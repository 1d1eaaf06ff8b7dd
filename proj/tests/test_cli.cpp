#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hyperlabel/cli.hpp"
#include "hyperlabel/degree.hpp"
#include "hyperlabel/solver.hpp"

using namespace hyperlabel;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(HYPERLABEL_TEST_DATA) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const char* name) {
  const auto dir = fs::temp_directory_path() / "hyperlabel_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("solve writes a report") {
  const auto report = scratch("pennies.json");
  const auto r = run_cli({"solve", "--map", data("pennies.json"), "--tol", "1e-6", "--max-depth", "10", "--report",
                          report.string()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(report));
  CHECK(j["point"][0].get<double>() == doctest::Approx(0.5).epsilon(2e-3));
  CHECK(j["point"][1].get<double>() == doctest::Approx(0.5).epsilon(2e-3));
  CHECK(j["face_mode"] == "equality");
  CHECK(j["config"]["tolerance"] == 1e-6);
  CHECK(j["config"]["max_depth"] == 10);
  for (const char* key : {"status", "point", "residual", "face_mode", "depth_trace", "config"}) CHECK(j.contains(key));
  CHECK(r.out.rfind("status=", 0) == 0);
}

TEST_CASE("solve prints the report without --report") {
  const auto r = run_cli({"solve", "--map", data("contraction.json"), "--face-mode", "subcube", "--policy", "first"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["face_mode"] == "subcube");
  CHECK(j["config"]["policy"] == "first");
}

TEST_CASE("dcn subcommand") {
  const auto r = run_cli({"dcn", "--d", "3", "--set", "+++,++-"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("dcn=true witness=(+,+,0)", 0) == 0);
  const auto bad = run_cli({"dcn", "--d", "2", "--set", "++,--"});
  CHECK(bad.out.rfind("dcn=false\n", 0) == 0);
  CHECK(bad.out.find("extension={+-}") != std::string::npos);
  CHECK(run_cli({"dcn", "--d", "2", "--set", "++,+++"}).code == 2);
  CHECK(run_cli({"dcn", "--d", "0", "--set", "+"}).code == 2);
}

TEST_CASE("degree and sperner subcommands") {
  const auto r = run_cli({"degree", "--labeling", data("sperner_triangle.json")});
  REQUIRE(r.code == 0);
  CHECK(r.out == "1\n");
  const auto s = run_cli({"sperner", "--labeling", data("sperner_triangle.json")});
  REQUIRE(s.code == 0);
  CHECK(s.out.find("sperner_valid=true") != std::string::npos);
  CHECK(s.out.find("completely_labeled=1 ") != std::string::npos);
}

TEST_CASE("game subcommand emits the map and the report") {
  const auto r = run_cli({"game", "--game", "matching-pennies"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["map"]["kind"] == "bimatrix");
  CHECK(j["report"]["point"][0].get<double>() == doctest::Approx(0.5).epsilon(2e-3));

  const auto map_path = scratch("coordination_map.json");
  const auto c = run_cli({"game", "--A", "1,0;0,1", "--B", "1 0 0 1", "--emit-map", map_path.string()});
  REQUIRE(c.code == 0);
  const auto spec = MapSpec::from_json(nlohmann::json::parse(slurp(map_path)));
  CHECK(spec.payoff_a[0][0] == 1.0);
  CHECK(spec.payoff_b[1][1] == 1.0);
  CHECK(run_cli({"game", "--A", "1,0,0", "--B", "1,0,0,1"}).code == 2);
  CHECK(run_cli({"game", "--game", "chicken"}).code == 2);
}

TEST_CASE("label dump round trip") {
  const auto csv = scratch("grid.csv");
  const auto r = run_cli({"label", "--map", data("contraction.json"), "--initial-res", "9", "--dump-grid", csv.string()});
  REQUIRE(r.code == 0);

  // Recount completely labelled cells from the CSV alone.
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  std::map<std::pair<int, int>, std::string> sign;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() < 8) f.resize(8);
    sign[{std::stoi(f[0]), std::stoi(f[1])}] = f[6] == "1" ? "fixed" : f[4] + "/" + f[5];
  }
  int complete = 0;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      std::set<std::string> labels;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) labels.insert(sign[{i + a, j + b}]);
      complete += labels.size() == 4 && !labels.count("fixed");
    }

  const auto report = scratch("grid_report.json");
  REQUIRE(run_cli({"solve", "--map", data("contraction.json"), "--initial-res", "9", "--report", report.string()}).code == 0);
  const auto j = nlohmann::json::parse(slurp(report));
  CHECK(j["depth_trace"][0]["complete_cells"] == complete);
  CHECK(r.out.find("complete_cells=" + std::to_string(complete)) != std::string::npos);
}

TEST_CASE("input errors exit with 2 and name the problem") {
  const auto malformed = run_cli({"solve", "--map", data("malformed.json")});
  CHECK(malformed.code == 2);
  CHECK(malformed.err.find("malformed JSON") != std::string::npos);

  const auto mismatch = scratch("mismatch.json");
  std::ofstream(mismatch) << R"({"dimension": 2, "domain": {"lo": [0], "hi": [1]}, "kind": "builtin",
                                 "builtin": {"name": "identity"}})";
  const auto m = run_cli({"solve", "--map", mismatch.string()});
  CHECK(m.code == 2);
  CHECK(m.err.find("domain") != std::string::npos);

  CHECK(run_cli({"solve", "--map", data("missing.json")}).code == 2);
  CHECK(run_cli({"solve", "--map", data("contraction.json"), "--face-mode", "strict"}).code == 2);
  CHECK(run_cli({"solve", "--map", data("contraction.json"), "--initial-res", "1"}).code == 2);
  CHECK(run_cli({"solve", "--bogus"}).code == 2);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"degree"}).code == 2);
}

TEST_CASE("images outside the domain exit with 2") {
  const auto out_of_domain = scratch("outside.json");
  std::ofstream(out_of_domain) << R"({"dimension": 1, "domain": {"lo": [0], "hi": [1]}, "kind": "piecewise",
                                      "piecewise": {"regions": [], "default_image": [[2.0]]}})";
  const auto r = run_cli({"solve", "--map", out_of_domain.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("piecewise.default_image") != std::string::npos);
}

TEST_CASE("repeated solves are byte identical") {
  const std::vector<std::string> args{"solve", "--map", data("step_lgdp.json"), "--filter", "piecewise-exact",
                                      "--seed", "7"};
  const auto a = run_cli(args), b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}
