#include "support.hpp"

#include "gframe/report.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gframe;
using namespace gframe::testing;
using Json = nlohmann::ordered_json;

namespace {

struct Outcome
{
  int code;
  std::string out;
  std::string err;
};

Outcome run_with(AnalysisConfig const &config)
{
  std::ostringstream out, err;
  int const code = run(config, out, err);
  return {code, out.str(), err.str()};
}

AnalysisConfig config_for(std::string const &fixture_name, Command command)
{
  AnalysisConfig config;
  config.input_path = fixture_path(fixture_name);
  config.command = command;
  return config;
}

Json json_for(std::string const &fixture_name, Command command)
{
  auto const result = run_with(config_for(fixture_name, command));
  REQUIRE(result.code == 0);
  return Json::parse(result.out);
}

std::filesystem::path write_temp(std::string const &name, std::string const &text)
{
  auto const path = std::filesystem::temp_directory_path() / ("gframe_test_" + name);
  std::ofstream(path) << text;
  return path;
}

void check_twelve_digits(Json const &j)
{
  if (j.is_number_float()) {
    double const x = j.get<double>();
    CHECK(x == round_report(x));
  } else if (j.is_structured()) {
    for (auto const &child : j) { check_twelve_digits(child); }
  }
}

} // namespace

TEST_CASE("command names round-trip")
{
  for (auto c : {Command::GraphInfo, Command::FrameBuild, Command::FrameSpark, Command::OdVerdict, Command::OdSearch,
                 Command::DrTable}) {
    CHECK(parse_command(command_name(c)) == c);
  }
  CHECK_FALSE(parse_command("frame-destroy").has_value());
}

TEST_CASE("graph-info on the 3-regular example")
{
  Json const j = json_for("figure2", Command::GraphInfo);
  CHECK(j["tool_version"] == tool_version);
  CHECK(j["command"] == "graph-info");
  CHECK(j["graph"]["n"] == 8);
  CHECK(j["graph"]["regular"] == 3);
  CHECK(j["graph"]["walk_regular"]["is_walk_regular"] == false);
  CHECK(j["graph"]["walk_regular"]["first_violation"]["power"] == 3);
  CHECK(j["graph"]["walk_regular"]["definition_check"]["agrees"] == true);
  CHECK(j["graph"]["laplacian_rank"] == 7);
  CHECK(j["graph"]["laplacian_spectrum"].size() == 8);
  CHECK(j["graph"]["laplacian_spectrum"][7] == 0.0);
  CHECK(std::abs(j["graph"]["pseudoinverse"]["laplacian_diagonal_spread"].get<double>() - 0.0328) <= 1e-3);
  CHECK_FALSE(j.contains("frame"));
}

TEST_CASE("graph-info reports non-regular graphs as false")
{
  Json const j = json_for("path3", Command::GraphInfo);
  CHECK(j["graph"]["regular"] == false);
  CHECK(j["graph"]["walk_regular"]["is_walk_regular"] == false);
}

TEST_CASE("frame-build summary")
{
  Json const j = json_for("figure1", Command::FrameBuild);
  CHECK(j["frame"]["dim"] == 5);
  CHECK(j["frame"]["count"] == 7);
  CHECK(j["frame"]["gramian_residual"].get<double>() <= 1e-8);
  CHECK(j["frame"]["frame_operator_diag"] == Json::array({4.0, 3.0, 3.0, 2.0, 2.0}));
  CHECK(j["frame"]["norms_squared"] == Json(std::vector<double>(7, 2.0)));
  CHECK_FALSE(j["frame"].contains("vectors"));
}

TEST_CASE("frame-build with vectors warns about basis dependence")
{
  auto config = config_for("k3", Command::FrameBuild);
  config.emit_vectors = true;
  auto const result = run_with(config);
  REQUIRE(result.code == 0);
  Json const j = Json::parse(result.out);
  CHECK(j["frame"]["vectors"].size() == 3);
  CHECK(j["frame"]["basis_dependent"] == true);
  CHECK(result.err.find("warning") != std::string::npos);
}

TEST_CASE("frame-spark")
{
  Json const j = json_for("figure1", Command::FrameSpark);
  CHECK(j["spark"]["value"] == 3);
  CHECK(j["spark"]["brute_force"] == 3);
  CHECK(j["spark"]["via_components"] == 3);
  CHECK(j["spark"]["method_agreement"] == true);
  CHECK(j["spark"]["full_spark"] == false);
  CHECK(json_for("petersen", Command::FrameSpark)["spark"]["full_spark"] == true);
}

TEST_CASE("od-verdict")
{
  Json const j = json_for("figure1", Command::OdVerdict);
  CHECK(j["erasure"]["verdict"] == "OD_1_ERASURE");
  CHECK(std::abs(j["erasure"]["d1_canonical"].get<double>() - std::sqrt(10.0) / 4) <= 1e-9);
  CHECK(j["erasure"]["lambda1_set"] == Json::array({4, 5, 6, 7}));
  CHECK(j["erasure"]["verdict_basis"].contains("alternate_dual"));
  CHECK_FALSE(j["erasure"].contains("search_best"));

  CHECK(json_for("k3", Command::OdVerdict)["erasure"]["verdict"] == "UNIQUE_OD_ALL_ERASURES");
  Json const fig2 = json_for("figure2", Command::OdVerdict);
  CHECK(fig2["erasure"]["verdict"] == "NOT_OD");
  CHECK(fig2["erasure"]["lambda1_set"] == Json::array({2, 5, 7, 8}));
}

TEST_CASE("od-search")
{
  auto config = config_for("figure2", Command::OdSearch);
  config.trials = 2000;
  auto const result = run_with(config);
  REQUIRE(result.code == 0);
  Json const j = Json::parse(result.out);
  CHECK(j["erasure"]["verdict"] == "NOT_OD");
  CHECK(j["erasure"]["search_best"]["improved"] == true);
  CHECK(j["erasure"]["search_best"]["d1"].get<double>() <= 0.9971 + 1e-4);
}

TEST_CASE("dr-table")
{
  Json const j = json_for("figure1", Command::DrTable);
  auto const &rows = j["erasure"]["dr_table"];
  REQUIRE(rows.size() == 3);
  CHECK(std::abs(rows[0]["canonical"]["value"].get<double>() - std::sqrt(10.0) / 4) <= 1e-9);
  for (auto const &row : rows) { CHECK(row["canonical"]["exact"] == true); }
  CHECK(j["erasure"]["dr_monotonicity"]["canonical_decreases_at"].is_array());

  // The 4-cycle's canonical D^3 is below its D^2.
  Json const c4 = json_for("c4", Command::DrTable);
  CHECK(c4["erasure"]["dr_monotonicity"]["canonical_decreases_at"] == Json::array({3}));

  auto config = config_for("figure1", Command::DrTable);
  config.shifts_path = write_temp("shifts.json", "[[0, 0, 0, 0.01, 0.01], [0, 0, 0, 0, 0]]").string();
  auto const result = run_with(config);
  REQUIRE(result.code == 0);
  Json const given = Json::parse(result.out);
  CHECK(given["erasure"]["dr_table"][0].contains("given"));
  CHECK(given["erasure"]["given_shifts"].size() == 2);

  config.shifts_path = write_temp("shifts_bad.json", "[[0, 0]]").string();
  CHECK(run_with(config).code == 1);
  config.shifts_path = write_temp("shifts_garbage.json", "not json").string();
  CHECK(run_with(config).code == 1);
}

TEST_CASE("dr-table enumeration guard and sampling")
{
  std::string text = "80 80\n";
  for (int v = 1; v <= 80; ++v) { text += std::to_string(v) + " " + std::to_string(v % 80 + 1) + "\n"; }
  auto config = config_for("k3", Command::DrTable);
  config.input_path = write_temp("c80.edges", text).string();
  config.max_r = 4;
  auto const refused = run_with(config);
  CHECK(refused.code == 3);
  CHECK(refused.err.find("error") != std::string::npos);

  config.sample = 200;
  auto const sampled = run_with(config);
  REQUIRE(sampled.code == 0);
  Json const j = Json::parse(sampled.out);
  CHECK(j["erasure"]["dr_table"][3]["canonical"]["exact"] == false);
  CHECK(j["erasure"]["dr_table"][3]["canonical"]["kind"] == "monte_carlo_lower_bound");
  CHECK(j["erasure"]["dr_table"][2]["canonical"]["exact"] == true);
}

TEST_CASE("exit codes for bad input")
{
  auto config = config_for("k3", Command::GraphInfo);
  config.input_path = write_temp("loop.edges", "2 1\n1 1\n").string();
  auto const loop = run_with(config);
  CHECK(loop.code == 1);
  CHECK(loop.err.find("line 2") != std::string::npos);

  config.input_path = fixture_path("does_not_exist");
  CHECK(run_with(config).code == 1);

  config = config_for("k3", Command::FrameBuild);
  config.input_path = write_temp("isolated.edges", "3 1\n1 2\n").string();
  CHECK(run_with(config).code == 1);

  config = config_for("k3", Command::OdSearch);
  config.trials = 0;
  CHECK(run_with(config).code == 1);
  config = config_for("k3", Command::GraphInfo);
  config.zero_tol = -1;
  CHECK(run_with(config).code == 1);
}

TEST_CASE("reports are byte-identical across runs and worker counts")
{
  for (auto command : {Command::GraphInfo, Command::FrameSpark, Command::OdSearch, Command::DrTable}) {
    for (auto const &name : {"figure1", "figure2", "path3"}) {
      auto config = config_for(name, command);
      config.trials = 300;
      config.seed = 7;
      auto const first = run_with(config);
      auto const second = run_with(config);
      config.workers = 4;
      auto const threaded = run_with(config);
      REQUIRE(first.code == 0);
      CHECK(first.out == second.out);
      // The config echo differs only in the worker count.
      Json a = Json::parse(first.out), b = Json::parse(threaded.out);
      a["config"].erase("workers");
      b["config"].erase("workers");
      CHECK(a.dump() == b.dump());
    }
  }
}

TEST_CASE("report schema and float precision")
{
  Json const j = json_for("figure2", Command::OdVerdict);
  std::vector<std::string> keys;
  for (auto const &[key, value] : j.items()) { keys.push_back(key); }
  CHECK(keys == std::vector<std::string>{"tool_version", "command", "input", "config", "graph", "frame", "erasure"});
  for (auto const &key : {"n", "m", "components", "degrees", "regular", "walk_regular"}) {
    CHECK(j["graph"].contains(key));
  }
  for (auto const &key : {"dim", "count", "gramian_residual", "frame_operator_diag", "norms_squared"}) {
    CHECK(j["frame"].contains(key));
  }
  for (auto const &key :
       {"d1_canonical", "per_vertex_products", "lambda1_set", "constancy", "verdict", "verdict_basis"}) {
    CHECK(j["erasure"].contains(key));
  }
  for (auto const &key : {"zero_tol", "tie_tol", "grouping_tol", "seed", "trials", "radius"}) {
    CHECK(j["config"].contains(key));
  }
  check_twelve_digits(j);
  CHECK(j.dump().find("null") == std::string::npos);
}

TEST_CASE("round_report keeps 12 significant digits")
{
  CHECK(round_report(0.1234567890123456) == 0.123456789012);
  CHECK(round_report(-0.0) == 0.0);
  CHECK_FALSE(std::signbit(round_report(-0.0)));
  CHECK(round_report(3.0) == 3.0);
}

TEST_CASE("csv and text formats")
{
  auto config = config_for("figure1", Command::OdVerdict);
  config.output_format = OutputFormat::Csv;
  auto const csv = run_with(config);
  REQUIRE(csv.code == 0);
  std::istringstream lines(csv.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "vertex,degree,component,norm_squared,canonical_dual_norm,product,in_lambda1");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) { ++rows; }
  CHECK(rows == 7);

  config.command = Command::DrTable;
  auto const table = run_with(config);
  REQUIRE(table.code == 0);
  CHECK(table.out.rfind("r,canonical,canonical_exact\n", 0) == 0);

  config.command = Command::FrameSpark;
  config.output_format = OutputFormat::Text;
  auto const text = run_with(config);
  REQUIRE(text.code == 0);
  CHECK(text.out.find("spark.value: 3\n") != std::string::npos);
}

#ifdef GFRAME_CLI_PATH
TEST_CASE("command-line executable")
{
  std::string const cli = GFRAME_CLI_PATH;
  auto status = [&](std::string const &args) {
    int const raw = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("frame-spark " + fixture_path("figure1")) == 0);
  CHECK(status("od-verdict " + fixture_path("figure1") + " --format csv") == 0);
  CHECK(status("frame-spark " + fixture_path("missing")) == 1);
  CHECK(status("frame-spark " + fixture_path("figure1") + " --format xml") == 1);
  CHECK(status("no-such-command") == 1);
  CHECK(status("") == 1);
  CHECK(status("--help") == 0);
}
#endif
