#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "netdisc/errors.hpp"
#include "netdisc/scenario.hpp"
#include "test_support.hpp"

using namespace netdisc;
using namespace netdisc::testing;
using nlohmann::json;

namespace {

json paper_json() { return json::parse(paper_scenario_json()); }

void expect_input_error(const json& j, const std::string& fragment) {
  try {
    parse_scenario(j.dump());
    ADD_FAILURE() << "expected InputError mentioning " << fragment;
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

json two_node_diag() {
  return json::parse(R"({
    "node_dynamics": {"n": 2, "A": [[1, 0], [0, 10]], "B": [[1, 0], [0, 1]]},
    "base_graph": {"nodes": 2, "edges": [{"i": 1, "j": 2, "w": 1.0}]},
    "variation": {"link": {"kind": "reweight_edge", "i": 1, "j": 2, "w": 0.5}},
    "options": {"validate": true}
  })");
}

}  // namespace

TEST(Scenario, PaperJsonParsesToPaperScenario) {
  const ScenarioConfig cfg = parse_scenario(paper_scenario_json());
  const ScenarioConfig ref = paper_scenario();
  EXPECT_EQ(cfg.dynamics.a(), ref.dynamics.a());
  EXPECT_EQ(cfg.dynamics.b(), ref.dynamics.b());
  EXPECT_EQ(cfg.base_graph, ref.base_graph);
  EXPECT_EQ(modified_graph(cfg), paper_graph_bar());
  EXPECT_TRUE(cfg.options.validate);
  EXPECT_EQ(cfg.options.oracle.time_grid.size(), 51u);
  EXPECT_EQ(variation_descriptor(cfg), "modified_graph");
}

TEST(Scenario, NestedAndFlatMatricesAgree) {
  json j = paper_json();
  j["node_dynamics"]["A"] = json::parse("[[7,0,0],[0,0,1],[1,0,1]]");
  EXPECT_EQ(parse_scenario(j.dump()).dynamics.a(), paper_a());
}

TEST(Scenario, LinkVariation) {
  json j = paper_json();
  j["variation"] = json::parse(R"({"link": {"kind": "remove_edge", "i": 1, "j": 3}})");
  const ScenarioConfig cfg = parse_scenario(j.dump());
  EXPECT_EQ(modified_graph(cfg), paper_graph_bar());
  EXPECT_EQ(variation_descriptor(cfg), "remove_edge(1,3)");

  j["variation"] = json::parse(R"({"link": {"kind": "disconnect_node", "node": 4}})");
  EXPECT_EQ(modified_graph(parse_scenario(j.dump())).edges().size(), 3u);
}

TEST(Scenario, InputErrorsNameTheField) {
  EXPECT_THROW(parse_scenario("{not json"), InputError);
  json j = paper_json();
  j["node_dynamics"]["A"] = json::array({1, 2, 3});
  expect_input_error(j, "node_dynamics.A");

  j = paper_json();
  j["node_dynamics"]["n"] = 2;
  expect_input_error(j, "node_dynamics.A");

  j = paper_json();
  j["surprise"] = 1;
  expect_input_error(j, "surprise");

  j = paper_json();
  j["variation"]["modified_graph"]["nodes"] = 5;
  expect_input_error(j, "variation.modified_graph");

  j = paper_json();
  j["base_graph"]["edges"][0]["w"] = -1.0;
  expect_input_error(j, "base_graph");

  j = paper_json();
  j["options"]["oracle"]["generator"] = "pcg";
  expect_input_error(j, "options.oracle");

  j = paper_json();
  j["variation"] = json::parse(R"({"link": {"kind": "teleport", "i": 1, "j": 2}})");
  expect_input_error(j, "variation.link.kind");

  j = paper_json();
  j.erase("base_graph");
  expect_input_error(j, "base_graph");
}

TEST(Scenario, ReweightWithoutWeightIsAnError) {
  json j = paper_json();
  j["variation"] = json::parse(R"({"link": {"kind": "reweight_edge", "i": 1, "j": 2}})");
  const ScenarioConfig cfg = parse_scenario(j.dump());
  EXPECT_THROW(modified_graph(cfg), InputError);

  j["variation"] = json::parse(R"({"enumerate": {"kinds": ["reweight_edge"]}})");
  EXPECT_THROW(run_enumeration(parse_scenario(j.dump())), InputError);
}

TEST(Scenario, MissingFileIsAnError) {
  EXPECT_THROW(load_scenario("/nonexistent/netdisc/scenario.json"), InputError);
}

TEST(Report, PaperReportContents) {
  const ScenarioConfig cfg = paper_scenario();
  const auto rep = analyze(cfg.dynamics, laplacian(cfg.base_graph), laplacian(modified_graph(cfg)),
                           cfg.options);
  const json j = json::parse(report_json(rep, variation_descriptor(cfg), cfg.options));
  EXPECT_EQ(j["schema"], "netdisc.report/1");
  EXPECT_EQ(j["indiscernible_dim"], 6);
  EXPECT_EQ(j["extra_dim"], 3);
  EXPECT_EQ(j["corrected_condition"]["verdict"], "violated");
  ASSERT_EQ(j["invariant_modes"].size(), 1u);
  EXPECT_NEAR(j["invariant_modes"][0]["value"][0].get<double>(), 1.0, 1e-12);
  const auto& basis = j["indiscernible"]["basis"];
  EXPECT_EQ(basis["rows"], 12);
  EXPECT_EQ(basis["cols"], 6);
  EXPECT_EQ(basis["field"], "real");
  EXPECT_EQ(basis["row_major"].size(), 72u);
  EXPECT_TRUE(j["oracle"]["passed"].get<bool>());
  for (const auto& e : j["spectra"]["phi"]) EXPECT_EQ(e["value"].size(), 2u);
}

TEST(Report, RoundTripIsByteIdentical) {
  const ScenarioConfig cfg = paper_scenario();
  const auto rep = analyze(cfg.dynamics, laplacian(cfg.base_graph), laplacian(modified_graph(cfg)),
                           cfg.options);
  const std::string text = report_json(rep, "modified_graph", cfg.options);
  EXPECT_EQ(canonicalize_json(text), text);
  EXPECT_EQ(canonicalize_json(paper_scenario_json()), paper_scenario_json());
}

TEST(Report, NoVariationScenario) {
  json j = paper_json();
  j["variation"]["modified_graph"] = j["base_graph"];
  const ScenarioConfig cfg = parse_scenario(j.dump());
  AnalyzeOptions opts = cfg.options;
  opts.validate = false;
  const auto rep = analyze(cfg.dynamics, laplacian(cfg.base_graph), laplacian(modified_graph(cfg)), opts);
  const json r = json::parse(report_json(rep, "modified_graph", opts));
  EXPECT_EQ(r["verdict"], kVerdictNoVariation);
  EXPECT_EQ(r["indiscernible_dim"], 12);
  EXPECT_EQ(r["oracle"], nullptr);
}

TEST(Report, TwoNodeDiagonalScenario) {
  const ScenarioConfig cfg = parse_scenario(two_node_diag().dump());
  const auto rep = analyze(cfg.dynamics, laplacian(cfg.base_graph), laplacian(modified_graph(cfg)),
                           cfg.options);
  EXPECT_EQ(rep.indiscernible.dim(), 2);
  EXPECT_EQ(rep.verdict, kVerdictDetectable);
  ASSERT_TRUE(rep.oracle_summary.has_value());
  EXPECT_TRUE(rep.oracle_summary->passed());
}

TEST(GapCsv, HeaderAndRows) {
  const std::string csv = gap_csv({{0.0, 0.0}, {0.5, 0.25}});
  EXPECT_EQ(csv, "t,gap\n0.0,0.0\n0.5,0.25\n");
}

TEST(Enumeration, RemoveEdgesOnPaperExample) {
  json j = paper_json();
  j["variation"] = json::parse(R"({"enumerate": {"kinds": ["remove_edge"]}})");
  j["options"]["validate"] = false;
  const auto rows = run_enumeration(parse_scenario(j.dump()));
  ASSERT_EQ(rows.size(), 4u);
  bool seen = false;
  for (const auto& r : rows) {
    if (r.variation.describe() == "remove_edge(1,3)") {
      seen = true;
      EXPECT_EQ(r.indiscernible_dim, 6);
    }
  }
  EXPECT_TRUE(seen);
}

TEST(Enumeration, InvariantModeStatesPersistAndJobsDoNotMatter) {
  json j = paper_json();
  j["variation"] = json::parse(R"({"enumerate": {"kinds": ["remove_edge", "add_edge"]}})");
  j["options"]["validate"] = false;
  const ScenarioConfig cfg = parse_scenario(j.dump());
  const auto serial = run_enumeration(cfg, 1);
  const auto parallel = run_enumeration(cfg, 4);
  ASSERT_EQ(serial.size(), 6u);
  for (const auto& r : serial) {
    EXPECT_GE(r.extra_dim, 3) << r.variation.describe();
    EXPECT_FALSE(r.condition_holds);
  }
  EXPECT_EQ(enumeration_json(serial), enumeration_json(parallel));
  EXPECT_EQ(enumeration_csv(serial), enumeration_csv(parallel));
  EXPECT_EQ(enumeration_csv(serial).substr(0, enumeration_csv(serial).find('\n')),
            "variation,indiscernible_dim,extra_dim,corrected_condition,verdict");
}

TEST(Enumeration, EdgelessGraphGivesEmptyTable) {
  json j = paper_json();
  j["base_graph"]["edges"] = json::array();
  j["variation"] = json::parse(R"({"enumerate": {"kinds": ["remove_edge"]}})");
  const auto rows = run_enumeration(parse_scenario(j.dump()));
  EXPECT_TRUE(rows.empty());
  EXPECT_EQ(json::parse(enumeration_json(rows))["rows"].size(), 0u);
}

TEST(WriteFileAtomic, WritesAndReplaces) {
  const auto dir = std::filesystem::temp_directory_path() / "netdisc_write_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.txt";
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), "second");
  EXPECT_FALSE(std::filesystem::exists(dir / "out.txt.tmp"));
  EXPECT_THROW(write_file_atomic(dir / "missing" / "x.txt", "x"), InputError);
  std::filesystem::remove_all(dir);
}
