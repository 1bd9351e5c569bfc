#pragma once

// Scenario files, report serialization and the enumerate driver shared by the
// command-line tool and the Python module.
//
// Scenario JSON:
//   {
//     "node_dynamics": {"n": 3, "A": [...], "B": [...]},   // row-major, flat or nested
//     "base_graph":    {"nodes": 4, "edges": [{"i": 1, "j": 2, "w": 1.0}, ...]},
//     "variation":     {"modified_graph": {...}}
//                    | {"link": {"kind": "remove_edge", "i": 1, "j": 3}}
//                    | {"link": {"kind": "disconnect_node", "node": 4}}
//                    | {"enumerate": {"kinds": ["remove_edge", "add_edge"]}},
//     "options":       {"tol": 1e-8, "rank_tol": 1e-10, "angle_tol": 1e-8,
//                       "validate": true, "jobs": 1, "out": "dir",
//                       "oracle": {"time_grid": [...], "power_range": 0,
//                                  "rel_tol": 1e-7, "sample_count": 100,
//                                  "seed": 1, "generator": "mt19937_64"}}
//   }

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "netdisc/discern.hpp"
#include "netdisc/graphnet.hpp"
#include "netdisc/sysmodel.hpp"

namespace netdisc {

struct EnumerateRequest {
  std::set<VariationKind> kinds;
  double add_weight = 1.0;
  std::optional<double> reweight_to;
};

using VariationSpec = std::variant<std::monostate, Graph, LinkVariation, EnumerateRequest>;

struct ScenarioConfig {
  NodeDynamics dynamics;
  Graph base_graph;
  VariationSpec variation;
  AnalyzeOptions options;
  int jobs = 1;
  std::optional<std::string> out_dir;
};

/// Throws InputError with a message naming the offending field.
ScenarioConfig parse_scenario(const std::string& json_text);
/// Throws InputError if the file cannot be read or parsed.
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// The built-in four-node, three-state counterexample (base graph with edge
/// (1,3), modified graph without it), validation enabled.
ScenarioConfig paper_scenario();
/// paper_scenario() as scenario JSON text.
std::string paper_scenario_json();

/// The modified graph for an analyze run (explicit graph or applied link
/// variation). Throws InputError for enumerate or missing variations.
Graph modified_graph(const ScenarioConfig& cfg);
/// Human-readable descriptor of the variation ("modified_graph", "remove_edge(1,3)").
std::string variation_descriptor(const ScenarioConfig& cfg);

/// Canonical report JSON: sorted keys, floats with 17 significant digits.
std::string report_json(const DiscernibilityReport& report, const std::string& variation,
                        const AnalyzeOptions& opts);

/// CSV with header "t,gap".
std::string gap_csv(const std::vector<std::pair<double, double>>& trace);

struct EnumerationRow {
  LinkVariation variation;
  int indiscernible_dim = 0;
  int extra_dim = 0;
  bool condition_holds = false;
  std::string verdict;
  std::optional<bool> oracle_passed;
};

/// One analysis per single-link variation of the base graph, fanned out over
/// `jobs` worker threads and returned in enumeration order.
std::vector<EnumerationRow> run_enumeration(const ScenarioConfig& cfg, int jobs = 1);

std::string enumeration_json(const std::vector<EnumerationRow>& rows);
/// CSV with header "variation,indiscernible_dim,extra_dim,corrected_condition,verdict".
std::string enumeration_csv(const std::vector<EnumerationRow>& rows);

/// Re-serializes JSON text canonically (used to check report round-trips).
std::string canonicalize_json(const std::string& json_text);

/// Writes via a sibling temporary file and rename, so readers never observe
/// a partial file. Throws InputError on I/O failure.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace netdisc
