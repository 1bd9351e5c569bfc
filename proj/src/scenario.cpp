#include "netdisc/scenario.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "netdisc/errors.hpp"

namespace netdisc {

using json = nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Canonical writer

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

bool is_scalar(const json& j) { return !j.is_object() && !j.is_array(); }

bool is_flat(const json& j) {
  for (const auto& e : j) {
    if (!is_scalar(e) && !(e.is_array() && std::all_of(e.begin(), e.end(), is_scalar))) {
      return false;
    }
  }
  return true;
}

void dump_canonical(const json& j, std::ostringstream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map: sorted keys
        if (!first) os << ",\n";
        first = false;
        os << inner << json(it.key()).dump() << ": ";
        dump_canonical(it.value(), os, indent + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      if (is_flat(j)) {
        os << "[";
        bool first = true;
        for (const auto& e : j) {
          if (!first) os << ", ";
          first = false;
          dump_canonical(e, os, indent + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) os << ",\n";
        first = false;
        os << inner;
        dump_canonical(e, os, indent + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
      return;
  }
}

std::string canonical(const json& j) {
  std::ostringstream os;
  dump_canonical(j, os, 0);
  os << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Report encoding

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json vector_json(const Vector& v) {
  const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
  if (v.imag().cwiseAbs().maxCoeff() <= 1e-14 * scale) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).real());
    return out;
  }
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

json subspace_json(const Subspace& s) {
  json out;
  out["dim"] = s.dim();
  out["ambient_dim"] = s.ambient_dim();
  const auto real = real_basis(s);
  json data = json::array();
  if (real) {
    for (Eigen::Index r = 0; r < real->rows(); ++r) {
      for (Eigen::Index c = 0; c < real->cols(); ++c) data.push_back((*real)(r, c));
    }
  } else {
    for (Eigen::Index r = 0; r < s.basis().rows(); ++r) {
      for (Eigen::Index c = 0; c < s.basis().cols(); ++c) data.push_back(complex_json(s.basis()(r, c)));
    }
  }
  out["basis"] = {{"rows", s.ambient_dim()}, {"cols", s.dim()}, {"row_major", data},
                  {"field", real ? "real" : "complex"}};
  return out;
}

json spectrum_json(const Spectrum& s) {
  json out = json::array();
  for (const auto& p : s.eigenpairs) {
    out.push_back({{"value", complex_json(p.value)},
                   {"multiplicity", p.algebraic_multiplicity},
                   {"independent_vectors", static_cast<int>(p.vectors.size())}});
  }
  return out;
}

json collision_json(const ModalCollision& c) {
  return {{"alpha_i", complex_json(c.alpha_i)}, {"alpha_j", complex_json(c.alpha_j)},
          {"value", complex_json(c.value)}, {"distance", c.distance}};
}

json modal_json(const ModalEigenstructure& m) {
  json deficient = json::array();
  for (const auto& d : m.deficient_clusters) {
    deficient.push_back({{"value", complex_json(d.value)},
                         {"algebraic_multiplicity", d.algebraic_multiplicity},
                         {"kronecker_rank", d.kronecker_rank}});
  }
  return {{"complete", m.complete},
          {"kronecker_vectors", static_cast<int>(m.kronecker_vectors.size())},
          {"cross_block_collisions", static_cast<int>(m.cross_block_collisions.size())},
          {"min_cross_block_gap", m.min_cross_block_gap},
          {"max_residual", m.max_residual},
          {"deficient_clusters", deficient}};
}

json oracle_json(const std::optional<ValidationSummary>& s) {
  if (!s) return nullptr;
  return {{"inside_total", s->inside_total},
          {"inside_pass", s->inside_pass},
          {"outside_total", s->outside_total},
          {"outside_discernible", s->outside_discernible},
          {"worst_inside_gap", s->worst_inside_gap},
          {"min_outside_gap", s->min_outside_gap},
          {"passed", s->passed()}};
}

// ---------------------------------------------------------------------------
// Scenario decoding

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw InputError("scenario: " + field + ": " + why);
}

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) bad(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(where + "." + key, "missing");
  return *it;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) bad(where + "." + it.key(), "unknown key");
  }
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) bad(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(where, "not finite");
  return v;
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<int>();
}

RealMatrix square_matrix(const json& j, int n, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  RealMatrix m(n, n);
  if (!j.empty() && j.front().is_array()) {
    if (static_cast<int>(j.size()) != n) bad(where, "expected " + std::to_string(n) + " rows");
    for (int r = 0; r < n; ++r) {
      const auto& row = j[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != n) {
        bad(where, "row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
      }
      for (int c = 0; c < n; ++c) m(r, c) = number(row[static_cast<std::size_t>(c)], where);
    }
  } else {
    if (static_cast<int>(j.size()) != n * n) {
      bad(where, "expected " + std::to_string(n * n) + " row-major entries, got " +
                     std::to_string(j.size()));
    }
    for (int k = 0; k < n * n; ++k) m(k / n, k % n) = number(j[static_cast<std::size_t>(k)], where);
  }
  return m;
}

Graph graph_from(const json& j, const std::string& where) {
  reject_unknown(j, {"nodes", "edges"}, where);
  const int nodes = integer(member(j, "nodes", where), where + ".nodes");
  std::vector<Edge> edges;
  const auto& ej = member(j, "edges", where);
  if (!ej.is_array()) bad(where + ".edges", "expected an array");
  for (std::size_t k = 0; k < ej.size(); ++k) {
    const std::string w = where + ".edges[" + std::to_string(k) + "]";
    reject_unknown(ej[k], {"i", "j", "w"}, w);
    Edge e;
    e.i = integer(member(ej[k], "i", w), w + ".i");
    e.j = integer(member(ej[k], "j", w), w + ".j");
    if (ej[k].contains("w")) e.weight = number(ej[k]["w"], w + ".w");
    edges.push_back(e);
  }
  try {
    return Graph(nodes, std::move(edges));
  } catch (const InputError& e) {
    bad(where, e.what());
  }
}

json graph_json(const Graph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({{"i", e.i}, {"j", e.j}, {"w", e.weight}});
  return {{"nodes", g.node_count()}, {"edges", edges}};
}

LinkVariation link_from(const json& j, const std::string& where) {
  reject_unknown(j, {"kind", "i", "j", "node", "w"}, where);
  const auto& kj = member(j, "kind", where);
  if (!kj.is_string()) bad(where + ".kind", "expected a string");
  LinkVariation v;
  try {
    v.kind = parse_variation_kind(kj.get<std::string>());
  } catch (const InputError& e) {
    bad(where + ".kind", e.what());
  }
  if (v.kind == VariationKind::disconnect_node) {
    v.i = integer(member(j, "node", where), where + ".node");
  } else {
    v.i = integer(member(j, "i", where), where + ".i");
    v.j = integer(member(j, "j", where), where + ".j");
  }
  if (j.contains("w")) v.new_weight = number(j["w"], where + ".w");
  return v;
}

OracleConfig oracle_from(const json& j, const std::string& where) {
  reject_unknown(j, {"time_grid", "t_max", "t_step", "power_range", "rel_tol", "sample_count",
                     "seed", "generator"},
                 where);
  OracleConfig cfg;
  if (j.contains("time_grid")) {
    if (!j["time_grid"].is_array()) bad(where + ".time_grid", "expected an array");
    cfg.time_grid.clear();
    for (const auto& t : j["time_grid"]) cfg.time_grid.push_back(number(t, where + ".time_grid"));
  } else if (j.contains("t_max") || j.contains("t_step")) {
    const double tmax = j.contains("t_max") ? number(j["t_max"], where + ".t_max") : 5.0;
    const double step = j.contains("t_step") ? number(j["t_step"], where + ".t_step") : 0.1;
    if (!(step > 0.0) || tmax < 0.0) bad(where, "t_step must be positive and t_max >= 0");
    cfg.time_grid.clear();
    const auto count = static_cast<int>(std::floor(tmax / step + 1e-9));
    for (int k = 0; k <= count; ++k) cfg.time_grid.push_back(step * k);
  }
  if (j.contains("power_range")) cfg.power_range = integer(j["power_range"], where + ".power_range");
  if (j.contains("rel_tol")) cfg.rel_tol = number(j["rel_tol"], where + ".rel_tol");
  if (j.contains("sample_count")) cfg.sample_count = integer(j["sample_count"], where + ".sample_count");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) bad(where + ".seed", "expected a non-negative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("generator")) {
    if (!j["generator"].is_string()) bad(where + ".generator", "expected a string");
    cfg.generator = j["generator"].get<std::string>();
  }
  try {
    cfg.validate();
  } catch (const InputError& e) {
    bad(where, e.what());
  }
  return cfg;
}

json scenario_to_json(const ScenarioConfig& cfg) {
  const int n = cfg.dynamics.n();
  json a = json::array();
  json b = json::array();
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      a.push_back(cfg.dynamics.a()(r, c));
      b.push_back(cfg.dynamics.b()(r, c));
    }
  }
  json out;
  out["node_dynamics"] = {{"n", n}, {"A", a}, {"B", b}};
  out["base_graph"] = graph_json(cfg.base_graph);
  if (const auto* g = std::get_if<Graph>(&cfg.variation)) {
    out["variation"] = {{"modified_graph", graph_json(*g)}};
  }
  const auto& o = cfg.options;
  json grid = json::array();
  for (double t : o.oracle.time_grid) grid.push_back(t);
  out["options"] = {{"tol", o.cluster_tol},
                    {"rank_tol", o.rank_tol},
                    {"angle_tol", o.angle_tol},
                    {"validate", o.validate},
                    {"oracle",
                     {{"t_max", 5.0},
                      {"t_step", 0.1},
                      {"rel_tol", o.oracle.rel_tol},
                      {"sample_count", o.oracle.sample_count},
                      {"seed", o.oracle.seed},
                      {"generator", o.oracle.generator}}}};
  return out;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("scenario: malformed JSON: ") + e.what());
  }
  if (!root.is_object()) bad("<root>", "expected an object");
  reject_unknown(root, {"node_dynamics", "base_graph", "variation", "options"}, "<root>");

  ScenarioConfig cfg;
  const auto& nd = member(root, "node_dynamics", "<root>");
  reject_unknown(nd, {"n", "A", "B"}, "node_dynamics");
  const int n = integer(member(nd, "n", "node_dynamics"), "node_dynamics.n");
  if (n < 1) bad("node_dynamics.n", "must be at least 1");
  RealMatrix a = square_matrix(member(nd, "A", "node_dynamics"), n, "node_dynamics.A");
  RealMatrix b = square_matrix(member(nd, "B", "node_dynamics"), n, "node_dynamics.B");
  cfg.dynamics = NodeDynamics(std::move(a), std::move(b));
  cfg.base_graph = graph_from(member(root, "base_graph", "<root>"), "base_graph");

  if (root.contains("variation")) {
    const auto& v = root["variation"];
    reject_unknown(v, {"modified_graph", "link", "enumerate"}, "variation");
    if (v.size() != 1) bad("variation", "expected exactly one of modified_graph, link, enumerate");
    if (v.contains("modified_graph")) {
      Graph g = graph_from(v["modified_graph"], "variation.modified_graph");
      if (g.node_count() != cfg.base_graph.node_count()) {
        bad("variation.modified_graph.nodes", "must equal base_graph.nodes");
      }
      cfg.variation = std::move(g);
    } else if (v.contains("link")) {
      cfg.variation = link_from(v["link"], "variation.link");
    } else {
      const auto& e = v["enumerate"];
      reject_unknown(e, {"kinds", "add_weight", "reweight_to"}, "variation.enumerate");
      EnumerateRequest req;
      const auto& kinds = member(e, "kinds", "variation.enumerate");
      if (!kinds.is_array()) bad("variation.enumerate.kinds", "expected an array of strings");
      for (const auto& k : kinds) {
        if (!k.is_string()) bad("variation.enumerate.kinds", "expected strings");
        try {
          req.kinds.insert(parse_variation_kind(k.get<std::string>()));
        } catch (const InputError& err) {
          bad("variation.enumerate.kinds", err.what());
        }
      }
      if (e.contains("add_weight")) req.add_weight = number(e["add_weight"], "variation.enumerate.add_weight");
      if (e.contains("reweight_to")) req.reweight_to = number(e["reweight_to"], "variation.enumerate.reweight_to");
      cfg.variation = std::move(req);
    }
  }

  if (root.contains("options")) {
    const auto& o = root["options"];
    reject_unknown(o, {"tol", "rank_tol", "angle_tol", "validate", "jobs", "out", "oracle"}, "options");
    if (o.contains("tol")) cfg.options.cluster_tol = number(o["tol"], "options.tol");
    if (o.contains("rank_tol")) cfg.options.rank_tol = number(o["rank_tol"], "options.rank_tol");
    if (o.contains("angle_tol")) cfg.options.angle_tol = number(o["angle_tol"], "options.angle_tol");
    if (o.contains("validate")) {
      if (!o["validate"].is_boolean()) bad("options.validate", "expected a boolean");
      cfg.options.validate = o["validate"].get<bool>();
    }
    if (o.contains("jobs")) cfg.jobs = integer(o["jobs"], "options.jobs");
    if (o.contains("out")) {
      if (!o["out"].is_string()) bad("options.out", "expected a string");
      cfg.out_dir = o["out"].get<std::string>();
    }
    if (o.contains("oracle")) cfg.options.oracle = oracle_from(o["oracle"], "options.oracle");
    for (double t : {cfg.options.cluster_tol, cfg.options.rank_tol, cfg.options.angle_tol}) {
      if (!(t > 0.0)) bad("options", "tolerances must be positive");
    }
    if (cfg.jobs < 1) bad("options.jobs", "must be at least 1");
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read scenario file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

ScenarioConfig paper_scenario() {
  ScenarioConfig cfg;
  RealMatrix a(3, 3);
  a << 7, 0, 0,
       0, 0, 1,
       1, 0, 1;
  RealMatrix b(3, 3);
  b << 1, 1, -1,
       0, -1, 1,
       0, 0, 0;
  cfg.dynamics = NodeDynamics(a, b);
  cfg.base_graph = Graph(4, {{1, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}});
  cfg.variation = Graph(4, {{1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}});
  cfg.options.validate = true;
  return cfg;
}

std::string paper_scenario_json() { return canonical(scenario_to_json(paper_scenario())); }

Graph modified_graph(const ScenarioConfig& cfg) {
  if (const auto* g = std::get_if<Graph>(&cfg.variation)) return *g;
  if (const auto* v = std::get_if<LinkVariation>(&cfg.variation)) {
    return apply_variation(cfg.base_graph, *v);
  }
  if (std::holds_alternative<EnumerateRequest>(cfg.variation)) {
    throw InputError("scenario: variation is 'enumerate'; use the enumerate command");
  }
  throw InputError("scenario: no variation given (need modified_graph or link)");
}

std::string variation_descriptor(const ScenarioConfig& cfg) {
  if (const auto* v = std::get_if<LinkVariation>(&cfg.variation)) return v->describe();
  if (std::holds_alternative<Graph>(cfg.variation)) return "modified_graph";
  if (std::holds_alternative<EnumerateRequest>(cfg.variation)) return "enumerate";
  return "none";
}

std::string report_json(const DiscernibilityReport& r, const std::string& variation,
                        const AnalyzeOptions& opts) {
  json out;
  out["schema"] = "netdisc.report/1";
  out["variation"] = variation;
  out["verdict"] = r.verdict;
  out["node_count"] = r.node_count;
  out["node_state_size"] = r.node_state_size;
  out["state_dim"] = r.node_count * r.node_state_size;

  out["indiscernible_dim"] = r.indiscernible.dim();
  out["sync_dim"] = r.sync.dim();
  out["sync_in_indiscernible_dim"] = r.sync_in_indiscernible_dim;
  out["extra_dim"] = r.extra_dim;
  out["indiscernible"] = subspace_json(r.indiscernible);
  out["sync"] = subspace_json(r.sync);
  out["shared_modal"] = subspace_json(r.shared_modal);
  out["shared_modal"]["contained_in_indiscernible"] = r.shared_modal_contained;
  out["algorithms"] = {{"kernel_dim", r.indiscernible.dim()},
                       {"wong_dim", r.indiscernible_wong.dim()},
                       {"max_principal_angle", r.algorithm_angle}};

  json modes = json::array();
  for (const auto& m : r.invariant_modes) {
    modes.push_back({{"value", complex_json(m.value)}, {"vector", vector_json(m.vector)}});
  }
  out["invariant_modes"] = modes;

  const auto& cc = r.corrected_condition;
  json collisions = json::array();
  for (const auto& c : cc.collisions) collisions.push_back(collision_json(c));
  json alphas = json::array();
  for (Complex a : cc.alphas) alphas.push_back(complex_json(a));
  out["corrected_condition"] = {{"verdict", cc.holds ? "holds" : "violated"},
                                {"reading", cc.reading},
                                {"alphas", alphas},
                                {"collisions", collisions},
                                {"min_cross_block_gap", cc.min_cross_block_gap},
                                {"tol", cc.tol}};

  out["spectra"] = {{"L", spectrum_json(r.laplacian_spectrum)},
                    {"Lbar", spectrum_json(r.laplacian_bar_spectrum)},
                    {"phi", spectrum_json(r.phi_spectrum)},
                    {"phibar", spectrum_json(r.phibar_spectrum)}};
  json shared = json::array();
  for (const auto& s : r.shared_eigenvalues) {
    shared.push_back({{"value", complex_json(s.value)}, {"common_dim", s.common_dim}});
  }
  out["shared_eigenvalues"] = shared;
  out["modal"] = modal_json(r.modal);
  out["modal_bar"] = modal_json(r.modal_bar);
  out["oracle"] = oracle_json(r.oracle_summary);
  out["options"] = {{"tol", opts.cluster_tol},
                    {"rank_tol", opts.rank_tol},
                    {"angle_tol", opts.angle_tol},
                    {"validate", opts.validate},
                    {"seed", opts.oracle.seed},
                    {"rel_tol", opts.oracle.rel_tol},
                    {"sample_count", opts.oracle.sample_count}};
  return canonical(out);
}

std::string gap_csv(const std::vector<std::pair<double, double>>& trace) {
  std::ostringstream os;
  os << "t,gap\n";
  for (const auto& [t, g] : trace) os << format_double(t) << "," << format_double(g) << "\n";
  return os.str();
}

std::vector<EnumerationRow> run_enumeration(const ScenarioConfig& cfg, int jobs) {
  const auto* req = std::get_if<EnumerateRequest>(&cfg.variation);
  if (!req) throw InputError("scenario: enumerate requires variation.enumerate");
  const auto cases =
      enumerate_single_link_variations(cfg.base_graph, req->kinds, req->add_weight, req->reweight_to);
  const Laplacian base = laplacian(cfg.base_graph);

  std::vector<EnumerationRow> rows(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < cases.size(); k = next++) {
      const auto rep = analyze(cfg.dynamics, base, cases[k].laplacian, cfg.options);
      EnumerationRow row;
      row.variation = cases[k].variation;
      row.indiscernible_dim = rep.indiscernible.dim();
      row.extra_dim = rep.extra_dim;
      row.condition_holds = rep.corrected_condition.holds;
      row.verdict = rep.verdict;
      if (rep.oracle_summary) row.oracle_passed = rep.oracle_summary->passed();
      rows[k] = std::move(row);
    }
  };
  const int workers = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(1, cases.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return rows;
}

std::string enumeration_json(const std::vector<EnumerationRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json row = {{"variation", r.variation.describe()},
                {"kind", to_string(r.variation.kind)},
                {"indiscernible_dim", r.indiscernible_dim},
                {"extra_dim", r.extra_dim},
                {"corrected_condition", r.condition_holds ? "holds" : "violated"},
                {"verdict", r.verdict}};
    row["oracle_passed"] = r.oracle_passed ? json(*r.oracle_passed) : json(nullptr);
    arr.push_back(row);
  }
  return canonical({{"schema", "netdisc.enumeration/1"}, {"rows", arr}});
}

std::string enumeration_csv(const std::vector<EnumerationRow>& rows) {
  std::ostringstream os;
  os << "variation,indiscernible_dim,extra_dim,corrected_condition,verdict\n";
  for (const auto& r : rows) {
    os << '"' << r.variation.describe() << "\"," << r.indiscernible_dim << "," << r.extra_dim << ","
       << (r.condition_holds ? "holds" : "violated") << ",\"" << r.verdict << "\"\n";
  }
  return os.str();
}

std::string canonicalize_json(const std::string& json_text) {
  try {
    return canonical(json::parse(json_text));
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out.flush()) throw InputError("cannot write '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InputError("cannot move output into place at '" + path.string() + "'");
  }
}

}  // namespace netdisc
