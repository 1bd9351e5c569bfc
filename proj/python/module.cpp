#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "netdisc/discern.hpp"
#include "netdisc/errors.hpp"
#include "netdisc/oracle.hpp"
#include "netdisc/scenario.hpp"

namespace py = pybind11;
using namespace netdisc;

namespace {

using EdgeTuple = std::tuple<int, int, double>;

Graph make_graph(int nodes, const std::vector<EdgeTuple>& edges) {
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (const auto& [i, j, w] : edges) out.push_back({i, j, w});
  return Graph(nodes, std::move(out));
}

py::list spectrum_list(const Spectrum& s) {
  py::list out;
  for (const auto& p : s.eigenpairs) {
    out.append(py::make_tuple(p.value, p.algebraic_multiplicity, static_cast<int>(p.vectors.size())));
  }
  return out;
}

py::dict verdict_dict(const ConditionVerdict& v) {
  py::list collisions;
  for (const auto& c : v.collisions) {
    collisions.append(py::make_tuple(c.alpha_i, c.alpha_j, c.value, c.distance));
  }
  py::dict d;
  d["holds"] = v.holds;
  d["alphas"] = v.alphas;
  d["collisions"] = collisions;
  d["min_cross_block_gap"] = v.min_cross_block_gap;
  d["tol"] = v.tol;
  d["reading"] = v.reading;
  return d;
}

std::string report_for(const ScenarioConfig& cfg) {
  const auto rep = analyze(cfg.dynamics, laplacian(cfg.base_graph), laplacian(modified_graph(cfg)),
                           cfg.options);
  return report_json(rep, variation_descriptor(cfg), cfg.options);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Indiscernible states of networks of identical linear subsystems";

  m.def("laplacian", [](int nodes, const std::vector<EdgeTuple>& edges) {
    return laplacian(make_graph(nodes, edges)).matrix();
  }, py::arg("nodes"), py::arg("edges"),
     "Laplacian of an undirected weighted graph; edges are (i, j, w) with 1-based labels.");

  m.def("spectrum", [](const Matrix& mat, double cluster_tol) {
    return spectrum_list(eig(mat, cluster_tol));
  }, py::arg("m"), py::arg("cluster_tol") = defaults::kClusterTol,
     "Clustered eigenvalues as (value, algebraic multiplicity, independent vectors).");

  m.def("transition_matrix", [](const RealMatrix& a, const RealMatrix& b, const RealMatrix& l) {
    return assemble_transition(NodeDynamics(a, b), Laplacian(l)).phi();
  }, py::arg("A"), py::arg("B"), py::arg("L"), "I_N (x) A - L (x) B.");

  m.def("modal_matrix", [](const RealMatrix& a, const RealMatrix& b, Complex alpha) {
    return modal_matrix(NodeDynamics(a, b), alpha);
  }, py::arg("A"), py::arg("B"), py::arg("alpha"));

  m.def("network_invariant_modes", [](const RealMatrix& a, const RealMatrix& b) {
    std::vector<std::pair<Complex, Vector>> out;
    for (const auto& mode : network_invariant_modes(NodeDynamics(a, b))) {
      out.emplace_back(mode.value, mode.vector);
    }
    return out;
  }, py::arg("A"), py::arg("B"), "Pairs (lambda, v) with A v = lambda v and B v = 0.");

  m.def("sync_manifold", [](int nodes, int n) { return sync_manifold(nodes, n).basis(); },
        py::arg("nodes"), py::arg("n"), "Orthonormal basis of span{1 (x) e_k}.");

  m.def("indiscernible_subspace",
        [](const Matrix& phi, const Matrix& phibar, const std::string& method, double rank_tol) {
          if (method == "kernel") return indiscernible_subspace(phi, phibar, rank_tol).basis();
          if (method == "wong") return indiscernible_subspace_wong(phi, phibar, rank_tol).basis();
          throw InputError("method must be 'kernel' or 'wong'");
        },
        py::arg("phi"), py::arg("phibar"), py::arg("method") = "kernel",
        py::arg("rank_tol") = defaults::kRankTol,
        "Orthonormal basis of {x : phi^k x = phibar^k x for all k}.");

  m.def("shared_modal_subspace",
        [](const RealMatrix& a, const RealMatrix& b, const RealMatrix& l, const RealMatrix& lbar) {
          return shared_modal_subspace(NodeDynamics(a, b), Laplacian(l), Laplacian(lbar)).basis();
        },
        py::arg("A"), py::arg("B"), py::arg("L"), py::arg("Lbar"));

  m.def("corrected_condition",
        [](const RealMatrix& a, const RealMatrix& b, const RealMatrix& l, const RealMatrix& lbar,
           double tol) {
          return verdict_dict(corrected_condition(NodeDynamics(a, b), Laplacian(l), Laplacian(lbar), tol));
        },
        py::arg("A"), py::arg("B"), py::arg("L"), py::arg("Lbar"),
        py::arg("tol") = defaults::kClusterTol);

  m.def("max_principal_angle", [](const Matrix& u, const Matrix& v) {
    return max_principal_angle(Subspace::span(u), Subspace::span(v));
  }, py::arg("U"), py::arg("V"), "Largest principal angle between the column spans.");

  m.def("trajectory_gap",
        [](const Matrix& phi, const Matrix& phibar, const Vector& x0,
           std::optional<std::vector<double>> time_grid, int power_range) {
          OracleConfig cfg;
          if (time_grid) cfg.time_grid = *time_grid;
          cfg.power_range = power_range;
          return TrajectoryOracle(phi, phibar, cfg).gap(x0);
        },
        py::arg("phi"), py::arg("phibar"), py::arg("x0"), py::arg("time_grid") = py::none(),
        py::arg("power_range") = 0);

  m.def("_analyze_json",
        [](const RealMatrix& a, const RealMatrix& b, const RealMatrix& l, const RealMatrix& lbar,
           bool validate, std::optional<std::uint64_t> seed, double tol) {
          AnalyzeOptions opts;
          opts.validate = validate;
          opts.cluster_tol = tol;
          if (seed) opts.oracle.seed = *seed;
          py::gil_scoped_release release;
          const auto rep = analyze(NodeDynamics(a, b), Laplacian(l), Laplacian(lbar), opts);
          return report_json(rep, "modified_graph", opts);
        },
        py::arg("A"), py::arg("B"), py::arg("L"), py::arg("Lbar"), py::arg("validate") = false,
        py::arg("seed") = py::none(), py::arg("tol") = defaults::kClusterTol);

  m.def("_scenario_report_json", [](const std::string& text) {
    const ScenarioConfig cfg = parse_scenario(text);
    py::gil_scoped_release release;
    return report_for(cfg);
  }, py::arg("scenario_json"));

  m.def("_scenario_enumerate_json", [](const std::string& text, std::optional<int> jobs) {
    const ScenarioConfig cfg = parse_scenario(text);
    py::gil_scoped_release release;
    return enumeration_json(run_enumeration(cfg, jobs.value_or(cfg.jobs)));
  }, py::arg("scenario_json"), py::arg("jobs") = py::none());

  m.def("paper_scenario_json", &paper_scenario_json,
        "The built-in four-node counterexample as scenario JSON.");
}
