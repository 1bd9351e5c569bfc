#include "netdisc/graphnet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "netdisc/errors.hpp"

namespace netdisc {

namespace {

std::string pair_name(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

void require_weight(double w, const std::string& where) {
  if (!(std::isfinite(w) && w > 0.0)) {
    throw InputError(where + ": edge weight must be positive and finite");
  }
}

}  // namespace

Graph::Graph(int node_count, std::vector<Edge> edges) : node_count_(node_count) {
  if (node_count < 1) throw InputError("graph: node count must be at least 1");
  for (auto& e : edges) {
    if (e.i == e.j) throw InputError("graph: self-loop at node " + std::to_string(e.i));
    if (e.i < 1 || e.j < 1 || e.i > node_count || e.j > node_count) {
      throw InputError("graph: edge " + pair_name(e.i, e.j) + " references a node outside 1.." +
                       std::to_string(node_count));
    }
    require_weight(e.weight, "graph edge " + pair_name(e.i, e.j));
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
  for (std::size_t k = 1; k < edges.size(); ++k) {
    if (edges[k].i == edges[k - 1].i && edges[k].j == edges[k - 1].j) {
      throw InputError("graph: duplicate edge " + pair_name(edges[k].i, edges[k].j));
    }
  }
  edges_ = std::move(edges);
}

bool Graph::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::any_of(edges_.begin(), edges_.end(),
                     [&](const Edge& e) { return e.i == i && e.j == j; });
}

double Graph::weight(int i, int j) const {
  if (i > j) std::swap(i, j);
  for (const auto& e : edges_) {
    if (e.i == i && e.j == j) return e.weight;
  }
  throw InputError("graph: no edge " + pair_name(i, j));
}

Laplacian::Laplacian(RealMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw InputError("laplacian: matrix must be square and non-empty");
  }
  if (!matrix_.allFinite()) throw InputError("laplacian: non-finite entries");
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  if ((matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InputError("laplacian: matrix is not symmetric");
  }
  if (matrix_.rowwise().sum().cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InputError("laplacian: rows do not sum to zero");
  }
  for (Eigen::Index r = 0; r < matrix_.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix_.cols(); ++c) {
      if (r != c && matrix_(r, c) > 0.0) {
        throw InputError("laplacian: positive off-diagonal entry");
      }
    }
  }
}

Laplacian laplacian(const Graph& g) {
  const int n = g.node_count();
  RealMatrix m = RealMatrix::Zero(n, n);
  for (const auto& e : g.edges()) {
    const int a = e.i - 1;
    const int b = e.j - 1;
    m(a, b) -= e.weight;
    m(b, a) -= e.weight;
    m(a, a) += e.weight;
    m(b, b) += e.weight;
  }
  return Laplacian(std::move(m));
}

Spectrum laplacian_spectrum(const Laplacian& l, double cluster_tol_rel) {
  // Symmetric input: eig takes the self-adjoint path and returns a real,
  // ascending spectrum.
  return eig(to_complex(l.matrix()), cluster_tol_rel);
}

int connected_components(const Graph& g) {
  std::vector<int> parent(static_cast<std::size_t>(g.node_count()));
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  int components = g.node_count();
  for (const auto& e : g.edges()) {
    const int a = root(e.i - 1);
    const int b = root(e.j - 1);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

std::string to_string(VariationKind kind) {
  switch (kind) {
    case VariationKind::remove_edge: return "remove_edge";
    case VariationKind::add_edge: return "add_edge";
    case VariationKind::reweight_edge: return "reweight_edge";
    case VariationKind::disconnect_node: return "disconnect_node";
  }
  return "unknown";
}

VariationKind parse_variation_kind(const std::string& name) {
  for (auto k : {VariationKind::remove_edge, VariationKind::add_edge,
                 VariationKind::reweight_edge, VariationKind::disconnect_node}) {
    if (to_string(k) == name) return k;
  }
  throw InputError("unknown variation kind '" + name + "'");
}

std::string LinkVariation::describe() const {
  std::ostringstream os;
  os << to_string(kind);
  if (kind == VariationKind::disconnect_node) {
    os << "(" << i << ")";
  } else {
    os << "(" << std::min(i, j) << "," << std::max(i, j);
    if (new_weight && kind != VariationKind::remove_edge) os << ",w=" << *new_weight;
    os << ")";
  }
  return os.str();
}

Graph apply_variation(const Graph& g, const LinkVariation& v) {
  std::vector<Edge> edges = g.edges();
  const std::string what = v.describe();
  switch (v.kind) {
    case VariationKind::remove_edge: {
      if (!g.has_edge(v.i, v.j)) throw InputError(what + ": edge not in base graph");
      const int a = std::min(v.i, v.j);
      const int b = std::max(v.i, v.j);
      std::erase_if(edges, [&](const Edge& e) { return e.i == a && e.j == b; });
      break;
    }
    case VariationKind::add_edge: {
      if (v.i == v.j) throw InputError(what + ": self-loop");
      if (g.has_edge(v.i, v.j)) throw InputError(what + ": edge already in base graph");
      const double w = v.new_weight.value_or(1.0);
      require_weight(w, what);
      edges.push_back({v.i, v.j, w});
      break;
    }
    case VariationKind::reweight_edge: {
      if (!g.has_edge(v.i, v.j)) throw InputError(what + ": edge not in base graph");
      if (!v.new_weight) throw InputError(what + ": new_weight is required");
      require_weight(*v.new_weight, what);
      const int a = std::min(v.i, v.j);
      const int b = std::max(v.i, v.j);
      for (auto& e : edges) {
        if (e.i == a && e.j == b) e.weight = *v.new_weight;
      }
      break;
    }
    case VariationKind::disconnect_node: {
      if (v.i < 1 || v.i > g.node_count()) throw InputError(what + ": node not in base graph");
      const auto before = edges.size();
      std::erase_if(edges, [&](const Edge& e) { return e.i == v.i || e.j == v.i; });
      if (edges.size() == before) throw InputError(what + ": node has no incident edges");
      break;
    }
  }
  return Graph(g.node_count(), std::move(edges));
}

std::vector<VariationCase> enumerate_single_link_variations(
    const Graph& g, const std::set<VariationKind>& kinds, double add_weight,
    std::optional<double> reweight_to) {
  std::vector<LinkVariation> variations;
  const int n = g.node_count();

  if (kinds.contains(VariationKind::remove_edge)) {
    for (const auto& e : g.edges()) variations.push_back({VariationKind::remove_edge, e.i, e.j, {}});
  }
  if (kinds.contains(VariationKind::add_edge)) {
    for (int a = 1; a <= n; ++a) {
      for (int b = a + 1; b <= n; ++b) {
        if (!g.has_edge(a, b)) variations.push_back({VariationKind::add_edge, a, b, add_weight});
      }
    }
  }
  if (kinds.contains(VariationKind::reweight_edge)) {
    if (!reweight_to) throw InputError("enumerate: reweight_edge requires a new weight");
    for (const auto& e : g.edges()) {
      variations.push_back({VariationKind::reweight_edge, e.i, e.j, reweight_to});
    }
  }
  if (kinds.contains(VariationKind::disconnect_node)) {
    for (int a = 1; a <= n; ++a) {
      const bool incident = std::any_of(g.edges().begin(), g.edges().end(),
                                        [&](const Edge& e) { return e.i == a || e.j == a; });
      if (incident) variations.push_back({VariationKind::disconnect_node, a, 0, {}});
    }
  }

  std::vector<VariationCase> out;
  out.reserve(variations.size());
  for (auto& v : variations) {
    Graph modified = apply_variation(g, v);
    Laplacian lap = laplacian(modified);
    out.push_back({std::move(v), std::move(modified), std::move(lap)});
  }
  return out;
}

}  // namespace netdisc
