#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "netdisc/numkernel.hpp"

namespace netdisc {

/// Undirected weighted edge between 1-based node labels.
struct Edge {
  int i = 0;
  int j = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected weighted graph on nodes 1..N. Edges are kept normalized
/// (i < j) and sorted; construction validates the graph.
class Graph {
 public:
  Graph() = default;
  /// Throws InputError on self-loops, duplicate pairs, out-of-range labels or
  /// non-positive weights.
  Graph(int node_count, std::vector<Edge> edges);

  int node_count() const { return node_count_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(int i, int j) const;
  /// Weight of (i, j); throws InputError if the edge is absent.
  double weight(int i, int j) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int node_count_ = 0;
  std::vector<Edge> edges_;
};

/// Real symmetric zero-row-sum matrix of a graph.
class Laplacian {
 public:
  Laplacian() = default;
  /// Wraps an explicit matrix; validates symmetry, zero row sums and
  /// non-positive off-diagonal entries.
  explicit Laplacian(RealMatrix matrix);

  const RealMatrix& matrix() const { return matrix_; }
  int size() const { return static_cast<int>(matrix_.rows()); }

 private:
  RealMatrix matrix_;
};

Laplacian laplacian(const Graph& g);

/// Real spectrum of L, ascending.
Spectrum laplacian_spectrum(const Laplacian& l, double cluster_tol_rel = defaults::kClusterTol);

/// Number of connected components (union-find; independent of the spectrum).
int connected_components(const Graph& g);

enum class VariationKind { remove_edge, add_edge, reweight_edge, disconnect_node };

std::string to_string(VariationKind kind);
/// Parses "remove_edge" etc.; throws InputError on unknown names.
VariationKind parse_variation_kind(const std::string& name);

/// A single structural change to a base graph.
struct LinkVariation {
  VariationKind kind = VariationKind::remove_edge;
  int i = 0;  // edge endpoint, or the node for disconnect_node
  int j = 0;  // unused for disconnect_node
  std::optional<double> new_weight;

  /// e.g. "remove_edge(1,3)", "disconnect_node(4)", "reweight_edge(1,2,w=0.5)".
  std::string describe() const;
};

/// Applies a variation. Throws InputError if the target is missing (remove,
/// reweight, disconnect) or already present (add). disconnect_node drops every
/// incident edge but keeps the node count.
Graph apply_variation(const Graph& g, const LinkVariation& v);

struct VariationCase {
  LinkVariation variation;
  Graph graph;
  Laplacian laplacian;
};

/// All single-link variations of the requested kinds, ordered by kind (in the
/// order remove, add, reweight, disconnect) and then by node indices.
/// Added links get weight 1 unless add_weight is given. reweight_edge requires
/// reweight_to; without it an InputError is thrown.
std::vector<VariationCase> enumerate_single_link_variations(
    const Graph& g, const std::set<VariationKind>& kinds, double add_weight = 1.0,
    std::optional<double> reweight_to = std::nullopt);

}  // namespace netdisc
