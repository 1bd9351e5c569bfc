#pragma once

#include <string>
#include <vector>

#include "netdisc/graphnet.hpp"
#include "netdisc/numkernel.hpp"

namespace netdisc {

/// Per-node dynamics pair (A, B), both n x n real.
class NodeDynamics {
 public:
  NodeDynamics() = default;
  NodeDynamics(RealMatrix a, RealMatrix b);

  const RealMatrix& a() const { return a_; }
  const RealMatrix& b() const { return b_; }
  int n() const { return static_cast<int>(a_.rows()); }

 private:
  RealMatrix a_;
  RealMatrix b_;
};

/// Network transition matrix phi = I_N (x) A - L (x) B together with the data
/// it was assembled from.
class NetworkSystem {
 public:
  NetworkSystem(NodeDynamics dyn, Laplacian l);

  int node_count() const { return l_.size(); }
  int node_state_size() const { return dyn_.n(); }
  int state_dim() const { return node_count() * node_state_size(); }
  const Matrix& phi() const { return phi_; }
  const NodeDynamics& dynamics() const { return dyn_; }
  const Laplacian& laplacian() const { return l_; }

 private:
  NodeDynamics dyn_;
  Laplacian l_;
  Matrix phi_;
};

/// Throws InputError when A/B and L sizes are inconsistent.
NetworkSystem assemble_transition(const NodeDynamics& dyn, const Laplacian& l);

/// A - alpha B.
Matrix modal_matrix(const NodeDynamics& dyn, Complex alpha);

/// (lambda, v) with A v = lambda v and B v = 0: an eigenpair of A - alpha B
/// for every alpha, hence of phi for every topology.
struct NetworkInvariantMode {
  Complex value;
  Vector vector;  // unit norm, length n
};

/// Eigenpairs of A restricted to kernel(B). One entry per independent
/// direction; empty when kernel(B) holds no eigenvector of A.
std::vector<NetworkInvariantMode> network_invariant_modes(const NodeDynamics& dyn,
                                                          double tol = defaults::kRankTol);

/// span{1 (x) e_k : k = 1..n} in C^{N n}.
Subspace sync_manifold(int node_count, int n);

/// Rank of [B, AB, ..., A^{n-1}B].
int controllability_rank(const RealMatrix& a, const RealMatrix& b,
                         double rel_tol = defaults::kRankTol);

struct ModalBlock {
  Complex alpha;
  Vector laplacian_vector;
  Spectrum modal_spectrum;  // spectrum of A - alpha B
};

struct ModalCollision {
  Complex alpha_i;
  Complex alpha_j;
  Complex value;      // shared modal eigenvalue (midpoint of the matching pair)
  double distance;    // |lambda_i - lambda_j|
};

struct KroneckerVector {
  int block = 0;        // index into ModalEigenstructure::blocks
  Complex value;        // modal eigenvalue lambda
  Vector vector;        // v (x) w, unit norm
  double residual = 0;  // ||phi x - lambda x||
};

/// Eigenvalue cluster of phi whose Kronecker candidates span fewer directions
/// than its algebraic multiplicity.
struct DeficientCluster {
  Complex value;
  int algebraic_multiplicity = 0;
  int kronecker_rank = 0;
};

struct ModalEigenstructure {
  std::vector<ModalBlock> blocks;
  std::vector<KroneckerVector> kronecker_vectors;
  std::vector<ModalCollision> cross_block_collisions;
  /// Smallest |lambda_i - lambda_j| across blocks with distinct alpha
  /// (infinity when fewer than two distinct alphas exist).
  double min_cross_block_gap = 0.0;
  double max_residual = 0.0;
  bool complete = false;
  std::vector<DeficientCluster> deficient_clusters;
};

/// Modal decomposition of phi through the eigenpairs of a symmetric L.
/// Throws InputError for non-symmetric L (not possible through Laplacian).
ModalEigenstructure modal_eigenstructure(const NodeDynamics& dyn, const Laplacian& l,
                                         double cluster_tol_rel = defaults::kClusterTol);

}  // namespace netdisc
