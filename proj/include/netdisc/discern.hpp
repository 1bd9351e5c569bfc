#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netdisc/graphnet.hpp"
#include "netdisc/numkernel.hpp"
#include "netdisc/oracle.hpp"
#include "netdisc/sysmodel.hpp"

namespace netdisc {

/// States x with phi^k x = phibar^k x for all k >= 0 (equivalently
/// e^{phi t} x = e^{phibar t} x for all t): the kernel of the stacked matrix
/// [D; D phi; ...; D phi^{m-1}], D = phi - phibar, each block row rescaled to
/// unit Frobenius norm. Throws InputError on a dimension mismatch.
Subspace indiscernible_subspace(const Matrix& phi, const Matrix& phibar,
                                double rank_tol = defaults::kRankTol);
Subspace indiscernible_subspace(const NetworkSystem& phi, const NetworkSystem& phibar,
                                double rank_tol = defaults::kRankTol);

/// Same subspace by the Wong recursion V0 = ker D, V_{k+1} = V_k ∩ phi^{-1} V_k:
/// the largest phi-invariant subspace inside ker D.
Subspace indiscernible_subspace_wong(const Matrix& phi, const Matrix& phibar,
                                     double rank_tol = defaults::kRankTol);
Subspace indiscernible_subspace_wong(const NetworkSystem& phi, const NetworkSystem& phibar,
                                     double rank_tol = defaults::kRankTol);

/// Span of v (x) w over common eigenpairs (alpha, v) of L and Lbar and
/// eigenpairs (lambda, w) of A - alpha B, plus a (x) v for every
/// network-invariant mode. Always contained in the indiscernible subspace.
Subspace shared_modal_subspace(const NodeDynamics& dyn, const Laplacian& l, const Laplacian& lbar,
                               double cluster_tol_rel = defaults::kClusterTol);

struct ConditionVerdict {
  bool holds = true;
  /// Colliding triples (alpha_i, alpha_j, lambda).
  std::vector<ModalCollision> collisions;
  /// Distinct alphas that were compared (clustered union of both spectra).
  std::vector<Complex> alphas;
  double min_cross_block_gap = 0.0;
  double tol = 0.0;
  /// The alphas range over spec(L) ∪ spec(Lbar).
  std::string reading = "union-spectra reading";
};

/// Holds iff spec(A - a_i B) and spec(A - a_j B) are disjoint (at the absolute
/// tolerance tol_rel * max(1, ||A - a B||)) for every pair of distinct alphas
/// drawn from spec(L) ∪ spec(Lbar).
ConditionVerdict corrected_condition(const NodeDynamics& dyn, const Laplacian& l,
                                     const Laplacian& lbar,
                                     double tol_rel = defaults::kClusterTol);

struct AnalyzeOptions {
  double cluster_tol = defaults::kClusterTol;
  double rank_tol = defaults::kRankTol;
  double angle_tol = defaults::kAngleTol;
  bool validate = false;
  OracleConfig oracle;
};

/// Eigenvalue shared by phi and phibar with the dimension of the common
/// eigenspace.
struct SharedEigenvalue {
  Complex value;
  int common_dim = 0;
};

inline constexpr const char* kVerdictNoVariation = "no variation";
inline constexpr const char* kVerdictDetectable = "detectable-outside-sync";
inline constexpr const char* kVerdictExtra = "extra indiscernible states present";

struct DiscernibilityReport {
  int node_count = 0;
  int node_state_size = 0;

  Spectrum laplacian_spectrum;
  Spectrum laplacian_bar_spectrum;
  Spectrum phi_spectrum;
  Spectrum phibar_spectrum;
  std::vector<SharedEigenvalue> shared_eigenvalues;

  Subspace indiscernible;
  Subspace indiscernible_wong;
  double algorithm_angle = 0.0;  // principal angle between the two routes

  Subspace sync;
  int sync_in_indiscernible_dim = 0;
  int extra_dim = 0;

  Subspace shared_modal;
  bool shared_modal_contained = false;
  std::vector<NetworkInvariantMode> invariant_modes;
  ConditionVerdict corrected_condition;
  ModalEigenstructure modal;      // for L
  ModalEigenstructure modal_bar;  // for Lbar

  std::optional<ValidationSummary> oracle_summary;
  std::string verdict;
};

/// End-to-end analysis of the pair (I (x) A - L (x) B, I (x) A - Lbar (x) B).
DiscernibilityReport analyze(const NodeDynamics& dyn, const Laplacian& l, const Laplacian& lbar,
                             const AnalyzeOptions& opts = {});

}  // namespace netdisc
