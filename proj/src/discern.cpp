#include "netdisc/discern.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "netdisc/errors.hpp"

namespace netdisc {

namespace {

void require_pair(const Matrix& phi, const Matrix& phibar, const char* who) {
  if (phi.rows() != phi.cols() || phibar.rows() != phibar.cols() || phi.rows() != phibar.rows()) {
    throw InputError(std::string(who) + ": transition matrices must be square and of equal size");
  }
}

}  // namespace

Subspace indiscernible_subspace(const Matrix& phi, const Matrix& phibar, double rank_tol) {
  require_pair(phi, phibar, "indiscernible_subspace");
  const Eigen::Index m = phi.rows();
  const Matrix delta = phi - phibar;
  if (delta.norm() == 0.0) return Subspace::full(static_cast<int>(m), rank_tol);

  // Block k is D phi^k divided by its a-priori bound ||D|| max(1, ||phi||)^k,
  // then brought to unit Frobenius norm unless it is smaller than
  // kBlockFloor of that bound. Row scaling leaves the kernel unchanged; the
  // floor keeps blocks that are zero up to rounding from being amplified.
  constexpr double kBlockFloor = 1e-3;
  const double growth = std::max(1.0, norm2(phi));
  Matrix stacked(m * m, m);
  Matrix block = delta / delta.norm();
  for (Eigen::Index k = 0; k < m; ++k) {
    stacked.middleRows(k * m, m) = block / std::max(block.norm(), kBlockFloor);
    block = block * phi / growth;
  }
  return kernel(stacked, rank_tol);
}

Subspace indiscernible_subspace(const NetworkSystem& phi, const NetworkSystem& phibar,
                                double rank_tol) {
  return indiscernible_subspace(phi.phi(), phibar.phi(), rank_tol);
}

Subspace indiscernible_subspace_wong(const Matrix& phi, const Matrix& phibar, double rank_tol) {
  require_pair(phi, phibar, "indiscernible_subspace_wong");
  const int m = static_cast<int>(phi.rows());
  const Matrix delta = phi - phibar;
  if (delta.norm() == 0.0) return Subspace::full(m, rank_tol);

  const double abs_tol = rank_tol * std::max(1.0, norm2(phi));
  Subspace v = kernel(delta, rank_tol);
  for (int iter = 0; iter <= m; ++iter) {
    if (v.dim() == 0) return v;
    // Preimage of V under phi, restricted to V: coordinates y with
    // (I - P_V) phi Q y = 0.
    const Matrix& q = v.basis();
    const Matrix leak = phi * q - q * (q.adjoint() * (phi * q));
    const Subspace keep = kernel_abs(leak, abs_tol);
    if (keep.dim() == v.dim()) return v;
    Matrix next = q * keep.basis();
    v = Subspace::from_orthonormal(std::move(next), rank_tol);
  }
  throw NumericalError("indiscernible_subspace_wong: recursion did not reach a fixed point");
}

Subspace indiscernible_subspace_wong(const NetworkSystem& phi, const NetworkSystem& phibar,
                                     double rank_tol) {
  return indiscernible_subspace_wong(phi.phi(), phibar.phi(), rank_tol);
}

Subspace shared_modal_subspace(const NodeDynamics& dyn, const Laplacian& l, const Laplacian& lbar,
                               double cluster_tol_rel) {
  if (l.size() != lbar.size()) throw InputError("shared_modal_subspace: Laplacian sizes differ");
  const int nn = l.size();
  const int n = dyn.n();
  const Spectrum ls = laplacian_spectrum(l, cluster_tol_rel);
  const Spectrum lbs = laplacian_spectrum(lbar, cluster_tol_rel);
  const double tol = std::max(ls.cluster_tol, lbs.cluster_tol);

  std::vector<Vector> generators;
  for (const auto& p : ls.eigenpairs) {
    const int j = lbs.find(p.value, tol);
    if (j < 0) continue;
    const auto& q = lbs.eigenpairs[static_cast<std::size_t>(j)];
    const Subspace common = subspace_intersect(Subspace::span(nn, p.vectors),
                                               Subspace::span(nn, q.vectors));
    if (common.dim() == 0) continue;
    const Complex alpha = 0.5 * (p.value + q.value);
    const Spectrum modal = eig(modal_matrix(dyn, alpha), cluster_tol_rel);
    for (Eigen::Index c = 0; c < common.dim(); ++c) {
      const Vector v = common.basis().col(c);
      for (const auto& mp : modal.eigenpairs) {
        for (const auto& w : mp.vectors) generators.push_back(kron(v, w));
      }
    }
  }
  for (const auto& mode : network_invariant_modes(dyn)) {
    for (int p = 0; p < nn; ++p) {
      generators.push_back(kron(Vector::Unit(nn, p), mode.vector));
    }
  }
  return Subspace::span(nn * n, generators);
}

ConditionVerdict corrected_condition(const NodeDynamics& dyn, const Laplacian& l,
                                     const Laplacian& lbar, double tol_rel) {
  if (l.size() != lbar.size()) throw InputError("corrected_condition: Laplacian sizes differ");
  const Spectrum ls = laplacian_spectrum(l, tol_rel);
  const Spectrum lbs = laplacian_spectrum(lbar, tol_rel);
  const double alpha_tol = std::max(ls.cluster_tol, lbs.cluster_tol);

  ConditionVerdict verdict;
  for (const auto* s : {&ls, &lbs}) {
    for (const auto& p : s->eigenpairs) {
      const bool seen = std::any_of(verdict.alphas.begin(), verdict.alphas.end(),
                                    [&](Complex a) { return std::abs(a - p.value) < alpha_tol; });
      if (!seen) verdict.alphas.push_back(p.value);
    }
  }
  std::sort(verdict.alphas.begin(), verdict.alphas.end(),
            [](Complex a, Complex b) { return a.real() < b.real(); });

  std::vector<Spectrum> modal;
  double scale = 1.0;
  for (Complex a : verdict.alphas) {
    Matrix m = modal_matrix(dyn, a);
    scale = std::max(scale, norm2(m));
    modal.push_back(eig(m, tol_rel));
  }
  verdict.tol = tol_rel * scale;
  verdict.min_cross_block_gap = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < modal.size(); ++i) {
    for (std::size_t j = i + 1; j < modal.size(); ++j) {
      for (const auto& pi : modal[i].eigenpairs) {
        for (const auto& pj : modal[j].eigenpairs) {
          const double d = std::abs(pi.value - pj.value);
          verdict.min_cross_block_gap = std::min(verdict.min_cross_block_gap, d);
          if (d < verdict.tol) {
            verdict.collisions.push_back(
                {verdict.alphas[i], verdict.alphas[j], 0.5 * (pi.value + pj.value), d});
          }
        }
      }
    }
  }
  verdict.holds = verdict.collisions.empty();
  return verdict;
}

DiscernibilityReport analyze(const NodeDynamics& dyn, const Laplacian& l, const Laplacian& lbar,
                             const AnalyzeOptions& opts) {
  if (l.size() != lbar.size()) {
    throw InputError("analyze: base and modified graphs have different node counts");
  }
  const NetworkSystem sys(dyn, l);
  const NetworkSystem sysbar(dyn, lbar);
  const int nn = l.size();
  const int n = dyn.n();

  DiscernibilityReport r;
  r.node_count = nn;
  r.node_state_size = n;
  r.laplacian_spectrum = laplacian_spectrum(l, opts.cluster_tol);
  r.laplacian_bar_spectrum = laplacian_spectrum(lbar, opts.cluster_tol);
  r.phi_spectrum = eig(sys.phi(), opts.cluster_tol);
  r.phibar_spectrum = eig(sysbar.phi(), opts.cluster_tol);

  const double shared_tol = std::max(r.phi_spectrum.cluster_tol, r.phibar_spectrum.cluster_tol);
  for (const auto& p : r.phi_spectrum.eigenpairs) {
    const int j = r.phibar_spectrum.find(p.value, shared_tol);
    if (j < 0) continue;
    const auto& q = r.phibar_spectrum.eigenpairs[static_cast<std::size_t>(j)];
    const Subspace common = subspace_intersect(Subspace::span(nn * n, p.vectors),
                                               Subspace::span(nn * n, q.vectors));
    if (common.dim() > 0) r.shared_eigenvalues.push_back({p.value, common.dim()});
  }

  r.indiscernible = indiscernible_subspace(sys, sysbar, opts.rank_tol);
  r.indiscernible_wong = indiscernible_subspace_wong(sys, sysbar, opts.rank_tol);
  r.algorithm_angle = max_principal_angle(r.indiscernible, r.indiscernible_wong);

  r.sync = sync_manifold(nn, n);
  r.sync_in_indiscernible_dim = subspace_intersect(r.sync, r.indiscernible).dim();
  r.extra_dim = r.indiscernible.dim() - r.sync_in_indiscernible_dim;

  r.shared_modal = shared_modal_subspace(dyn, l, lbar, opts.cluster_tol);
  r.shared_modal_contained = subspace_contains(r.indiscernible, r.shared_modal, opts.angle_tol);
  r.invariant_modes = network_invariant_modes(dyn, opts.rank_tol);
  r.corrected_condition = corrected_condition(dyn, l, lbar, opts.cluster_tol);
  r.modal = modal_eigenstructure(dyn, l, opts.cluster_tol);
  r.modal_bar = modal_eigenstructure(dyn, lbar, opts.cluster_tol);

  if (opts.validate) {
    r.oracle_summary = validate_subspace(sys, sysbar, r.indiscernible, opts.oracle);
  }

  const double lscale = std::max(1.0, l.matrix().cwiseAbs().maxCoeff());
  if ((l.matrix() - lbar.matrix()).cwiseAbs().maxCoeff() <= 1e-12 * lscale) {
    r.verdict = kVerdictNoVariation;
  } else if (r.extra_dim == 0) {
    r.verdict = kVerdictDetectable;
  } else {
    r.verdict = kVerdictExtra;
  }
  return r;
}

}  // namespace netdisc
