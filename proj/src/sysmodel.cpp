#include "netdisc/sysmodel.hpp"

#include <cmath>
#include <limits>

#include "netdisc/errors.hpp"

namespace netdisc {

NodeDynamics::NodeDynamics(RealMatrix a, RealMatrix b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() != a_.cols() || b_.rows() != b_.cols()) {
    throw InputError("node dynamics: A and B must be square");
  }
  if (a_.rows() != b_.rows()) throw InputError("node dynamics: A and B differ in size");
  if (a_.rows() == 0) throw InputError("node dynamics: empty state");
  if (!a_.allFinite() || !b_.allFinite()) throw InputError("node dynamics: non-finite entries");
}

NetworkSystem::NetworkSystem(NodeDynamics dyn, Laplacian l)
    : dyn_(std::move(dyn)), l_(std::move(l)) {
  const int nn = l_.size();
  const int n = dyn_.n();
  if (nn == 0 || n == 0) throw InputError("network system: empty dimensions");
  RealMatrix phi = RealMatrix::Zero(nn * n, nn * n);
  for (int p = 0; p < nn; ++p) {
    for (int q = 0; q < nn; ++q) {
      auto block = phi.block(p * n, q * n, n, n);
      block = -l_.matrix()(p, q) * dyn_.b();
      if (p == q) block += dyn_.a();
    }
  }
  phi_ = to_complex(phi);
}

NetworkSystem assemble_transition(const NodeDynamics& dyn, const Laplacian& l) {
  return NetworkSystem(dyn, l);
}

Matrix modal_matrix(const NodeDynamics& dyn, Complex alpha) {
  return to_complex(dyn.a()) - alpha * to_complex(dyn.b());
}

std::vector<NetworkInvariantMode> network_invariant_modes(const NodeDynamics& dyn, double tol) {
  const int n = dyn.n();
  const Matrix a = to_complex(dyn.a());
  const Matrix b = to_complex(dyn.b());
  const Subspace kb = kernel(b, tol);
  std::vector<NetworkInvariantMode> modes;
  if (kb.dim() == 0) return modes;

  // Any A-eigenvector in kernel(B) lies in the largest A-invariant subspace
  // inside kernel(B). Compute it by the monotone recursion
  // V <- V intersect A^{-1} V, then take eigenpairs of A restricted to it.
  const double a_scale = tol * std::max(1.0, norm2(a));
  Subspace v = kb;
  for (int iter = 0; iter <= n; ++iter) {
    const Matrix outside = Matrix::Identity(n, n) - v.projector();
    Subspace next = subspace_intersect(v, kernel_abs(outside * a, a_scale));
    const bool stable = next.dim() == v.dim();
    v = std::move(next);
    if (stable || v.dim() == 0) break;
  }
  if (v.dim() == 0) return modes;

  const Matrix q = v.basis();
  const Matrix restricted = q.adjoint() * a * q;
  const Spectrum spec = eig(restricted);
  for (const auto& pair : spec.eigenpairs) {
    for (const auto& y : pair.vectors) {
      Vector x = q * y;
      x.normalize();
      // Fix the phase: largest-magnitude entry real and positive.
      Eigen::Index k = 0;
      x.cwiseAbs().maxCoeff(&k);
      x *= std::conj(x(k)) / std::abs(x(k));
      modes.push_back({pair.value, x});
    }
  }
  return modes;
}

Subspace sync_manifold(int node_count, int n) {
  if (node_count < 1 || n < 1) throw InputError("sync_manifold: sizes must be positive");
  Matrix basis = Matrix::Zero(node_count * n, n);
  const double s = 1.0 / std::sqrt(static_cast<double>(node_count));
  for (int p = 0; p < node_count; ++p) {
    for (int k = 0; k < n; ++k) basis(p * n + k, k) = s;
  }
  return Subspace::from_orthonormal(std::move(basis));
}

int controllability_rank(const RealMatrix& a, const RealMatrix& b, double rel_tol) {
  if (a.rows() != a.cols() || b.rows() != a.rows()) {
    throw InputError("controllability_rank: inconsistent dimensions");
  }
  const Eigen::Index n = a.rows();
  const Eigen::Index m = b.cols();
  RealMatrix ctrb(n, n * m);
  ctrb.leftCols(m) = b;
  for (Eigen::Index k = 1; k < n; ++k) {
    ctrb.middleCols(k * m, m) = a * ctrb.middleCols((k - 1) * m, m);
  }
  return rank(to_complex(ctrb), rel_tol);
}

ModalEigenstructure modal_eigenstructure(const NodeDynamics& dyn, const Laplacian& l,
                                         double cluster_tol_rel) {
  const int nn = l.size();
  const int n = dyn.n();
  const NetworkSystem sys(dyn, l);
  const Matrix& phi = sys.phi();

  ModalEigenstructure out;
  const Spectrum lspec = laplacian_spectrum(l, cluster_tol_rel);
  std::vector<Spectrum> per_alpha;
  for (const auto& lp : lspec.eigenpairs) {
    per_alpha.push_back(eig(modal_matrix(dyn, lp.value), cluster_tol_rel));
    for (const auto& v : lp.vectors) out.blocks.push_back({lp.value, v, per_alpha.back()});
  }

  for (std::size_t bi = 0; bi < out.blocks.size(); ++bi) {
    const auto& blk = out.blocks[bi];
    for (const auto& mp : blk.modal_spectrum.eigenpairs) {
      for (const auto& w : mp.vectors) {
        Vector x = kron(blk.laplacian_vector, w);
        x.normalize();
        const double res = (phi * x - mp.value * x).norm();
        out.max_residual = std::max(out.max_residual, res);
        out.kronecker_vectors.push_back({static_cast<int>(bi), mp.value, std::move(x), res});
      }
    }
  }

  // Collisions between modal spectra of distinct Laplacian eigenvalues. Blocks
  // sharing an alpha cluster have identical modal spectra, so compare per
  // alpha cluster rather than per block.
  out.min_cross_block_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < per_alpha.size(); ++i) {
    for (std::size_t j = i + 1; j < per_alpha.size(); ++j) {
      const double tol = std::max(per_alpha[i].cluster_tol, per_alpha[j].cluster_tol);
      for (const auto& pi : per_alpha[i].eigenpairs) {
        for (const auto& pj : per_alpha[j].eigenpairs) {
          const double d = std::abs(pi.value - pj.value);
          out.min_cross_block_gap = std::min(out.min_cross_block_gap, d);
          if (d < tol) {
            out.cross_block_collisions.push_back({lspec.eigenpairs[i].value, lspec.eigenpairs[j].value,
                                                  0.5 * (pi.value + pj.value), d});
          }
        }
      }
    }
  }

  Matrix collected(nn * n, static_cast<Eigen::Index>(out.kronecker_vectors.size()));
  for (std::size_t k = 0; k < out.kronecker_vectors.size(); ++k) {
    collected.col(static_cast<Eigen::Index>(k)) = out.kronecker_vectors[k].vector;
  }
  out.complete = rank(collected) == nn * n;

  if (!out.complete) {
    const Spectrum phispec = eig(phi, cluster_tol_rel);
    for (const auto& pp : phispec.eigenpairs) {
      std::vector<Vector> members;
      for (const auto& kv : out.kronecker_vectors) {
        if (std::abs(kv.value - pp.value) < phispec.cluster_tol) members.push_back(kv.vector);
      }
      const int r = Subspace::span(nn * n, members).dim();
      if (r < pp.algebraic_multiplicity) {
        out.deficient_clusters.push_back({pp.value, pp.algebraic_multiplicity, r});
      }
    }
  }
  return out;
}

}  // namespace netdisc
