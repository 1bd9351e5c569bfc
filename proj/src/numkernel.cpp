#include "netdisc/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "netdisc/errors.hpp"

namespace netdisc {

namespace {

void require_finite(const Matrix& m, const char* who) {
  if (!m.allFinite()) {
    throw InputError(std::string(who) + ": matrix has non-finite entries");
  }
}

void require_same_ambient(const Subspace& u, const Subspace& v, const char* who) {
  if (u.ambient_dim() != v.ambient_dim()) {
    throw InputError(std::string(who) + ": ambient dimension mismatch (" +
                     std::to_string(u.ambient_dim()) + " vs " +
                     std::to_string(v.ambient_dim()) + ")");
  }
}

bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Singular values and right singular vectors of m. Tall inputs are reduced to
// their square R factor first; the row space (and kernel) is unchanged.
Eigen::JacobiSVD<Matrix> right_svd(const Matrix& m) {
  if (m.rows() > m.cols()) {
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix r = qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
    return Eigen::JacobiSVD<Matrix>(r, Eigen::ComputeFullV);
  }
  return Eigen::JacobiSVD<Matrix>(m, Eigen::ComputeFullV);
}

// Left singular vectors of `columns` whose singular value exceeds abs_tol.
Matrix range_basis(const Matrix& columns, double abs_tol) {
  if (columns.cols() == 0 || columns.rows() == 0) {
    return Matrix(columns.rows(), 0);
  }
  Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > abs_tol) ++r;
  return svd.matrixU().leftCols(r);
}

// Threshold on sin(angle) used by intersect/sum so that both agree with the
// principal-angle notion of containment.
double angle_threshold() { return std::sin(defaults::kAngleTol); }

}  // namespace

Matrix to_complex(const RealMatrix& m) { return m.cast<Complex>(); }

double norm2(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

int rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++r;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Spectrum

int Spectrum::dimension() const {
  int d = 0;
  for (const auto& p : eigenpairs) d += p.algebraic_multiplicity;
  return d;
}

std::vector<Complex> Spectrum::values() const {
  std::vector<Complex> out;
  out.reserve(eigenpairs.size());
  for (const auto& p : eigenpairs) out.push_back(p.value);
  return out;
}

int Spectrum::find(Complex value, double tol) const {
  int best = -1;
  double best_dist = tol;
  for (std::size_t i = 0; i < eigenpairs.size(); ++i) {
    const double d = std::abs(eigenpairs[i].value - value);
    if (d <= best_dist) {
      best = static_cast<int>(i);
      best_dist = d;
    }
  }
  return best;
}

int Spectrum::multiplicity_of(Complex value, double tol) const {
  const int i = find(value, tol);
  return i < 0 ? 0 : eigenpairs[static_cast<std::size_t>(i)].algebraic_multiplicity;
}

Spectrum eig(const Matrix& m, double cluster_tol_rel) {
  if (m.rows() != m.cols()) {
    throw InputError("eig: matrix is not square (" + std::to_string(m.rows()) +
                     "x" + std::to_string(m.cols()) + ")");
  }
  require_finite(m, "eig");
  if (cluster_tol_rel <= 0.0) cluster_tol_rel = defaults::kClusterTol;

  const Eigen::Index n = m.rows();
  const double mnorm = norm2(m);
  Spectrum spec;
  spec.cluster_tol = cluster_tol_rel * std::max(1.0, mnorm);
  if (n == 0) return spec;

  const bool hermitian = (m - m.adjoint()).norm() <= 1e-14 * std::max(1.0, m.norm());

  std::vector<Complex> raw(static_cast<std::size_t>(n));
  Matrix raw_vectors;
  if (hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success) {
      throw NumericalError("eig: self-adjoint eigensolver did not converge");
    }
    for (Eigen::Index i = 0; i < n; ++i) raw[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    raw_vectors = es.eigenvectors();
  } else {
    Eigen::ComplexEigenSolver<Matrix> es(m, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) {
      throw NumericalError("eig: complex eigensolver did not converge");
    }
    for (Eigen::Index i = 0; i < n; ++i) raw[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  }

  // Single-linkage clustering: union of all pairs closer than cluster_tol.
  std::vector<std::size_t> parent(raw.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < raw.size(); ++i) {
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      if (std::abs(raw[i] - raw[j]) < spec.cluster_tol) parent[root(i)] = root(j);
    }
  }
  std::vector<std::vector<std::size_t>> members(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) members[root(i)].push_back(i);

  for (const auto& group : members) {
    if (group.empty()) continue;
    Eigenpair pair;
    Complex mean{0.0, 0.0};
    for (auto i : group) mean += raw[i];
    mean /= static_cast<double>(group.size());
    if (std::abs(mean.imag()) < spec.cluster_tol) mean.imag(0.0);
    if (std::abs(mean.real()) < spec.cluster_tol * 1e-6) mean.real(0.0);
    pair.value = mean;
    pair.algebraic_multiplicity = static_cast<int>(group.size());

    if (hermitian) {
      for (auto i : group) pair.vectors.emplace_back(raw_vectors.col(static_cast<Eigen::Index>(i)));
    } else {
      // Eigenspace = near-kernel of (M - mean I), capped at the multiplicity.
      Matrix shifted = m - mean * Matrix::Identity(n, n);
      Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeFullV);
      const auto& s = svd.singularValues();
      int count = 0;
      for (Eigen::Index k = s.size() - 1; k >= 0 && s(k) <= spec.cluster_tol; --k) ++count;
      count = std::clamp(count, 1, pair.algebraic_multiplicity);
      for (int k = 0; k < count; ++k) {
        pair.vectors.emplace_back(svd.matrixV().col(n - 1 - k));
      }
    }
    spec.eigenpairs.push_back(std::move(pair));
  }
  std::sort(spec.eigenpairs.begin(), spec.eigenpairs.end(),
            [](const Eigenpair& a, const Eigenpair& b) { return lex_less(a.value, b.value); });
  return spec;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::zero(int ambient_dim, double tol) {
  return Subspace(ambient_dim, Matrix(ambient_dim, 0), tol);
}

Subspace Subspace::full(int ambient_dim, double tol) {
  return Subspace(ambient_dim, Matrix::Identity(ambient_dim, ambient_dim), tol);
}

Subspace Subspace::span(const Matrix& columns, double tol) {
  const int ambient = static_cast<int>(columns.rows());
  if (columns.cols() == 0) return zero(ambient, tol);
  require_finite(columns, "Subspace::span");
  const double smax = norm2(columns);
  if (smax == 0.0) return zero(ambient, tol);
  return Subspace(ambient, range_basis(columns, tol * smax), tol);
}

Subspace Subspace::span(int ambient_dim, const std::vector<Vector>& vectors, double tol) {
  Matrix cols(ambient_dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].size() != ambient_dim) {
      throw InputError("Subspace::span: vector length does not match ambient dimension");
    }
    cols.col(static_cast<Eigen::Index>(k)) = vectors[k];
  }
  return span(cols, tol);
}

Subspace Subspace::from_orthonormal(Matrix basis, double tol) {
  const Eigen::Index k = basis.cols();
  const double err = (basis.adjoint() * basis - Matrix::Identity(k, k)).norm();
  if (!(err <= 1e-8)) {
    throw InputError("Subspace::from_orthonormal: basis is not orthonormal");
  }
  const int ambient = static_cast<int>(basis.rows());
  return Subspace(ambient, std::move(basis), tol);
}

Matrix Subspace::projector() const { return basis_ * basis_.adjoint(); }

Subspace Subspace::complement() const {
  if (dim() == 0) return full(ambient_dim_, tol_);
  Subspace k = kernel(basis_.adjoint(), tol_);
  return Subspace(ambient_dim_, k.basis_, tol_);
}

// ---------------------------------------------------------------------------
// Kernel and subspace arithmetic

Subspace kernel(const Matrix& m, double tol) {
  const int n = static_cast<int>(m.cols());
  if (m.rows() == 0) return Subspace::full(n, tol);
  require_finite(m, "kernel");
  if (n == 0) return Subspace::zero(0, tol);

  auto svd = right_svd(m);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  if (smax == 0.0) return Subspace::full(n, tol);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > tol * smax) ++r;
  Matrix basis = svd.matrixV().rightCols(n - r);
  return Subspace::from_orthonormal(std::move(basis), tol);
}

Subspace kernel_abs(const Matrix& m, double abs_tol) {
  const int n = static_cast<int>(m.cols());
  if (m.rows() == 0) return Subspace::full(n);
  require_finite(m, "kernel_abs");
  if (n == 0) return Subspace::zero(0);
  auto svd = right_svd(m);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > abs_tol) ++r;
  Matrix basis = svd.matrixV().rightCols(n - r);
  return Subspace::from_orthonormal(std::move(basis));
}

Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
  require_same_ambient(u, v, "subspace_intersect");
  const int n = u.ambient_dim();
  const double tol = std::max(u.tol(), v.tol());
  if (u.dim() == 0 || v.dim() == 0) return Subspace::zero(n, tol);

  // x is in both iff it is annihilated by both complement projectors.
  Matrix stacked(2 * n, n);
  const Matrix eye = Matrix::Identity(n, n);
  stacked.topRows(n) = eye - u.projector();
  stacked.bottomRows(n) = eye - v.projector();

  auto svd = right_svd(stacked);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > angle_threshold()) ++r;
  Matrix basis = svd.matrixV().rightCols(n - r);
  return Subspace::from_orthonormal(std::move(basis), tol);
}

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
  require_same_ambient(u, v, "subspace_sum");
  const int n = u.ambient_dim();
  const double tol = std::max(u.tol(), v.tol());
  if (v.dim() == 0) return Subspace::from_orthonormal(u.basis(), tol);
  if (u.dim() == 0) return Subspace::from_orthonormal(v.basis(), tol);

  // Directions of v not already within angle_tol of u.
  Matrix residual = v.basis() - u.basis() * (u.basis().adjoint() * v.basis());
  Matrix extra = range_basis(residual, angle_threshold());
  Matrix basis(n, u.dim() + extra.cols());
  basis << u.basis(), extra;
  // Re-orthonormalize once to clean up rounding in the appended block.
  Eigen::HouseholderQR<Matrix> qr(basis);
  Matrix q = qr.householderQ() * Matrix::Identity(n, basis.cols());
  return Subspace::from_orthonormal(std::move(q), tol);
}

double containment_angle(const Subspace& u, const Subspace& v) {
  require_same_ambient(u, v, "containment_angle");
  if (v.dim() == 0) return 0.0;
  if (u.dim() == 0) return std::acos(0.0);
  Matrix residual = v.basis() - u.basis() * (u.basis().adjoint() * v.basis());
  const double s = norm2(residual);
  return std::asin(std::min(1.0, s));
}

double max_principal_angle(const Subspace& u, const Subspace& v) {
  require_same_ambient(u, v, "max_principal_angle");
  if (u.dim() != v.dim()) return std::acos(0.0);
  return std::max(containment_angle(u, v), containment_angle(v, u));
}

bool subspace_contains(const Subspace& u, const Subspace& v, double angle_tol) {
  return containment_angle(u, v) <= angle_tol;
}

bool subspace_contains(const Subspace& u, const Vector& x, double angle_tol) {
  if (x.size() != u.ambient_dim()) {
    throw InputError("subspace_contains: vector length does not match ambient dimension");
  }
  const double xn = x.norm();
  if (xn == 0.0) return true;
  Matrix col = x / xn;
  return subspace_contains(u, Subspace::from_orthonormal(col, u.tol()), angle_tol);
}

bool subspace_equal(const Subspace& u, const Subspace& v, double angle_tol) {
  return max_principal_angle(u, v) <= angle_tol;
}

std::optional<RealMatrix> real_basis(const Subspace& u) {
  const Eigen::Index n = u.ambient_dim();
  if (u.dim() == 0) return RealMatrix(n, 0);
  RealMatrix parts(n, 2 * u.dim());
  parts << u.basis().real(), u.basis().imag();
  Eigen::JacobiSVD<RealMatrix> svd(parts, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > angle_threshold()) ++r;
  if (r != u.dim()) return std::nullopt;
  return RealMatrix(svd.matrixU().leftCols(r));
}

// ---------------------------------------------------------------------------
// Matrix exponential

Matrix expm(const Matrix& m, double t) {
  if (m.rows() != m.cols()) throw InputError("expm: matrix is not square");
  require_finite(m, "expm");
  if (!std::isfinite(t)) throw InputError("expm: time is not finite");
  Matrix scaled = m * Complex(t, 0.0);
  Matrix out = scaled.exp();
  if (!out.allFinite()) {
    throw NumericalError("expm: result overflowed (||M t|| too large)");
  }
  return out;
}

}  // namespace netdisc
