#pragma once

// Dense complex linear-algebra kernels and tolerance-aware subspace
// arithmetic. Everything is computed over C, even for real inputs.

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace netdisc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

namespace defaults {
/// Relative singular-value threshold used for rank and kernel decisions.
inline constexpr double kRankTol = 1e-10;
/// Relative eigenvalue clustering tolerance, scaled by max(1, ||M||_2).
inline constexpr double kClusterTol = 1e-8;
/// Largest principal angle (radians) still treated as "equal"/"contained".
inline constexpr double kAngleTol = 1e-8;
/// Eigenvector residual bound relative to max(1, ||M||_2).
inline constexpr double kResidTol = 1e-8;
}  // namespace defaults

/// Promote a real matrix to the complex working type.
Matrix to_complex(const RealMatrix& m);

/// Spectral norm (largest singular value).
double norm2(const Matrix& m);

/// Kronecker product a (x) b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Vector Kronecker product a (x) b.
Vector kron(const Vector& a, const Vector& b);

/// Numerical rank at singular-value threshold rel_tol * sigma_max.
int rank(const Matrix& m, double rel_tol = defaults::kRankTol);

struct Eigenpair {
  Complex value;
  // Orthonormal basis of the computed eigenspace. May hold fewer columns than
  // algebraic_multiplicity for defective eigenvalues.
  std::vector<Vector> vectors;
  int algebraic_multiplicity = 0;
};

/// Full spectrum of a square matrix with eigenvalues grouped into clusters.
/// Clusters are sorted lexicographically by (real, imag).
struct Spectrum {
  std::vector<Eigenpair> eigenpairs;
  double cluster_tol = 0.0;

  int dimension() const;
  std::vector<Complex> values() const;
  /// Multiplicity of the cluster within tol of `value` (0 if none).
  int multiplicity_of(Complex value, double tol) const;
  /// Index of the cluster closest to `value` within tol, or -1.
  int find(Complex value, double tol) const;
};

/// Eigendecomposition with clustered multiplicities.
///
/// cluster_tol_rel <= 0 selects the default (1e-8). The absolute clustering
/// tolerance is cluster_tol_rel * max(1, ||M||_2). Hermitian inputs take the
/// self-adjoint path and get exactly real eigenvalues. Throws InputError for
/// non-square or non-finite input and NumericalError on non-convergence.
Spectrum eig(const Matrix& m, double cluster_tol_rel = defaults::kClusterTol);

/// Subspace of C^ambient_dim held as an orthonormal basis.
class Subspace {
 public:
  Subspace() = default;

  /// The zero subspace.
  static Subspace zero(int ambient_dim, double tol = defaults::kRankTol);
  /// The whole space.
  static Subspace full(int ambient_dim, double tol = defaults::kRankTol);
  /// Orthonormalized column span of `columns` (rank at rel. threshold tol).
  static Subspace span(const Matrix& columns, double tol = defaults::kRankTol);
  static Subspace span(int ambient_dim, const std::vector<Vector>& vectors,
                       double tol = defaults::kRankTol);
  /// Wraps a basis that is already orthonormal (checked).
  static Subspace from_orthonormal(Matrix basis, double tol = defaults::kRankTol);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  double tol() const { return tol_; }
  const Matrix& basis() const { return basis_; }

  /// Orthogonal projector onto the subspace.
  Matrix projector() const;
  /// Orthonormal basis of the orthogonal complement.
  Subspace complement() const;

 private:
  Subspace(int ambient_dim, Matrix basis, double tol)
      : ambient_dim_(ambient_dim), basis_(std::move(basis)), tol_(tol) {}

  int ambient_dim_ = 0;
  Matrix basis_;
  double tol_ = defaults::kRankTol;
};

/// Null space of m at singular-value threshold tol * sigma_max.
Subspace kernel(const Matrix& m, double tol = defaults::kRankTol);

/// Null space of m keeping singular values <= abs_tol. Use when the natural
/// scale is external to m (m may legitimately be tiny or zero).
Subspace kernel_abs(const Matrix& m, double abs_tol);

Subspace subspace_intersect(const Subspace& u, const Subspace& v);
Subspace subspace_sum(const Subspace& u, const Subspace& v);

/// Largest principal angle between v and its projection onto u.
/// Zero when v is the zero subspace.
double containment_angle(const Subspace& u, const Subspace& v);

/// Largest principal angle between u and v; pi/2 when dimensions differ.
double max_principal_angle(const Subspace& u, const Subspace& v);

bool subspace_contains(const Subspace& u, const Subspace& v,
                       double angle_tol = defaults::kAngleTol);
bool subspace_contains(const Subspace& u, const Vector& x,
                       double angle_tol = defaults::kAngleTol);
bool subspace_equal(const Subspace& u, const Subspace& v,
                    double angle_tol = defaults::kAngleTol);

/// Real orthonormal basis of u when u is closed under conjugation (always the
/// case for subspaces derived from real matrices); nullopt otherwise.
std::optional<RealMatrix> real_basis(const Subspace& u);

/// Matrix exponential e^{m t}. Throws NumericalError if the result overflows.
Matrix expm(const Matrix& m, double t);

}  // namespace netdisc
