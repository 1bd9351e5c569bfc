#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "netdisc/errors.hpp"
#include "netdisc/numkernel.hpp"
#include "netdisc/sysmodel.hpp"
#include "test_support.hpp"

using namespace netdisc;
using namespace netdisc::testing;

namespace {

std::vector<double> real_values(const Spectrum& s) {
  std::vector<double> out;
  for (const auto& p : s.eigenpairs) {
    for (int k = 0; k < p.algebraic_multiplicity; ++k) out.push_back(p.value.real());
  }
  return out;
}

void expect_spectrum_invariants(const Matrix& m, const Spectrum& s) {
  EXPECT_EQ(s.dimension(), m.rows());
  const double bound = defaults::kResidTol * std::max(1.0, norm2(m));
  for (std::size_t i = 0; i < s.eigenpairs.size(); ++i) {
    const auto& p = s.eigenpairs[i];
    EXPECT_GE(p.vectors.size(), 1u);
    EXPECT_LE(static_cast<int>(p.vectors.size()), p.algebraic_multiplicity);
    for (const auto& v : p.vectors) {
      EXPECT_NEAR(v.norm(), 1.0, 1e-12);
      EXPECT_LE((m * v - p.value * v).norm(), bound);
    }
    if (i > 0) {
      const auto a = s.eigenpairs[i - 1].value;
      const auto b = p.value;
      EXPECT_TRUE(a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()));
    }
  }
}

}  // namespace

// ---- eig ----

TEST(Eig, PaperLaplacianSpectrum) {
  const auto s = eig(to_complex(paper_l_matrix()));
  const auto v = real_values(s);
  ASSERT_EQ(v.size(), 4u);
  const double expected[] = {0, 1, 3, 4};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(v[i], expected[i], 1e-12);
  for (const auto& p : s.eigenpairs) EXPECT_EQ(p.algebraic_multiplicity, 1);
}

TEST(Eig, IdentityHasOneClusterOfMultiplicityThree) {
  const auto s = eig(Matrix::Identity(3, 3));
  ASSERT_EQ(s.eigenpairs.size(), 1u);
  EXPECT_EQ(s.eigenpairs[0].value, Complex(1.0, 0.0));
  EXPECT_EQ(s.eigenpairs[0].algebraic_multiplicity, 3);
  EXPECT_EQ(s.eigenpairs[0].vectors.size(), 3u);
}

TEST(Eig, PathLaplacianMatchesClosedFormAndCharacteristicPolynomial) {
  // Path graph on 4 nodes: 2 - 2 cos(k pi / 4), k = 0..3.
  std::vector<double> closed;
  for (int k = 0; k < 4; ++k) closed.push_back(2.0 - 2.0 * std::cos(k * std::numbers::pi / 4.0));
  const RealMatrix lbar = paper_lbar_matrix();
  for (double lambda : closed) {
    // Independent check: det(Lbar - lambda I) vanishes.
    const double det = (lbar - lambda * RealMatrix::Identity(4, 4)).determinant();
    EXPECT_NEAR(det, 0.0, 1e-12);
  }
  EXPECT_NEAR(closed[1], 2.0 - std::numbers::sqrt2, 1e-15);
  EXPECT_NEAR(closed[3], 2.0 + std::numbers::sqrt2, 1e-15);

  const auto v = real_values(eig(to_complex(lbar)));
  ASSERT_EQ(v.size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(v[i], closed[i], 1e-12);
}

TEST(Eig, ExactOnDiagonalMatrices) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd d(6);
    for (int i = 0; i < 6; ++i) d(i) = u(rng);
    const Matrix m = to_complex(RealMatrix(d.asDiagonal()));
    const auto s = eig(m);
    std::vector<double> sorted(d.data(), d.data() + d.size());
    std::sort(sorted.begin(), sorted.end());
    const auto v = real_values(s);
    ASSERT_EQ(v.size(), sorted.size());
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(v[i], sorted[i], 1e-14);
    expect_spectrum_invariants(m, s);
  }
}

TEST(Eig, ExactOnSymmetricTridiagonal) {
  // tridiag(-1, 2, -1) of size k: 2 - 2 cos(j pi / (k + 1)), j = 1..k.
  for (int k : {2, 5, 9, 16}) {
    RealMatrix t = RealMatrix::Zero(k, k);
    for (int i = 0; i < k; ++i) {
      t(i, i) = 2.0;
      if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = -1.0;
    }
    const auto s = eig(to_complex(t));
    const auto v = real_values(s);
    ASSERT_EQ(static_cast<int>(v.size()), k);
    for (int j = 1; j <= k; ++j) {
      EXPECT_NEAR(v[static_cast<std::size_t>(j - 1)], 2.0 - 2.0 * std::cos(j * std::numbers::pi / (k + 1)),
                  1e-13);
    }
  }
}

TEST(Eig, ComplexSpectrumOfRotation) {
  RealMatrix r(2, 2);
  r << 0, -1, 1, 0;
  const auto s = eig(to_complex(r));
  ASSERT_EQ(s.eigenpairs.size(), 2u);
  EXPECT_NEAR(std::abs(s.eigenpairs[0].value - Complex(0, -1)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(s.eigenpairs[1].value - Complex(0, 1)), 0.0, 1e-14);
  expect_spectrum_invariants(to_complex(r), s);
}

TEST(Eig, DefectiveMatrixReportsFewerVectors) {
  RealMatrix j(2, 2);
  j << 3, 1, 0, 3;
  const auto s = eig(to_complex(j));
  ASSERT_EQ(s.eigenpairs.size(), 1u);
  EXPECT_EQ(s.eigenpairs[0].algebraic_multiplicity, 2);
  EXPECT_EQ(s.eigenpairs[0].vectors.size(), 1u);
}

TEST(Eig, RandomMatricesSatisfyInvariants) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 12;
    const Matrix m = to_complex(random_matrix(rng, n, n));
    expect_spectrum_invariants(m, eig(m));
  }
}

TEST(Eig, RejectsNonSquareAndNonFinite) {
  EXPECT_THROW(eig(Matrix::Zero(2, 3)), InputError);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(eig(bad), InputError);
}

// ---- kernel ----

TEST(Kernel, ZeroMatrixIsFullSpace) { EXPECT_EQ(kernel(Matrix::Zero(3, 3)).dim(), 3); }

TEST(Kernel, PaperBKernelIsZeroOneOne) {
  const Subspace k = kernel(to_complex(paper_b()));
  ASSERT_EQ(k.dim(), 1);
  EXPECT_TRUE(subspace_contains(k, real_vector({0, 1, 1})));
  EXPECT_LE((to_complex(paper_b()) * k.basis()).norm(), 1e-14);
}

TEST(Kernel, InvertibleHasTrivialKernel) {
  RealMatrix m(2, 2);
  m << 1, 2, 3, 4;
  EXPECT_EQ(kernel(to_complex(m)).dim(), 0);
}

TEST(Kernel, WideAndTallInputs) {
  RealMatrix wide(1, 3);
  wide << 1, 1, 1;
  EXPECT_EQ(kernel(to_complex(wide)).dim(), 2);
  RealMatrix tall(6, 2);
  tall.col(0).setOnes();
  tall.col(1).setOnes();
  const Subspace k = kernel(to_complex(tall));
  ASSERT_EQ(k.dim(), 1);
  EXPECT_TRUE(subspace_contains(k, real_vector({1, -1})));
}

// ---- intersect / sum / contains ----

TEST(Subspaces, IntersectWithSelf) {
  std::mt19937_64 rng(3);
  const Subspace u = Subspace::span(to_complex(random_matrix(rng, 6, 3)));
  EXPECT_TRUE(subspace_equal(subspace_intersect(u, u), u));
}

TEST(Subspaces, CoordinatePlanesMeetInAxis) {
  const Matrix e = Matrix::Identity(3, 3);
  const Subspace u = Subspace::span(e.leftCols(2));
  const Subspace v = Subspace::span(e.rightCols(2));
  const Subspace w = subspace_intersect(u, v);
  ASSERT_EQ(w.dim(), 1);
  EXPECT_TRUE(subspace_contains(w, Vector(e.col(1))));
}

TEST(Subspaces, SyncMeetsInvariantSpanInOneDirection) {
  const Subspace sync = sync_manifold(4, 3);
  const Subspace inv = paper_invariant_span();
  // Rank oracle on the explicit bases: rank([S M]) = 6 means dim(S ∩ M) = 3 + 4 - 6.
  Matrix both(12, 7);
  both << sync.basis(), inv.basis();
  Eigen::JacobiSVD<Matrix> svd(both);
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) r += svd.singularValues()(i) > 1e-10;
  ASSERT_EQ(r, 6);

  const Subspace meet = subspace_intersect(sync, inv);
  ASSERT_EQ(meet.dim(), 3 + 4 - r);
  EXPECT_TRUE(subspace_contains(meet, kron(Vector(Vector::Ones(4)), real_vector({0, 1, 1}))));
}

TEST(Subspaces, SumExamples) {
  std::mt19937_64 rng(5);
  const Subspace u = Subspace::span(to_complex(random_matrix(rng, 5, 2)));
  EXPECT_TRUE(subspace_equal(subspace_sum(u, Subspace::zero(5)), u));

  EXPECT_EQ(subspace_sum(sync_manifold(4, 3), paper_invariant_span()).dim(), 6);

  const Matrix e = Matrix::Identity(5, 5);
  const Subspace a = Subspace::span(e.leftCols(2));
  const Subspace b = Subspace::span(e.rightCols(3));
  EXPECT_EQ(subspace_sum(a, b).dim(), 5);
}

TEST(Subspaces, ContainsExamples) {
  std::mt19937_64 rng(9);
  const Subspace u = Subspace::span(to_complex(random_matrix(rng, 6, 2)));
  EXPECT_TRUE(subspace_contains(u, Vector(Vector::Zero(6))));
  for (Eigen::Index c = 0; c < u.dim(); ++c) EXPECT_TRUE(subspace_contains(u, Vector(u.basis().col(c))));
  EXPECT_FALSE(subspace_contains(u, Vector(u.complement().basis().col(0))));
}

TEST(Subspaces, DimensionIdentityOnRandomPairs) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 12;
    std::uniform_int_distribution<int> dims(0, n);
    const int du = dims(rng);
    const int dv = dims(rng);
    std::uniform_int_distribution<int> shared_dist(0, std::min(du, dv));
    const int shared = shared_dist(rng);
    const RealMatrix common = random_matrix(rng, n, shared);
    RealMatrix ub(n, du);
    ub << common, random_matrix(rng, n, du - shared);
    RealMatrix vb(n, dv);
    vb << common, random_matrix(rng, n, dv - shared);
    const Subspace u = Subspace::span(to_complex(ub));
    const Subspace v = Subspace::span(to_complex(vb));
    EXPECT_EQ(subspace_sum(u, v).dim() + subspace_intersect(u, v).dim(), u.dim() + v.dim());
  }
}

TEST(Subspaces, AmbientMismatchThrows) {
  EXPECT_THROW(subspace_intersect(Subspace::full(3), Subspace::full(4)), InputError);
  EXPECT_THROW(subspace_sum(Subspace::full(3), Subspace::full(4)), InputError);
  EXPECT_THROW(subspace_contains(Subspace::full(3), Subspace::full(4)), InputError);
}

TEST(Subspaces, RealBasisOfComplexRepresentation) {
  // span{e1 + i e2, e1 - i e2} = span{e1, e2}, given through complex vectors.
  Matrix cols(3, 2);
  cols << 1, 1, Complex(0, 1), Complex(0, -1), 0, 0;
  const Subspace u = Subspace::span(cols);
  const auto rb = real_basis(u);
  ASSERT_TRUE(rb.has_value());
  EXPECT_TRUE(subspace_equal(Subspace::span(to_complex(*rb)), u));
  // span{e1 + i e2} alone is not conjugation-closed.
  EXPECT_FALSE(real_basis(Subspace::span(cols.leftCols(1))).has_value());
}

// ---- expm ----

TEST(Expm, ZeroGivesIdentity) {
  EXPECT_LE((expm(Matrix::Zero(4, 4), 2.5) - Matrix::Identity(4, 4)).norm(), 1e-15);
}

TEST(Expm, DiagonalCase) {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.3;
  d(1, 1) = -2.0;
  const Matrix e = expm(d, 1.0);
  EXPECT_NEAR(std::abs(e(0, 0) - std::exp(0.3)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(e(1, 1) - std::exp(-2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(e(0, 1)), 0.0, 1e-15);
}

TEST(Expm, PaperPhiOnSharedEigenvector) {
  const NetworkSystem sys(paper_dynamics(), Laplacian(paper_l_matrix()));
  const Vector x = kron(Vector(Vector::Ones(4)), real_vector({0, 1, 1}));
  const Vector y = expm(sys.phi(), 0.5) * x;
  EXPECT_LE((y - std::exp(0.5) * x).norm(), 1e-12 * x.norm() * std::exp(0.5));
}

TEST(Expm, SemigroupProperty) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> time(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 8;
    Matrix m = to_complex(random_matrix(rng, n, n));
    m *= 10.0 * time(rng) / std::max(1e-12, norm2(m));  // ||M|| <= 10
    const double s = time(rng);
    const double t = time(rng);
    const Matrix lhs = expm(m, s + t);
    const Matrix rhs = expm(m, s) * expm(m, t);
    EXPECT_LE((lhs - rhs).norm(), 1e-9 * lhs.norm());
  }
}

TEST(Expm, OverflowIsReported) {
  Matrix m = Matrix::Identity(2, 2) * 1000.0;
  EXPECT_THROW(expm(m, 1.0), NumericalError);
}
