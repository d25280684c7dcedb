#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hqc/errors.hpp"
#include "hqc/hilbert.hpp"

using namespace hqc;

namespace {

const CompositeSpace k222{2, 2, 2};

Matrix random_hermitian(Eigen::Index n, std::mt19937& rng, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(d(rng), d(rng));
  return 0.5 * (m + m.adjoint());
}

}  // namespace

TEST(CompositeSpace, OrderingIsBigEndian) {
  EXPECT_EQ(k222.total_dim(), 8u);
  EXPECT_EQ(k222.index_of({1, 0, 0}), 4u);
  EXPECT_EQ(k222.index_of({0, 1, 0}), 2u);
  EXPECT_EQ(k222.index_of({0, 0, 1}), 1u);
  const CompositeSpace mixed{3, 2, 4};
  EXPECT_EQ(mixed.total_dim(), 24u);
  for (std::size_t i = 0; i < mixed.total_dim(); ++i)
    EXPECT_EQ(mixed.index_of(mixed.levels_of(i)), i);
}

TEST(CompositeSpace, RejectsBadLevels) {
  EXPECT_THROW(k222.index_of({2, 0, 0}), ParameterError);
  EXPECT_THROW(k222.index_of({0, 0}), ParameterError);
}

TEST(Embed, IdentityStaysIdentity) {
  const Operator id = embed(local_identity(2), k222, 1);
  EXPECT_LT(max_abs(id.matrix() - Matrix::Identity(8, 8)), 1e-15);
}

TEST(Embed, SigmaZOnExcitedTransmon) {
  const Vector ket = basis_ket(k222, {0, 1, 0});
  const Vector out = embed(sigma_z(), k222, 1).apply(ket);
  EXPECT_LT((out - ket).norm(), 1e-15);
  const Vector g = basis_ket(k222, {0, 0, 0});
  EXPECT_LT((embed(sigma_z(), k222, 1).apply(g) + g).norm(), 1e-15);
}

TEST(Embed, AnnihilationRemovesPhoton) {
  const Vector out = embed(annihilation(1), k222, 0).apply(basis_ket(k222, {1, 0, 0}));
  EXPECT_LT((out - basis_ket(k222, {0, 0, 0})).norm(), 1e-15);
}

TEST(Embed, RaisingConvention) {
  const Vector out = embed(sigma_plus(), k222, 1).apply(basis_ket(k222, {0, 0, 0}));
  EXPECT_LT((out - basis_ket(k222, {0, 1, 0})).norm(), 1e-15);
}

TEST(Embed, DimensionMismatchThrows) {
  EXPECT_THROW(embed(annihilation(2), k222, 0), ParameterError);
  EXPECT_THROW(embed(sigma_z(), k222, 3), ParameterError);
}

TEST(Embed, PreservesSpectrumWithMultiplicity) {
  std::mt19937 rng(7);
  const CompositeSpace space{2, 3, 2};
  const Operator local(CompositeSpace{3}, random_hermitian(3, rng));
  Eigen::SelfAdjointEigenSolver<Matrix> small(local.matrix());
  Eigen::SelfAdjointEigenSolver<Matrix> big(embed(local, space, 1).matrix());
  for (Eigen::Index k = 0; k < 12; ++k)
    EXPECT_NEAR(big.eigenvalues()(k), small.eigenvalues()(k / 4), 1e-12);
}

TEST(Embed, DistinctPositionsCommute) {
  const Operator a = embed(annihilation(1), k222, 0);
  const Operator b = embed(sigma_x(), k222, 1);
  const Operator c = embed(creation(1), k222, 2);
  EXPECT_LT(commutator_norm(a, b), 1e-15);
  EXPECT_LT(commutator_norm(a, c), 1e-15);
  EXPECT_LT(commutator_norm(b, c), 1e-15);
}

TEST(Algebra, PauliCommutators) {
  EXPECT_LT(commutator_norm(sigma_z(), sigma_z()), 1e-15);
  EXPECT_LT(max_abs(commutator(sigma_plus(), sigma_minus()).matrix() - sigma_z().matrix()), 1e-15);
  const Operator xy = commutator(sigma_x(), sigma_y());
  EXPECT_LT(max_abs(xy.matrix() - 2.0 * kI * sigma_z().matrix()), 1e-15);
}

TEST(Algebra, TraceOfProjector) {
  EXPECT_NEAR(std::abs(trace(projector(k222, basis_ket(k222, {1, 0, 0}))) - 1.0), 0.0, 1e-15);
}

TEST(Algebra, ProductRequiresSameSpace) {
  EXPECT_THROW(sigma_z() * embed(sigma_z(), k222, 1), ParameterError);
}

TEST(Algebra, BosonCommutatorBelowCutoff) {
  const Operator a = annihilation(3);
  const Matrix c = commutator(a, a.dagger()).matrix();
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(c(k, k).real(), 1.0, 1e-14);
  EXPECT_NEAR(c(3, 3).real(), -3.0, 1e-14);
}

TEST(HermExpm, ZeroGivesIdentity) {
  const Operator u = herm_expm(Operator::zero(k222), 1.7);
  EXPECT_LT(max_abs(u.matrix() - Matrix::Identity(8, 8)), 1e-15);
}

TEST(HermExpm, PauliRotationClosedForm) {
  const double w = 2.0 * std::numbers::pi * 3e6;
  const Operator u = herm_expm(w * sigma_x(), std::numbers::pi / (2.0 * w));
  EXPECT_LT(max_abs(u.matrix() + kI * sigma_x().matrix()), 1e-10);
  // exp(-i w t sy) = cos(wt) I - i sin(wt) sy at a generic time
  const double t = 0.37 / w;
  const Matrix expect = std::cos(w * t) * Matrix::Identity(2, 2) - kI * std::sin(w * t) * sigma_y().matrix();
  EXPECT_LT(max_abs(herm_expm(w * sigma_y(), t).matrix() - expect), 1e-12);
}

TEST(HermExpm, InverseAndUnitarity) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Operator h(k222, random_hermitian(8, rng, 50.0));
    const double t = 1.0 + trial;  // ||H|| t up to ~10^3
    const Matrix u = herm_expm(h, t).matrix();
    EXPECT_LT(max_abs(u.adjoint() * u - Matrix::Identity(8, 8)), 1e-10);
    EXPECT_LT(max_abs(u * herm_expm(h, -t).matrix() - Matrix::Identity(8, 8)), 1e-10);
  }
}

TEST(HermExpm, RejectsNonHermitian) {
  EXPECT_THROW(herm_expm(sigma_plus(), 1.0), ValidationError);
}

TEST(DensityMatrix, ValidatesInvariants) {
  EXPECT_NO_THROW(DensityMatrix::pure(k222, basis_ket(k222, {0, 1, 0})));
  Matrix half = 0.5 * Matrix::Identity(8, 8);
  EXPECT_THROW(DensityMatrix(k222, half), ValidationError);
  Matrix neg = Matrix::Zero(8, 8);
  neg(0, 0) = 1.1;
  neg(1, 1) = -0.1;
  EXPECT_THROW(DensityMatrix(k222, neg), ValidationError);
  Matrix skew = Matrix::Zero(8, 8);
  skew(0, 0) = 1.0;
  skew(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix(k222, skew), ValidationError);
}

TEST(Restrict, MatrixElementsInGivenBasis) {
  const Operator sx = embed(sigma_x(), k222, 1);
  const std::vector<Vector> basis{basis_ket(k222, {1, 0, 0}), basis_ket(k222, {1, 1, 0})};
  const Matrix r = restrict_to(sx, basis);
  EXPECT_LT(max_abs(r - sigma_x().matrix()), 1e-15);
}

TEST(PhaseAlignedDistance, RemovesGlobalPhase) {
  const Matrix u = sigma_x().matrix();
  EXPECT_LT(phase_aligned_distance(std::polar(1.0, 0.83) * u, u), 1e-15);
  EXPECT_GT(phase_aligned_distance(sigma_z().matrix(), u), 0.5);
}
