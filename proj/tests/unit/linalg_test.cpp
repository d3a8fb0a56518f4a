// Copyright 2026 The h2mor Authors.
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <gtest/gtest.h>

#include "h2mor/interpolation.hpp"
#include "h2mor/linalg.hpp"
#include "support/expect_error.hpp"
#include "support/random_models.hpp"

namespace h2mor
{
namespace
{

MatrixXd random_matrix(Index r, Index c, unsigned seed)
{
  std::mt19937 gen(seed);
  std::normal_distribution<double> normal;
  MatrixXd M(r, c);
  for (double &x : M.reshaped())
  {
    x = normal(gen);
  }
  return M;
}

TEST(GeneralizedEig, Diagonal)
{
  MatrixXd A = MatrixXd::Zero(2, 2);
  A.diagonal() << -1.0, -2.0;
  const GeneralizedEigen eig = generalized_eig(A, MatrixXd::Identity(2, 2));
  ASSERT_EQ(eig.values.size(), 2);
  for (Index i = 0; i < 2; ++i)
  {
    // Each eigenvector is a multiple of a unit vector.
    const Index k = std::abs(eig.values(i) + 1.0) < 1e-14 ? 0 : 1;
    EXPECT_NEAR(std::abs(eig.values(i) - A(k, k)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(eig.right(1 - k, i)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(eig.left(1 - k, i)), 0.0, 1e-14);
  }
  EXPECT_LT((eig.left.adjoint() * eig.right - MatrixXcd::Identity(2, 2)).norm(), 1e-14);
}

TEST(GeneralizedEig, ResidualsAndNormalization)
{
  const MatrixXd A = random_matrix(6, 6, 1);
  const MatrixXd E = MatrixXd::Identity(6, 6) + 0.2 * random_matrix(6, 6, 2);
  const GeneralizedEigen eig = generalized_eig(A, E);
  const MatrixXcd Ac = A.cast<Complex>();
  const MatrixXcd Ec = E.cast<Complex>();
  const MatrixXcd L = eig.values.asDiagonal();
  EXPECT_LT((Ac * eig.right - Ec * eig.right * L).norm() / A.norm(), 1e-10);
  EXPECT_LT((eig.left.adjoint() * Ac - L * eig.left.adjoint() * Ec).norm() / A.norm(), 1e-10);
  EXPECT_LT((eig.left.adjoint() * Ec * eig.right - MatrixXcd::Identity(6, 6)).norm(), 1e-10);
}

TEST(GeneralizedEig, ConjugatePairs)
{
  const MatrixXd A = random_matrix(7, 7, 5);
  const GeneralizedEigen eig = generalized_eig(A, MatrixXd::Identity(7, 7));
  for (Index i = 0; i < 7; ++i)
  {
    if (std::abs(eig.values(i).imag()) < 1e-12)
    {
      continue;
    }
    bool found = false;
    for (Index j = 0; j < 7; ++j)
    {
      if (std::abs(eig.values(j) - std::conj(eig.values(i))) < 1e-10)
      {
        // Eigenvectors of conjugate eigenvalues are conjugate up to scaling.
        const VectorXcd x = eig.right.col(i).conjugate();
        const VectorXcd y = eig.right.col(j);
        EXPECT_LT(direction_sine(x, y), 1e-10);
        found = true;
      }
    }
    EXPECT_TRUE(found);
  }
}

TEST(GeneralizedEig, SingularEr)
{
  MatrixXd E = MatrixXd::Identity(3, 3);
  E(2, 2) = 0.0;
  EXPECT_H2MOR_ERROR(generalized_eig(random_matrix(3, 3, 1), E), ErrorCode::SingularEr);
}

TEST(GeneralizedEig, DefectiveSpectrum)
{
  MatrixXd J(2, 2);
  J << -1.0, 1.0, 0.0, -1.0;
  EXPECT_H2MOR_ERROR(generalized_eig(J, MatrixXd::Identity(2, 2)), ErrorCode::DefectiveSpectrum);
}

TEST(Lyapunov, Scalar)
{
  const MatrixXd P =
      solve_generalized_lyapunov(-MatrixXd::Ones(1, 1), MatrixXd::Ones(1, 1), MatrixXd::Ones(1, 1));
  EXPECT_NEAR(P(0, 0), 0.5, 1e-15);
}

TEST(Lyapunov, DiagonalClosedForm)
{
  MatrixXd A = MatrixXd::Zero(2, 2);
  A.diagonal() << -1.0, -2.0;
  const MatrixXd P = solve_generalized_lyapunov(A, MatrixXd::Identity(2, 2), MatrixXd::Ones(2, 1));
  MatrixXd expected(2, 2);
  expected << 0.5, 1.0 / 3.0, 1.0 / 3.0, 0.25;
  EXPECT_LT((P - expected).norm(), 1e-14);
}

TEST(Lyapunov, RandomResidualAndDefiniteness)
{
  const StateSpaceModel m = testing::random_model(10, 2, 2, 12, 1.0);
  const MatrixXd A = m.dense_A();
  const MatrixXd E = m.dense_E();
  const MatrixXd B = m.B();
  const MatrixXd P = solve_generalized_lyapunov(A, E, B);
  const MatrixXd BB = B * B.transpose();
  const MatrixXd R = A * P * E.transpose() + E * P * A.transpose() + BB;
  EXPECT_LT(R.norm() / BB.norm(), 1e-8);
  EXPECT_LT((P - P.transpose()).norm(), 1e-14 * P.norm());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(P);
  EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10 * P.norm());
}

TEST(Lyapunov, UnstablePencil)
{
  EXPECT_H2MOR_ERROR(solve_generalized_lyapunov(MatrixXd::Ones(1, 1), MatrixXd::Ones(1, 1),
                                                MatrixXd::Ones(1, 1)),
                     ErrorCode::UnstablePencil);
}

TEST(Lyapunov, OrderTooLarge)
{
  const Index n = kDenseThreshold + 1;
  EXPECT_H2MOR_ERROR(solve_generalized_lyapunov(-MatrixXd::Identity(n, n),
                                                MatrixXd::Identity(n, n), MatrixXd::Ones(n, 1)),
                     ErrorCode::OrderTooLarge);
}

TEST(Lyapunov, SingularDescriptor)
{
  MatrixXd E = MatrixXd::Identity(2, 2);
  E(1, 1) = 0.0;
  EXPECT_H2MOR_ERROR(solve_generalized_lyapunov(-MatrixXd::Identity(2, 2), E, MatrixXd::Ones(2, 1)),
                     ErrorCode::SingularDescriptor);
}

TEST(OrthonormalizeReal, RealBasisKeepsSpan)
{
  const MatrixXd V = random_matrix(20, 3, 4);
  InterpolationData data(1, 1);
  for (int i = 0; i < 3; ++i)
  {
    data.append_head(0.5 + i, VectorXcd::Ones(1), VectorXcd::Ones(1));
  }
  const RealBasis rb = orthonormalize_real(V.cast<Complex>(), data);
  ASSERT_EQ(rb.basis.cols(), 3);
  EXPECT_LT((rb.basis.transpose() * rb.basis - MatrixXd::Identity(3, 3)).norm(), 1e-12);
  EXPECT_LT(principal_angle_sines(rb.basis, V).maxCoeff(), 1e-10);
}

TEST(OrthonormalizeReal, ConjugatePairSpansRealAndImaginaryParts)
{
  const MatrixXd re = random_matrix(15, 1, 7);
  const MatrixXd im = random_matrix(15, 1, 8);
  MatrixXcd V(15, 2);
  V.col(0) = re.col(0).cast<Complex>() + Complex(0.0, 1.0) * im.col(0).cast<Complex>();
  V.col(1) = V.col(0).conjugate();
  InterpolationData data(1, 1);
  data.append_head(Complex(1.0, 2.0), VectorXcd::Ones(1), VectorXcd::Ones(1));
  data.append_head(Complex(1.0, -2.0), VectorXcd::Ones(1), VectorXcd::Ones(1));
  const RealBasis rb = orthonormalize_real(V, data);
  ASSERT_EQ(rb.basis.cols(), 2);
  MatrixXd expected(15, 2);
  expected << re, im;
  EXPECT_LT(principal_angle_sines(rb.basis, expected).maxCoeff(), 1e-10);
  // Real span of the pair equals the complex span of V.
  EXPECT_LT(principal_angle_sines(rb.basis, V).maxCoeff(), 1e-8);
}

TEST(OrthonormalizeReal, DropsDependentColumns)
{
  MatrixXd V = random_matrix(10, 3, 2);
  V.col(2) = V.col(0) + V.col(1);
  InterpolationData data(1, 1);
  for (int i = 0; i < 3; ++i)
  {
    data.append_head(1.0 + i, VectorXcd::Ones(1), VectorXcd::Ones(1));
  }
  const RealBasis rb = orthonormalize_real(V.cast<Complex>(), data);
  EXPECT_EQ(rb.basis.cols(), 2);
  ASSERT_EQ(rb.dropped.size(), 1u);
  EXPECT_EQ(rb.dropped[0], 2);
}

TEST(OrthonormalizeReal, NotConjugateClosed)
{
  InterpolationData data(1, 1);
  data.append_head(Complex(1.0, 2.0), VectorXcd::Ones(1), VectorXcd::Ones(1));
  EXPECT_H2MOR_ERROR(orthonormalize_real(MatrixXcd::Ones(4, 1), data),
                     ErrorCode::NotConjugateClosed);
}

TEST(PrincipalAngles, OrthogonalSubspaces)
{
  const MatrixXd I = MatrixXd::Identity(4, 4);
  EXPECT_NEAR(principal_angle_sines(I.leftCols(2), I.rightCols(2)).maxCoeff(), 1.0, 1e-15);
  EXPECT_NEAR(principal_angle_sines(I.leftCols(2), I.leftCols(3)).maxCoeff(), 0.0, 1e-15);
}

}  // namespace
}  // namespace h2mor
