// Copyright 2026 The h2mor Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef H2MOR_LINALG_HPP
#define H2MOR_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "h2mor/model.hpp"

namespace h2mor
{

//
// Eigendecomposition of the pencil (Ar, Er):
//
//   Ar X = Er X diag(values),   Y^H Ar = diag(values) Y^H Er,   Y^H Er X = I.
//
// For a real pencil, complex eigenvalues come in adjacent conjugate pairs with
// exactly conjugate eigenvector columns in both X and Y.
//
struct GeneralizedEigen
{
  VectorXcd values;
  MatrixXcd right;
  MatrixXcd left;
};

inline double condition_number(const MatrixXcd &X)
{
  if (X.size() == 0)
  {
    return 1.0;
  }
  Eigen::JacobiSVD<MatrixXcd> svd(X);
  const auto &sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  return smallest > 0.0 ? sv(0) / smallest : std::numeric_limits<double>::infinity();
}

inline GeneralizedEigen generalized_eig(const MatrixXd &Ar, const MatrixXd &Er,
                                        double max_condition = 1e12)
{
  const Index r = Ar.rows();
  require(Ar.cols() == r && Er.rows() == r && Er.cols() == r, ErrorCode::DimensionMismatch,
          "pencil matrices must be square and of equal size");
  require(r <= kDenseThreshold, ErrorCode::OrderTooLarge,
          "order " + std::to_string(r) + " exceeds the dense threshold");

  GeneralizedEigen out;
  if (r == 0)
  {
    return out;
  }

  Eigen::FullPivLU<MatrixXd> lu(Er);
  lu.setThreshold(1e-14);
  require(Er.norm() > 0.0 && lu.isInvertible(), ErrorCode::SingularEr,
          "descriptor matrix is numerically singular");
  const MatrixXd Er_inv = lu.inverse();

  Eigen::EigenSolver<MatrixXd> es(Er_inv * Ar);
  require(es.info() == Eigen::Success, ErrorCode::DefectiveSpectrum,
          "eigenvalue iteration did not converge");
  out.values = es.eigenvalues();
  out.right = es.eigenvectors();

  const double cond = condition_number(out.right);
  require(cond <= max_condition, ErrorCode::DefectiveSpectrum,
          "eigenvector matrix condition number " + std::to_string(cond) + " exceeds " +
              std::to_string(max_condition));

  // Y^H = X^{-1} Er^{-1} gives the normalization Y^H Er X = I.
  const MatrixXcd Xinv = out.right.partialPivLu().inverse();
  out.left = (Xinv * Er_inv.cast<Complex>()).adjoint();

  // Restore exact conjugate/real structure lost in the inverse.
  for (Index i = 0; i < r; ++i)
  {
    if (out.values(i).imag() == 0.0)
    {
      out.left.col(i) = out.left.col(i).real().cast<Complex>();
    }
    else if (i + 1 < r && out.values(i + 1) == std::conj(out.values(i)))
    {
      out.left.col(i + 1) = out.left.col(i).conjugate();
      ++i;
    }
  }
  return out;
}

//
// Dense generalized Lyapunov equation
//
//   A P E^T + E P A^T + B B^T = 0
//
// reduced to the standard equation for E^{-1} A and solved by the complex
// Bartels-Stewart scheme: with E^{-1} A = U T U^H the transformed unknown
// X = U^H P U satisfies T X + X T^H = -U^H E^{-1} B B^T E^{-T} U, which is
// solved one column at a time from the last one.
//
inline MatrixXd solve_generalized_lyapunov(const MatrixXd &A, const MatrixXd &E, const MatrixXd &B)
{
  const Index n = A.rows();
  require(A.cols() == n && E.rows() == n && E.cols() == n && B.rows() == n,
          ErrorCode::DimensionMismatch, "inconsistent Lyapunov operands");
  require(n <= kDenseThreshold, ErrorCode::OrderTooLarge,
          "order " + std::to_string(n) + " exceeds the dense threshold");
  if (n == 0)
  {
    return MatrixXd(0, 0);
  }

  Eigen::FullPivLU<MatrixXd> lu(E);
  lu.setThreshold(1e-14);
  require(E.norm() > 0.0 && lu.isInvertible(), ErrorCode::SingularDescriptor,
          "E is numerically singular");
  const MatrixXd At = lu.solve(A);
  const MatrixXd Bt = lu.solve(B);

  Eigen::ComplexSchur<MatrixXcd> schur(At.cast<Complex>());
  require(schur.info() == Eigen::Success, ErrorCode::UnstablePencil,
          "Schur decomposition did not converge");
  const MatrixXcd &T = schur.matrixT();
  const MatrixXcd &U = schur.matrixU();
  for (Index i = 0; i < n; ++i)
  {
    require(T(i, i).real() < 0.0, ErrorCode::UnstablePencil,
            "pencil has an eigenvalue with nonnegative real part (" +
                std::to_string(T(i, i).real()) + ")");
  }

  const MatrixXcd UB = U.adjoint() * Bt.cast<Complex>();
  const MatrixXcd F = -UB * UB.adjoint();

  MatrixXcd X = MatrixXcd::Zero(n, n);
  VectorXcd rhs(n);
  for (Index j = n - 1; j >= 0; --j)
  {
    rhs = F.col(j);
    const Index tail = n - 1 - j;
    if (tail > 0)
    {
      rhs.noalias() -= X.rightCols(tail) * T.row(j).tail(tail).adjoint();
    }
    const Complex shift = std::conj(T(j, j));
    for (Index i = n - 1; i >= 0; --i)
    {
      Complex acc = rhs(i);
      for (Index k = i + 1; k < n; ++k)
      {
        acc -= T(i, k) * X(k, j);
      }
      X(i, j) = acc / (T(i, i) + shift);
    }
  }

  MatrixXd P = (U * X * U.adjoint()).real();
  return 0.5 * (P + P.transpose());
}

//
// Orthonormalization by modified Gram-Schmidt with one reorthogonalization
// pass. Columns whose remaining norm falls below drop_tol (relative to the
// column's own norm) are dropped; their indices are reported.
//
template <typename Scalar>
struct OrthonormalColumns
{
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> basis;
  std::vector<Index> kept;
  std::vector<Index> dropped;
};

template <typename Scalar>
void orthonormal_append(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> &Q, Index &used,
                        Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v, double drop_tol, bool &kept)
{
  const double norm0 = v.norm();
  kept = false;
  if (!(norm0 > 0.0) || !std::isfinite(norm0))
  {
    return;
  }
  v /= norm0;
  for (int pass = 0; pass < 2; ++pass)
  {
    for (Index k = 0; k < used; ++k)
    {
      v -= Q.col(k) * Q.col(k).dot(v);
    }
  }
  const double norm1 = v.norm();
  if (norm1 <= drop_tol)
  {
    return;
  }
  if (Q.cols() <= used)
  {
    Q.conservativeResize(Eigen::NoChange, std::max<Index>(2 * Q.cols(), used + 1));
  }
  Q.col(used++) = v / norm1;
  kept = true;
}

template <typename Derived>
OrthonormalColumns<typename Derived::Scalar> orthonormalize_columns(
    const Eigen::MatrixBase<Derived> &M, double drop_tol = 1e-12)
{
  using Scalar = typename Derived::Scalar;
  OrthonormalColumns<Scalar> out;
  out.basis.resize(M.rows(), M.cols());
  Index used = 0;
  for (Index j = 0; j < M.cols(); ++j)
  {
    bool kept = false;
    orthonormal_append<Scalar>(out.basis, used, M.col(j), drop_tol, kept);
    (kept ? out.kept : out.dropped).push_back(j);
  }
  out.basis.conservativeResize(Eigen::NoChange, used);
  return out;
}

// Sines of the principal angles between span(X) and span(Y), largest first.
template <typename DerivedX, typename DerivedY>
VectorXd principal_angle_sines(const Eigen::MatrixBase<DerivedX> &X,
                               const Eigen::MatrixBase<DerivedY> &Y)
{
  using Mat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  const Mat Qx = orthonormalize_columns(Mat(X.template cast<Complex>()), 1e-14).basis;
  const Mat Qy = orthonormalize_columns(Mat(Y.template cast<Complex>()), 1e-14).basis;
  // Residual of projecting the smaller subspace onto the larger one.
  const bool x_small = Qx.cols() <= Qy.cols();
  const Mat &small = x_small ? Qx : Qy;
  const Mat &large = x_small ? Qy : Qx;
  const Mat residual = small - large * (large.adjoint() * small);
  Eigen::JacobiSVD<Mat> svd(residual);
  VectorXd s = svd.singularValues();
  return s;
}

}  // namespace h2mor

#endif  // H2MOR_LINALG_HPP
