// Copyright 2026 The h2mor Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef H2MOR_MODEL_HPP
#define H2MOR_MODEL_HPP

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "h2mor/errors.hpp"

namespace h2mor
{

using Index = Eigen::Index;
using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<double>;
using ComplexSparseMatrix = Eigen::SparseMatrix<Complex>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Largest order for which dense O(n^3) kernels (eigendecompositions, Lyapunov
// solves) are attempted.
inline constexpr Index kDenseThreshold = 2000;

inline std::string shape_string(Index rows, Index cols)
{
  return std::to_string(rows) + "x" + std::to_string(cols);
}

//
// Descriptor state-space model
//
//   E x' = A x + B u,   y = C x + D u
//
// with regular E. The pencil matrices are stored sparse; input/output maps and
// the feedthrough are dense. Instances are immutable once constructed.
//
class StateSpaceModel
{
public:
  StateSpaceModel() = default;

  StateSpaceModel(SparseMatrix E, SparseMatrix A, MatrixXd B, MatrixXd C, MatrixXd D)
    : E_(std::move(E)), A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), D_(std::move(D))
  {
    validate();
    E_.makeCompressed();
    A_.makeCompressed();
  }

  Index order() const { return A_.rows(); }
  Index inputs() const { return B_.cols(); }
  Index outputs() const { return C_.rows(); }

  const SparseMatrix &E() const { return E_; }
  const SparseMatrix &A() const { return A_; }
  const MatrixXd &B() const { return B_; }
  const MatrixXd &C() const { return C_; }
  const MatrixXd &D() const { return D_; }

  MatrixXd dense_E() const { return MatrixXd(E_); }
  MatrixXd dense_A() const { return MatrixXd(A_); }

  bool empty() const { return order() == 0; }

private:
  void validate() const
  {
    const Index n = A_.rows();
    require(n > 0, ErrorCode::DimensionMismatch, "model order must be positive");
    require(A_.cols() == n, ErrorCode::DimensionMismatch,
            "A must be square, got " + shape_string(A_.rows(), A_.cols()));
    require(E_.rows() == n && E_.cols() == n, ErrorCode::DimensionMismatch,
            "E is " + shape_string(E_.rows(), E_.cols()) + ", expected " + shape_string(n, n));
    require(B_.rows() == n && B_.cols() > 0, ErrorCode::DimensionMismatch,
            "B is " + shape_string(B_.rows(), B_.cols()) + ", expected " + std::to_string(n) +
                " rows");
    require(C_.cols() == n && C_.rows() > 0, ErrorCode::DimensionMismatch,
            "C is " + shape_string(C_.rows(), C_.cols()) + ", expected " + std::to_string(n) +
                " columns");
    require(D_.rows() == C_.rows() && D_.cols() == B_.cols(), ErrorCode::DimensionMismatch,
            "D is " + shape_string(D_.rows(), D_.cols()) + ", expected " +
                shape_string(C_.rows(), B_.cols()));

    // A row or column of E without a single nonzero value makes E singular
    // for every value of the remaining entries.
    VectorXd row_mass = VectorXd::Zero(n);
    VectorXd col_mass = VectorXd::Zero(n);
    for (Index k = 0; k < E_.outerSize(); ++k)
    {
      for (SparseMatrix::InnerIterator it(E_, k); it; ++it)
      {
        row_mass(it.row()) += std::abs(it.value());
        col_mass(it.col()) += std::abs(it.value());
      }
    }
    for (Index i = 0; i < n; ++i)
    {
      require(row_mass(i) > 0.0, ErrorCode::StructurallySingularE,
              "row " + std::to_string(i) + " of E is zero");
      require(col_mass(i) > 0.0, ErrorCode::StructurallySingularE,
              "column " + std::to_string(i) + " of E is zero");
    }
  }

  SparseMatrix E_;
  SparseMatrix A_;
  MatrixXd B_;
  MatrixXd C_;
  MatrixXd D_;
};

// Builds a validated model. A missing feedthrough defaults to zero.
inline StateSpaceModel make_model(SparseMatrix E, SparseMatrix A, MatrixXd B, MatrixXd C,
                                  std::optional<MatrixXd> D = std::nullopt)
{
  MatrixXd feedthrough = D ? std::move(*D) : MatrixXd::Zero(C.rows(), B.cols());
  return StateSpaceModel(std::move(E), std::move(A), std::move(B), std::move(C),
                         std::move(feedthrough));
}

inline StateSpaceModel make_dense_model(const MatrixXd &E, const MatrixXd &A, MatrixXd B,
                                        MatrixXd C, std::optional<MatrixXd> D = std::nullopt)
{
  return make_model(E.sparseView(), A.sparseView(), std::move(B), std::move(C), std::move(D));
}

inline SparseMatrix sparse_identity(Index n)
{
  SparseMatrix I(n, n);
  I.setIdentity();
  return I;
}

//
// Petrov-Galerkin projection (W^T E V, W^T A V, W^T B, C V, D).
//
// Throws RankDeficientProjection when W^T E V is numerically singular, i.e.
// its smallest singular value is below 1e-12 times its largest.
//
inline StateSpaceModel project(const StateSpaceModel &model, const MatrixXd &V, const MatrixXd &W)
{
  const Index n = model.order();
  require(V.rows() == n && W.rows() == n, ErrorCode::DimensionMismatch,
          "projection bases must have " + std::to_string(n) + " rows");
  require(V.cols() == W.cols() && V.cols() > 0, ErrorCode::DimensionMismatch,
          "projection bases must have the same positive column count, got " +
              std::to_string(V.cols()) + " and " + std::to_string(W.cols()));

  MatrixXd Er = W.transpose() * (model.E() * V);
  MatrixXd Ar = W.transpose() * (model.A() * V);
  MatrixXd Br = W.transpose() * model.B();
  MatrixXd Cr = model.C() * V;

  Eigen::JacobiSVD<MatrixXd> svd(Er);
  const auto &sv = svd.singularValues();
  const double largest = sv.size() ? sv(0) : 0.0;
  require(largest > 0.0 && sv(sv.size() - 1) > 1e-12 * largest,
          ErrorCode::RankDeficientProjection,
          "W^T E V is numerically singular (sigma_min/sigma_max = " +
              std::to_string(largest > 0.0 ? sv(sv.size() - 1) / largest : 0.0) + ")");

  return make_dense_model(Er, Ar, std::move(Br), std::move(Cr), model.D());
}

// Block-diagonal realization of G1 - G2 (feedthroughs subtracted).
inline StateSpaceModel difference_model(const StateSpaceModel &lhs, const StateSpaceModel &rhs)
{
  require(lhs.inputs() == rhs.inputs() && lhs.outputs() == rhs.outputs(),
          ErrorCode::DimensionMismatch, "models have different input/output dimensions");
  const Index n1 = lhs.order();
  const Index n2 = rhs.order();
  const Index n = n1 + n2;

  auto block_diag = [&](const SparseMatrix &X, const SparseMatrix &Y) {
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(X.nonZeros() + Y.nonZeros()));
    for (Index k = 0; k < X.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(X, k); it; ++it)
        entries.emplace_back(it.row(), it.col(), it.value());
    for (Index k = 0; k < Y.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(Y, k); it; ++it)
        entries.emplace_back(n1 + it.row(), n1 + it.col(), it.value());
    SparseMatrix Z(n, n);
    Z.setFromTriplets(entries.begin(), entries.end());
    return Z;
  };

  MatrixXd B(n, lhs.inputs());
  B << lhs.B(), rhs.B();
  MatrixXd C(lhs.outputs(), n);
  C << lhs.C(), -rhs.C();
  return make_model(block_diag(lhs.E(), rhs.E()), block_diag(lhs.A(), rhs.A()), std::move(B),
                    std::move(C), MatrixXd(lhs.D() - rhs.D()));
}

}  // namespace h2mor

#endif  // H2MOR_MODEL_HPP
