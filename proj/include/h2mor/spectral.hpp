// Copyright 2026 The h2mor Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef H2MOR_SPECTRAL_HPP
#define H2MOR_SPECTRAL_HPP

#include <vector>

#include "h2mor/linalg.hpp"
#include "h2mor/model.hpp"

namespace h2mor
{

//
// Partial-fraction form of a strictly proper transfer function
//
//   G(s) - D = sum_i c_i b_i^T / (s - lambda_i)
//
// with input_residues.row(i) = b_i^T = y_i^H B and output_residues.col(i) =
// c_i = C x_i, using the Y^H E X = I eigenvector normalization.
//
struct PoleResidueForm
{
  VectorXcd poles;
  MatrixXcd input_residues;   // r x m
  MatrixXcd output_residues;  // p x r

  Index size() const { return poles.size(); }

  VectorXcd input_direction(Index i) const { return input_residues.row(i).transpose(); }
  VectorXcd output_direction(Index i) const { return output_residues.col(i); }

  MatrixXcd evaluate(Complex s) const
  {
    MatrixXcd G = MatrixXcd::Zero(output_residues.rows(), input_residues.cols());
    for (Index i = 0; i < size(); ++i)
    {
      G += output_residues.col(i) * input_residues.row(i) / (s - poles(i));
    }
    return G;
  }
};

inline void require_dense_order(const StateSpaceModel &model)
{
  require(model.order() <= kDenseThreshold, ErrorCode::OrderTooLarge,
          "model order " + std::to_string(model.order()) + " exceeds the dense threshold " +
              std::to_string(kDenseThreshold));
}

inline PoleResidueForm pole_residue(const StateSpaceModel &model)
{
  require_dense_order(model);
  const GeneralizedEigen eig = generalized_eig(model.dense_A(), model.dense_E());
  PoleResidueForm out;
  out.poles = eig.values;
  out.input_residues = eig.left.adjoint() * model.B().cast<Complex>();
  out.output_residues = model.C().cast<Complex>() * eig.right;
  return out;
}

//
// Stable part of a small model: the modes with Re(lambda) >= 0 are removed by
// projecting onto the right/left invariant subspaces of the stable modes.
// Returns the model unchanged when it has no unstable modes; an all-unstable
// model yields an error since no realization of order zero exists.
//
struct StablePart
{
  StateSpaceModel model;
  Index removed = 0;
};

inline StablePart stable_part(const StateSpaceModel &model)
{
  require_dense_order(model);
  const GeneralizedEigen eig = generalized_eig(model.dense_A(), model.dense_E());
  const Index n = model.order();

  std::vector<Index> stable;
  for (Index i = 0; i < n; ++i)
  {
    if (eig.values(i).real() < 0.0)
    {
      stable.push_back(i);
    }
  }
  StablePart out;
  out.removed = n - static_cast<Index>(stable.size());
  if (out.removed == 0)
  {
    out.model = model;
    return out;
  }
  require(!stable.empty(), ErrorCode::UnstablePencil, "model has no stable modes");

  // Conjugate pairs are both stable or both unstable, so splitting each
  // complex column into real and imaginary parts yields real bases of the
  // stable right/left invariant subspaces.
  MatrixXd right(n, 2 * stable.size());
  MatrixXd left(n, 2 * stable.size());
  Index cols = 0;
  for (Index i : stable)
  {
    right.col(cols) = eig.right.col(i).real();
    left.col(cols) = eig.left.col(i).real();
    ++cols;
    if (eig.values(i).imag() != 0.0)
    {
      right.col(cols) = eig.right.col(i).imag();
      left.col(cols) = eig.left.col(i).imag();
      ++cols;
    }
  }
  right.conservativeResize(Eigen::NoChange, cols);
  left.conservativeResize(Eigen::NoChange, cols);

  const MatrixXd V = orthonormalize_columns(right, 1e-12).basis;
  const MatrixXd W = orthonormalize_columns(left, 1e-12).basis;
  require(V.cols() == static_cast<Index>(stable.size()) && W.cols() == V.cols(),
          ErrorCode::DefectiveSpectrum, "stable invariant subspace is rank deficient");
  out.model = project(model, V, W);
  return out;
}

}  // namespace h2mor

#endif  // H2MOR_SPECTRAL_HPP
