// Copyright 2026 The h2mor Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef H2MOR_INTERPOLATION_HPP
#define H2MOR_INTERPOLATION_HPP

#include <algorithm>
#include <map>
#include <vector>

#include "h2mor/interpolation_data.hpp"
#include "h2mor/linalg.hpp"
#include "h2mor/model.hpp"
#include "h2mor/shifted_solver.hpp"

namespace h2mor
{

enum class BasisSide
{
  input,   // V: columns of (A - sigma E)^{-1} B r
  output,  // W: columns of (A - sigma E)^{-T} C^T l
};

namespace detail
{

// Perturbation applied once when a shift hits the spectrum.
inline Complex perturbed_shift(Complex sigma) { return (1.0 + 1e-8) * sigma + 1e-8; }

// Shifted solve with one perturbed retry; `sigma` is updated to the shift
// actually used.
inline MatrixXcd solve_with_retry(ShiftedSolver &solver, Complex &sigma, const MatrixXcd &rhs,
                                  SolveMode mode)
{
  try
  {
    return solver.solve(sigma, rhs, mode);
  }
  catch (const Error &e)
  {
    if (e.code() != ErrorCode::SingularShift)
    {
      throw;
    }
  }
  sigma = perturbed_shift(sigma);
  return solver.solve(sigma, rhs, mode);
}

inline SolveMode mode_of(BasisSide side)
{
  return side == BasisSide::input ? SolveMode::direct : SolveMode::transposed;
}

inline MatrixXcd head_rhs(const StateSpaceModel &model, const VectorXcd &dir, BasisSide side)
{
  return side == BasisSide::input ? MatrixXcd(model.B().cast<Complex>() * dir)
                                  : MatrixXcd(model.C().transpose().cast<Complex>() * dir);
}

inline MatrixXcd chain_rhs(const StateSpaceModel &model, const VectorXcd &v, BasisSide side)
{
  return side == BasisSide::input ? MatrixXcd(model.E() * v)
                                  : MatrixXcd(model.E().transpose() * v);
}

}  // namespace detail

//
// Literal primitive basis. Column i is (A - sigma_i E)^{-1} B r_i for a chain
// head and (A - sigma_i E)^{-1} E v_pred(i) for a continuation (transposed
// operators and C^T l_i on the output side). Conjugate partners are formed by
// conjugation instead of a second solve.
//
inline MatrixXcd primitive_basis(const StateSpaceModel &model, const InterpolationData &data,
                                 BasisSide side, ShiftedSolver &solver)
{
  require(data.inputs() == model.inputs() && data.outputs() == model.outputs(),
          ErrorCode::DimensionMismatch, "interpolation data does not fit the model");
  const std::vector<Index> partner = conjugate_partners(data);
  const Index n = model.order();
  MatrixXcd V(n, data.size());
  std::map<Index, Complex> used_shift;
  for (Index i = 0; i < data.size(); ++i)
  {
    const Index j = partner[static_cast<std::size_t>(i)];
    if (j < i)
    {
      V.col(i) = V.col(j).conjugate();
      continue;
    }
    const Index head = data.head_of(i);
    Complex sigma = used_shift.count(head) ? used_shift[head] : data.shift(i);
    const MatrixXcd rhs =
        data.is_head(i)
            ? detail::head_rhs(model, data.tangent(i, side == BasisSide::input), side)
            : detail::chain_rhs(model, V.col(data.predecessor(i)), side);
    V.col(i) = detail::solve_with_retry(solver, sigma, rhs, detail::mode_of(side));
    used_shift[head] = sigma;
  }
  return V;
}

//
// Relative residual of A V - E V S - B R (input side) or
// A^T W - E^T W S - C^T L (output side). The residual is absolute when the
// inhomogeneity vanishes.
//
inline double sylvester_residual(const StateSpaceModel &model, const MatrixXcd &basis,
                                 const InterpolationData &data, BasisSide side)
{
  require(basis.rows() == model.order() && basis.cols() == data.size(),
          ErrorCode::DimensionMismatch, "basis does not match model and data");
  const MatrixXcd S = data.S();
  MatrixXcd inhom;
  MatrixXcd R;
  if (side == BasisSide::input)
  {
    inhom = model.B().cast<Complex>() * data.right();
    R = model.A() * basis - model.E() * basis * S - inhom;
  }
  else
  {
    inhom = model.C().transpose().cast<Complex>() * data.left();
    R = SparseMatrix(model.A().transpose()) * basis -
        SparseMatrix(model.E().transpose()) * basis * S - inhom;
  }
  const double scale = inhom.norm();
  return scale > 0.0 ? R.norm() / scale : R.norm();
}

//
// Real orthonormal basis of the span of a conjugate-closed complex basis.
// Each conjugate column pair is replaced by its real and imaginary parts.
// Numerically dependent columns (below drop_tol relative) are dropped.
//
struct RealBasis
{
  MatrixXd basis;
  std::vector<Index> dropped;  // indices into the split real columns
};

inline RealBasis orthonormalize_real(const MatrixXcd &Vprim, const InterpolationData &data,
                                     double drop_tol = 1e-12)
{
  require(Vprim.cols() == data.size(), ErrorCode::DimensionMismatch,
          "basis has " + std::to_string(Vprim.cols()) + " columns for " +
              std::to_string(data.size()) + " triplets");
  const std::vector<Index> partner = conjugate_partners(data);
  MatrixXd split(Vprim.rows(), Vprim.cols());
  for (Index i = 0; i < data.size(); ++i)
  {
    const Index j = partner[static_cast<std::size_t>(i)];
    if (j == i)
    {
      split.col(i) = Vprim.col(i).real();
    }
    else if (j > i)
    {
      split.col(i) = Vprim.col(i).real();
    }
    else
    {
      split.col(i) = Vprim.col(j).imag();
    }
  }
  auto ortho = orthonormalize_columns(split, drop_tol);
  return {std::move(ortho.basis), std::move(ortho.dropped)};
}

//
// Real orthonormal bases built directly from interpolation data.
//
// Spans the same spaces as orthonormalize_real(primitive_basis(...)), but
// Jordan chains are orthogonalized while they are generated, which keeps long
// chains well conditioned. Only one member of each conjugate pair is solved
// for. Data may be extended later; extend() processes the entries that were
// added since the previous call.
//
class KrylovBasis
{
public:
  KrylovBasis() = default;

  explicit KrylovBasis(Index order, double drop_tol = 1e-12)
    : n_(order), drop_tol_(drop_tol), V_(order, 0), W_(order, 0)
  {
  }

  const MatrixXd &V() const { return Vt_; }
  const MatrixXd &W() const { return Wt_; }
  Index rank() const { return std::min(v_used_, w_used_); }
  Index processed() const { return processed_; }
  Index dropped_input() const { return v_dropped_; }
  Index dropped_output() const { return w_dropped_; }

  void extend(const StateSpaceModel &model, const InterpolationData &data, ShiftedSolver &solver)
  {
    require(model.order() == n_, ErrorCode::DimensionMismatch, "basis order differs from model");
    require(data.size() >= processed_, ErrorCode::InvalidArgument,
            "interpolation data lost entries since the last extension");
    const std::vector<Index> partner = conjugate_partners(data);
    for (Index i = processed_; i < data.size(); ++i)
    {
      const Index head = data.head_of(i);
      const Index hp = partner[static_cast<std::size_t>(head)];
      if (hp < head)
      {
        continue;  // covered by the partner chain
      }
      const bool real_chain = hp == head;
      Chain &chain = chains_[head];
      if (data.is_head(i))
      {
        chain.shift = data.shift(i);
      }
      else
      {
        require(!chain.v.empty(), ErrorCode::InvalidArgument,
                "continuation of an unknown chain at entry " + std::to_string(i));
      }
      add_vector(model, data, i, chain, BasisSide::input, real_chain, solver);
      add_vector(model, data, i, chain, BasisSide::output, real_chain, solver);
    }
    processed_ = data.size();
    Vt_ = V_.leftCols(v_used_);
    Wt_ = W_.leftCols(w_used_);
  }

private:
  struct Chain
  {
    Complex shift;
    std::vector<VectorXcd> v;
    std::vector<VectorXcd> w;
  };

  void add_vector(const StateSpaceModel &model, const InterpolationData &data, Index i,
                  Chain &chain, BasisSide side, bool real_chain, ShiftedSolver &solver)
  {
    std::vector<VectorXcd> &vecs = side == BasisSide::input ? chain.v : chain.w;
    const MatrixXcd rhs =
        data.is_head(i)
            ? detail::head_rhs(model, data.tangent(i, side == BasisSide::input), side)
            : detail::chain_rhs(model, vecs.back(), side);
    VectorXcd x = detail::solve_with_retry(solver, chain.shift, rhs, detail::mode_of(side)).col(0);
    for (int pass = 0; pass < 2; ++pass)
    {
      for (const VectorXcd &q : vecs)
      {
        x -= q * q.dot(x);
      }
    }
    const double norm = x.norm();
    MatrixXd &Q = side == BasisSide::input ? V_ : W_;
    Index &used = side == BasisSide::input ? v_used_ : w_used_;
    Index &dropped = side == BasisSide::input ? v_dropped_ : w_dropped_;
    if (!(norm > 0.0))
    {
      dropped += real_chain ? 1 : 2;
      // Keep a placeholder so later continuations still have a predecessor.
      vecs.push_back(VectorXcd::Zero(n_));
      return;
    }
    x /= norm;
    vecs.push_back(x);

    bool kept = false;
    if (real_chain)
    {
      orthonormal_append<double>(Q, used, x.real(), drop_tol_, kept);
      dropped += kept ? 0 : 1;
    }
    else
    {
      orthonormal_append<double>(Q, used, x.real(), drop_tol_, kept);
      dropped += kept ? 0 : 1;
      orthonormal_append<double>(Q, used, x.imag(), drop_tol_, kept);
      dropped += kept ? 0 : 1;
    }
  }

  Index n_ = 0;
  double drop_tol_ = 1e-12;
  MatrixXd V_;
  MatrixXd W_;
  MatrixXd Vt_;
  MatrixXd Wt_;
  Index v_used_ = 0;
  Index w_used_ = 0;
  Index v_dropped_ = 0;
  Index w_dropped_ = 0;
  Index processed_ = 0;
  std::map<Index, Chain> chains_;
};

// Projection onto equally sized leading parts of V and W.
inline StateSpaceModel project_bases(const StateSpaceModel &model, const MatrixXd &V,
                                     const MatrixXd &W)
{
  const Index k = std::min(V.cols(), W.cols());
  require(k > 0, ErrorCode::RankCollapse, "projection bases are empty");
  return project(model, V.leftCols(k), W.leftCols(k));
}

struct ProjectionPair
{
  MatrixXcd Vprim;
  MatrixXcd Wprim;
  MatrixXd V;
  MatrixXd W;
  InterpolationData data;
  Index dropped_input = 0;
  Index dropped_output = 0;
};

struct HermiteReduction
{
  StateSpaceModel rom;
  ProjectionPair pair;
};

//
// Two-sided tangential interpolation: projects onto V from the input-side
// data and W from the output-side data. With keep_primitive the literal
// primitive bases are stored as well (no further factorizations, the solver
// cache is reused).
//
inline HermiteReduction hermite_reduce(const StateSpaceModel &model, const InterpolationData &data,
                                       ShiftedSolver &solver, bool keep_primitive = true)
{
  require(!data.empty(), ErrorCode::InvalidArgument, "interpolation data is empty");
  require(data.inputs() == model.inputs() && data.outputs() == model.outputs(),
          ErrorCode::DimensionMismatch, "interpolation data does not fit the model");
  KrylovBasis basis(model.order());
  basis.extend(model, data, solver);

  HermiteReduction out;
  out.pair.data = data;
  out.pair.dropped_input = basis.dropped_input();
  out.pair.dropped_output = basis.dropped_output();
  const Index k = basis.rank();
  out.pair.V = basis.V().leftCols(k);
  out.pair.W = basis.W().leftCols(k);
  if (keep_primitive)
  {
    out.pair.Vprim = primitive_basis(model, data, BasisSide::input, solver);
    out.pair.Wprim = primitive_basis(model, data, BasisSide::output, solver);
  }
  out.rom = project_bases(model, out.pair.V, out.pair.W);
  return out;
}

inline HermiteReduction hermite_reduce(const StateSpaceModel &model, const InterpolationData &data)
{
  ShiftedSolver solver(model);
  return hermite_reduce(model, data, solver);
}

//
// Per-triplet relative residuals of the tangential conditions
//
//   G(s) r = G_r(s) r,   l^T G(s) = l^T G_r(s),   l^T G'(s) r = l^T G_r'(s) r
//
// at every chain head of the data. A zero reference value makes the residual
// absolute.
//
struct TangentialResidual
{
  Index index = 0;
  Complex shift;
  double right = 0.0;
  double left = 0.0;
  double hermite = 0.0;

  double max() const { return std::max({right, left, hermite}); }
};

struct InterpolationReport
{
  std::vector<TangentialResidual> entries;

  double max_residual() const
  {
    double m = 0.0;
    for (const auto &e : entries)
    {
      m = std::max(m, e.max());
    }
    return m;
  }

  bool passed(double tol) const { return max_residual() < tol; }
};

namespace detail
{

inline double relative_gap(double gap, double reference)
{
  return reference > 0.0 ? gap / reference : gap;
}

}  // namespace detail

inline TangentialResidual tangential_residual(ShiftedSolver &full, ShiftedSolver &rom, Complex s,
                                              const VectorXcd &r, const VectorXcd &l)
{
  const MatrixXcd G = eval_transfer(full, s);
  const MatrixXcd Gr = eval_transfer(rom, s);
  const MatrixXcd dG = eval_transfer_derivative(full, s);
  const MatrixXcd dGr = eval_transfer_derivative(rom, s);

  TangentialResidual out;
  out.shift = s;
  const VectorXcd Gref_r = G * r;
  out.right = detail::relative_gap((Gref_r - Gr * r).norm(), Gref_r.norm());
  const VectorXcd Gref_l = G.transpose() * l;
  out.left = detail::relative_gap((Gref_l - Gr.transpose() * l).norm(), Gref_l.norm());
  const Complex h = l.transpose() * dG * r;
  const Complex hr = l.transpose() * dGr * r;
  out.hermite = detail::relative_gap(std::abs(h - hr), std::abs(h));
  return out;
}

inline InterpolationReport verify_tangential_interpolation(const StateSpaceModel &full,
                                                           const StateSpaceModel &rom,
                                                           const InterpolationData &data)
{
  require(full.inputs() == rom.inputs() && full.outputs() == rom.outputs() &&
              data.inputs() == full.inputs() && data.outputs() == full.outputs(),
          ErrorCode::DimensionMismatch, "model, reduced model and data dimensions differ");
  ShiftedSolver full_solver(full);
  ShiftedSolver rom_solver(rom);
  InterpolationReport report;
  for (Index i : data.heads())
  {
    TangentialResidual res = tangential_residual(full_solver, rom_solver, data.shift(i),
                                                 data.right().col(i), data.left().col(i));
    res.index = i;
    report.entries.push_back(res);
  }
  return report;
}

}  // namespace h2mor

#endif  // H2MOR_INTERPOLATION_HPP
