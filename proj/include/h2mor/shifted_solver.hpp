// Copyright 2026 The h2mor Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef H2MOR_SHIFTED_SOLVER_HPP
#define H2MOR_SHIFTED_SOLVER_HPP

#include <chrono>
#include <cstdint>
#include <cstring>
#include <list>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <tuple>

#include <Eigen/SparseLU>

#include "h2mor/model.hpp"

namespace h2mor
{

enum class SolveMode
{
  direct,      // (A - sigma E) x = b
  transposed,  // (A - sigma E)^T x = b
};

//
// Cost instrumentation for one reduction run.
//
// full_lu counts factorizations of the model the algorithm was invoked on;
// surrogate_lu counts factorizations of intermediate model functions. The
// *_unrecycled counters report what the same run would have cost without
// sharing factorizations between conjugate shifts and between direct and
// transposed solves.
//
struct CostCounters
{
  Index full_lu = 0;
  Index full_lu_unrecycled = 0;
  Index surrogate_lu = 0;
  Index surrogate_lu_unrecycled = 0;
  Index irka_steps_total = 0;
  Index cirka_steps = 0;
  std::map<std::string, double> wall_time;

  void add_time(const std::string &phase, double seconds) { wall_time[phase] += seconds; }

  double total_time() const
  {
    auto it = wall_time.find("total");
    return it == wall_time.end() ? 0.0 : it->second;
  }
};

// Accumulates wall-clock seconds into a CostCounters phase on destruction.
class PhaseTimer
{
public:
  PhaseTimer(CostCounters &counters, std::string phase)
    : counters_(counters), phase_(std::move(phase)), start_(std::chrono::steady_clock::now())
  {
  }
  PhaseTimer(const PhaseTimer &) = delete;
  PhaseTimer &operator=(const PhaseTimer &) = delete;
  ~PhaseTimer()
  {
    const auto stop = std::chrono::steady_clock::now();
    counters_.add_time(phase_, std::chrono::duration<double>(stop - start_).count());
  }

private:
  CostCounters &counters_;
  std::string phase_;
  std::chrono::steady_clock::time_point start_;
};

//
// Session object for solves with A - sigma E.
//
// Sparse LU factorizations are cached by the exact bit pattern of the shift.
// With conjugate recycling enabled the cache key is canonicalized to a
// nonnegative imaginary part, solves at conj(sigma) are served as
// conj(F^{-1} conj(b)), and transposed solves reuse the direct factorization.
// The referenced model must outlive the solver. Not thread-safe.
//
class ShiftedSolver
{
public:
  using LU = Eigen::SparseLU<ComplexSparseMatrix, Eigen::COLAMDOrdering<int>>;

  explicit ShiftedSolver(const StateSpaceModel &model, bool recycle_conjugates = true,
                         std::size_t max_cached = 64)
    : model_(&model), recycle_(recycle_conjugates), max_cached_(max_cached ? max_cached : 1)
  {
    A_ = model.A().cast<Complex>();
    E_ = model.E().cast<Complex>();
  }

  const StateSpaceModel &model() const { return *model_; }
  bool recycles_conjugates() const { return recycle_; }

  // Number of sparse factorizations performed by this session.
  Index lu_count() const { return lu_count_; }

  // Number of distinct (shift, mode) pairs requested; equals lu_count() for a
  // session that never recycles.
  Index lu_count_unrecycled() const { return static_cast<Index>(requested_.size()); }

  MatrixXcd solve(Complex sigma, const MatrixXcd &rhs, SolveMode mode = SolveMode::direct)
  {
    require(rhs.rows() == model_->order(), ErrorCode::DimensionMismatch,
            "right-hand side has " + std::to_string(rhs.rows()) + " rows, expected " +
                std::to_string(model_->order()));
    sigma = canonical_zero(sigma);
    requested_.insert(Key{bits(sigma.real()), bits(sigma.imag()), static_cast<int>(mode)});

    bool conjugated = false;
    Complex factored = sigma;
    int key_mode = 0;
    if (recycle_)
    {
      if (sigma.imag() < 0.0)
      {
        factored = std::conj(sigma);
        conjugated = true;
      }
    }
    else
    {
      key_mode = static_cast<int>(mode);
    }

    LU &lu = factor(Key{bits(factored.real()), bits(factored.imag()), key_mode}, factored);
    MatrixXcd b = conjugated ? MatrixXcd(rhs.conjugate()) : rhs;
    MatrixXcd x = mode == SolveMode::direct ? MatrixXcd(lu.solve(b))
                                            : MatrixXcd(lu.transpose().solve(b));
    if (conjugated)
    {
      x = x.conjugate();
    }
    return x;
  }

  MatrixXcd solve(Complex sigma, const MatrixXd &rhs, SolveMode mode = SolveMode::direct)
  {
    return solve(sigma, MatrixXcd(rhs.cast<Complex>()), mode);
  }

  void clear()
  {
    cache_.clear();
    lru_.clear();
  }

private:
  struct Key
  {
    std::uint64_t re;
    std::uint64_t im;
    int mode;
    bool operator<(const Key &o) const
    {
      return std::tie(re, im, mode) < std::tie(o.re, o.im, o.mode);
    }
    bool operator==(const Key &o) const { return re == o.re && im == o.im && mode == o.mode; }
  };

  static std::uint64_t bits(double x)
  {
    std::uint64_t u = 0;
    std::memcpy(&u, &x, sizeof(u));
    return u;
  }

  static Complex canonical_zero(Complex z)
  {
    // -0.0 and 0.0 name the same shift.
    return {z.real() == 0.0 ? 0.0 : z.real(), z.imag() == 0.0 ? 0.0 : z.imag()};
  }

  LU &factor(const Key &key, Complex sigma)
  {
    auto it = cache_.find(key);
    if (it != cache_.end())
    {
      lru_.remove(key);
      lru_.push_front(key);
      return *it->second;
    }

    auto lu = std::make_unique<LU>();
    ComplexSparseMatrix shifted = A_ - sigma * E_;
    shifted.makeCompressed();
    lu->compute(shifted);
    ++lu_count_;
    if (lu->info() != Eigen::Success)
    {
      fail(ErrorCode::SingularShift, "A - sigma E is singular at sigma = (" +
                                         std::to_string(sigma.real()) + ", " +
                                         std::to_string(sigma.imag()) + ")");
    }

    if (cache_.size() >= max_cached_)
    {
      cache_.erase(lru_.back());
      lru_.pop_back();
    }
    lru_.push_front(key);
    return *cache_.emplace(key, std::move(lu)).first->second;
  }

  const StateSpaceModel *model_;
  bool recycle_;
  std::size_t max_cached_;
  ComplexSparseMatrix A_;
  ComplexSparseMatrix E_;
  std::map<Key, std::unique_ptr<LU>> cache_;
  std::list<Key> lru_;
  std::set<Key> requested_;
  Index lu_count_ = 0;
};

//
// Transfer function evaluation. Every evaluation goes through shifted sparse
// solves; no inverse is formed.
//
//   G(s)  = C (sE - A)^{-1} B + D = -C (A - sE)^{-1} B + D
//   G'(s) = -C (sE - A)^{-1} E (sE - A)^{-1} B = -C (A - sE)^{-1} E (A - sE)^{-1} B
//
inline MatrixXcd eval_transfer(ShiftedSolver &solver, Complex s)
{
  const auto &model = solver.model();
  MatrixXcd X = solver.solve(s, model.B());
  return -(model.C() * X) + model.D().cast<Complex>();
}

inline MatrixXcd eval_transfer(const StateSpaceModel &model, Complex s)
{
  ShiftedSolver solver(model);
  return eval_transfer(solver, s);
}

inline MatrixXcd eval_transfer_derivative(ShiftedSolver &solver, Complex s)
{
  const auto &model = solver.model();
  MatrixXcd X = solver.solve(s, model.B());
  MatrixXcd Y = solver.solve(s, MatrixXcd(model.E() * X));
  return -(model.C() * Y);
}

inline MatrixXcd eval_transfer_derivative(const StateSpaceModel &model, Complex s)
{
  ShiftedSolver solver(model);
  return eval_transfer_derivative(solver, s);
}

}  // namespace h2mor

#endif  // H2MOR_SHIFTED_SOLVER_HPP
