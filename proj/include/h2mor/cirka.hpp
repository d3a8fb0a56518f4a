// Copyright 2026 The h2mor Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef H2MOR_CIRKA_HPP
#define H2MOR_CIRKA_HPP

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "h2mor/interpolation.hpp"
#include "h2mor/irka.hpp"
#include "h2mor/metrics.hpp"
#include "h2mor/optimality.hpp"
#include "h2mor/spectral.hpp"

namespace h2mor
{

enum class InitStrategy
{
  I1,  // initial data plus a Jordan chain at zero with all-ones tangents
  I2,  // Hermite doubling of every initial chain
};

enum class UpdateStrategy
{
  U1,  // add all optimal triplets; repeated ones extend their chain
  U2,  // add only triplets not yet interpolated
  U3,  // rebuild around the optimal triplets at constant order
};

struct CirkaOptions
{
  IrkaOptions inner;
  InitStrategy init_strategy = InitStrategy::I2;
  UpdateStrategy update_strategy = UpdateStrategy::U2;
  Index initial_nM = 0;        // 0 selects 2r
  double outer_tol = 1e-3;
  Index outer_max_iter = 15;
  Index max_model_order = 0;   // 0 selects n/2
  double new_triplet_shift_tol = 1e-6;
  double new_triplet_angle_tol = 1e-6;
  StopCriterion outer_criterion = StopCriterion::shifts_and_tangents;
  bool fallback_to_irka = true;
  bool diagnostics = true;     // error estimate and optimality report

  Index model_order_limit(Index n) const { return max_model_order > 0 ? max_model_order : n / 2; }
};

//
// Surrogate model obtained by projecting the full model onto tangential
// Krylov bases for all interpolation data collected so far (history).
// growth[g] is the number of basis columns added in generation g.
//
struct ModelFunction
{
  StateSpaceModel surrogate;
  KrylovBasis basis;
  InterpolationData history;
  std::vector<Index> growth;

  Index order() const { return surrogate.order(); }
  Index generation() const { return static_cast<Index>(growth.size()); }
  MatrixXd V() const { return basis.V().leftCols(order()); }
  MatrixXd W() const { return basis.W().leftCols(order()); }

  Index total_growth() const { return std::accumulate(growth.begin(), growth.end(), Index(0)); }
};

namespace detail
{

inline void rebuild_surrogate(const StateSpaceModel &model, ModelFunction &mf,
                              ShiftedSolver &solver)
{
  const Index before = mf.surrogate.empty() ? 0 : mf.order();
  mf.basis.extend(model, mf.history, solver);
  mf.surrogate = project_bases(model, mf.basis.V(), mf.basis.W());
  mf.growth.push_back(mf.order() - before);
}

}  // namespace detail

inline ModelFunction init_model_function(const StateSpaceModel &model,
                                         const InterpolationData &data0,
                                         const CirkaOptions &opts, ShiftedSolver &solver)
{
  const Index r = data0.size();
  require(r > 0, ErrorCode::InvalidArgument, "initial interpolation data is empty");
  conjugate_partners(data0);

  ModelFunction mf;
  mf.history = data0;
  Index nM = 0;
  if (opts.init_strategy == InitStrategy::I2)
  {
    nM = 2 * r;
    for (Index h : data0.heads())
    {
      const Index len = data0.chain_length(h);
      for (Index j = 0; j < len; ++j)
      {
        mf.history.append_continuation(mf.history.chain_tail(h));
      }
    }
  }
  else
  {
    nM = opts.initial_nM > 0 ? opts.initial_nM : 2 * r;
    require(nM > r, ErrorCode::InvalidArgument,
            "model function order " + std::to_string(nM) + " must exceed r = " +
                std::to_string(r));
    const VectorXcd ones_in = VectorXcd::Ones(data0.inputs());
    const VectorXcd ones_out = VectorXcd::Ones(data0.outputs());
    for (Index j = 0; j < nM - r; ++j)
    {
      mf.history.push(0.0, ones_in, ones_out, true, 1e-12, 1e-12);
    }
  }
  const Index limit = opts.model_order_limit(model.order());
  require(nM <= limit, ErrorCode::ModelOrderExceeded,
          "model function order " + std::to_string(nM) + " exceeds the limit " +
              std::to_string(limit));

  mf.basis = KrylovBasis(model.order());
  detail::rebuild_surrogate(model, mf, solver);
  return mf;
}

//
// Adds the optimal triplets to the model function. Throws ModelOrderExceeded
// before any solve when the order would exceed the configured limit.
//
inline void update_model_function(const StateSpaceModel &model, ModelFunction &mf,
                                  const InterpolationData &opt_data, const CirkaOptions &opts,
                                  ShiftedSolver &solver)
{
  conjugate_partners(opt_data);
  const Index limit = opts.model_order_limit(model.order());

  if (opts.update_strategy == UpdateStrategy::U3)
  {
    CirkaOptions rebuild = opts;
    rebuild.initial_nM = mf.order();
    std::vector<Index> growth = mf.growth;
    mf = init_model_function(model, opt_data, rebuild, solver);
    growth.push_back(mf.growth.back());
    mf.growth = std::move(growth);
    return;
  }

  InterpolationData history = mf.history;
  for (Index i = 0; i < opt_data.size(); ++i)
  {
    const Complex s = opt_data.shift(i);
    const VectorXcd r = opt_data.right_direction(i);
    const VectorXcd l = opt_data.left_direction(i);
    const Index match = history.find_matching_head(s, r, l, opts.new_triplet_shift_tol,
                                                   opts.new_triplet_angle_tol);
    if (match < 0)
    {
      history.append_head(s, r, l);
    }
    else if (opts.update_strategy == UpdateStrategy::U1)
    {
      history.append_continuation(history.chain_tail(match));
    }
  }
  const Index added = history.size() - mf.history.size();
  require(mf.order() + added <= limit, ErrorCode::ModelOrderExceeded,
          "model function order would grow to " + std::to_string(mf.order() + added) +
              ", limit is " + std::to_string(limit));
  mf.history = std::move(history);
  if (added == 0)
  {
    mf.growth.push_back(0);
    return;
  }
  detail::rebuild_surrogate(model, mf, solver);
}

struct ErrorEstimate
{
  double value = 0.0;
  bool used_stable_part = false;
};

//
// Relative H2 distance between the (stable part of the) model function and
// the reduced model, an estimate of the true reduction error.
//
inline ErrorEstimate estimate_error(const ModelFunction &mf, const StateSpaceModel &rom)
{
  const GeneralizedEigen eig = generalized_eig(rom.dense_A(), rom.dense_E());
  for (Index i = 0; i < eig.values.size(); ++i)
  {
    require(eig.values(i).real() < 0.0, ErrorCode::UnstableRom,
            "reduced model has an unstable pole; no error estimate");
  }
  const StablePart sp = stable_part(mf.surrogate);
  ErrorEstimate out;
  out.used_stable_part = sp.removed > 0;
  out.value = h2_error(sp.model, rom).relative;
  return out;
}

struct CirkaResult
{
  StateSpaceModel rom;
  InterpolationData rom_data;
  InterpolationData optimal_data;
  ModelFunction model_function;
  Index outer_iterations = 0;
  std::vector<Index> inner_iterations;
  std::vector<double> distances;
  bool converged = false;
  bool fallback = false;
  CostCounters counters;
  std::optional<ErrorEstimate> error_estimate;
  std::optional<OptimalityReport> optimality;
};

//
// Confined IRKA: IRKA runs on the model function only; the model function is
// updated with the optimal data after every outer step until two consecutive
// optimal data agree within outer_tol. If the model function would exceed
// its order limit, the run falls back to IRKA on the full model, warm
// started from the latest optimal data, and sets fallback.
//
// counters.full_lu counts factorizations of `model` (including the fallback),
// counters.surrogate_lu those of the model functions.
//
inline CirkaResult cirka(const StateSpaceModel &model, const InterpolationData &init,
                         const CirkaOptions &opts, ShiftedSolver &solver)
{
  opts.inner.validate();
  require(opts.outer_tol > 0.0 && opts.outer_max_iter >= 1, ErrorCode::InvalidArgument,
          "invalid outer iteration settings");
  require(!init.empty() && init.size() < model.order(), ErrorCode::InvalidArgument,
          "number of shifts must be between 1 and n - 1");
  require(opts.model_order_limit(model.order()) <= model.order(), ErrorCode::InvalidArgument,
          "model function order limit exceeds the model order");

  CirkaResult result;
  const Index lu0 = solver.lu_count();
  const Index lu0_unrecycled = solver.lu_count_unrecycled();
  InterpolationData prev = init;
  bool exceeded = false;
  {
    PhaseTimer timer(result.counters, "total");
    try
    {
      result.model_function = init_model_function(model, init, opts, solver);
    }
    catch (const Error &e)
    {
      if (e.code() != ErrorCode::ModelOrderExceeded || !opts.fallback_to_irka)
      {
        throw;
      }
      exceeded = true;
    }

    for (Index k = 1; !exceeded && k <= opts.outer_max_iter; ++k)
    {
      ModelFunction &mf = result.model_function;
      ShiftedSolver surrogate_solver(mf.surrogate, opts.inner.recycle_conjugates);
      IrkaResult inner = irka(mf.surrogate, prev, opts.inner, surrogate_solver);
      result.counters.surrogate_lu += inner.counters.full_lu;
      result.counters.surrogate_lu_unrecycled += inner.counters.full_lu_unrecycled;
      result.counters.irka_steps_total += inner.iterations;
      result.inner_iterations.push_back(inner.iterations);
      result.outer_iterations = k;
      result.rom = inner.rom;
      result.rom_data = inner.rom_data;
      result.optimal_data = inner.optimal_data;

      const double dist = inner.optimal_data.size() == prev.size()
                              ? shift_convergence(prev, inner.optimal_data, opts.outer_criterion)
                              : std::numeric_limits<double>::infinity();
      result.distances.push_back(dist);
      prev = inner.optimal_data;
      if (dist <= opts.outer_tol)
      {
        // A stalled inner iteration repeats itself; that is not a fixed point.
        result.converged = inner.converged;
        break;
      }
      if (k == opts.outer_max_iter)
      {
        break;
      }
      try
      {
        update_model_function(model, mf, prev, opts, solver);
      }
      catch (const Error &e)
      {
        if (e.code() != ErrorCode::ModelOrderExceeded || !opts.fallback_to_irka)
        {
          throw;
        }
        exceeded = true;
      }
    }

    if (exceeded)
    {
      result.fallback = true;
      IrkaResult direct = irka(model, prev, opts.inner, solver);
      result.rom = direct.rom;
      result.rom_data = direct.rom_data;
      result.optimal_data = direct.optimal_data;
      result.converged = direct.converged;
      result.counters.irka_steps_total += direct.iterations;
    }
  }
  result.counters.cirka_steps = result.outer_iterations;
  result.counters.full_lu = solver.lu_count() - lu0;
  result.counters.full_lu_unrecycled = solver.lu_count_unrecycled() - lu0_unrecycled;

  if (opts.diagnostics)
  {
    PhaseTimer timer(result.counters, "diagnostics");
    if (!result.fallback)
    {
      try
      {
        result.error_estimate = estimate_error(result.model_function, result.rom);
      }
      catch (const Error &)
      {
      }
    }
    try
    {
      result.optimality = verify_h2_optimality(model, result.rom);
    }
    catch (const Error &)
    {
    }
  }
  return result;
}

inline CirkaResult cirka(const StateSpaceModel &model, const InterpolationData &init,
                         const CirkaOptions &opts = {})
{
  ShiftedSolver solver(model, opts.inner.recycle_conjugates);
  return cirka(model, init, opts, solver);
}

//
// Compares the transfer functions of a reduced model and the direct
// two-sided projection of the full model with the given data, at 20
// logarithmically spaced points on the imaginary axis and 5 random points in
// the right half-plane. The frequency range spans the pole magnitudes of the
// reduced model, widened by a decade on each side.
//
struct EquivalenceReport
{
  double max_deviation = 0.0;
  std::vector<Complex> points;
  std::vector<double> deviations;

  bool passed(double tol) const { return max_deviation < tol; }
};

inline EquivalenceReport compare_transfer(const StateSpaceModel &reference,
                                          const StateSpaceModel &other,
                                          const std::vector<Complex> &points)
{
  ShiftedSolver a(reference);
  ShiftedSolver b(other);
  EquivalenceReport report;
  report.points = points;
  for (Complex s : points)
  {
    const MatrixXcd Ga = eval_transfer(a, s);
    const MatrixXcd Gb = eval_transfer(b, s);
    const double ref = Ga.norm();
    const double dev = ref > 0.0 ? (Ga - Gb).norm() / ref : (Ga - Gb).norm();
    report.deviations.push_back(dev);
    report.max_deviation = std::max(report.max_deviation, dev);
    a.clear();
    b.clear();
  }
  return report;
}

inline std::vector<Complex> equivalence_points(const StateSpaceModel &rom, unsigned seed = 7)
{
  const GeneralizedEigen eig = generalized_eig(rom.dense_A(), rom.dense_E());
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (Index i = 0; i < eig.values.size(); ++i)
  {
    const double mag = std::abs(eig.values(i));
    if (mag > 0.0)
    {
      lo = std::min(lo, mag);
      hi = std::max(hi, mag);
    }
  }
  if (!(hi > 0.0))
  {
    lo = hi = 1.0;
  }
  std::vector<Complex> points;
  for (double w : logspace(lo / 10.0, hi * 10.0, 20))
  {
    points.emplace_back(0.0, w);
  }
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> re(0.1, 1.0);
  std::uniform_real_distribution<double> im(-1.0, 1.0);
  for (int i = 0; i < 5; ++i)
  {
    points.emplace_back(re(rng) * hi, im(rng) * hi);
  }
  return points;
}

inline EquivalenceReport verify_realization_equivalence(const StateSpaceModel &full,
                                                        const InterpolationData &opt_data,
                                                        const StateSpaceModel &mf_rom,
                                                        ShiftedSolver &solver)
{
  const HermiteReduction direct = hermite_reduce(full, opt_data, solver, false);
  return compare_transfer(direct.rom, mf_rom, equivalence_points(mf_rom));
}

}  // namespace h2mor

#endif  // H2MOR_CIRKA_HPP
