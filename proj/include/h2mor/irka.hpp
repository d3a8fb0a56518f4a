// Copyright 2026 The h2mor Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef H2MOR_IRKA_HPP
#define H2MOR_IRKA_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "h2mor/interpolation.hpp"
#include "h2mor/interpolation_data.hpp"
#include "h2mor/linalg.hpp"
#include "h2mor/model.hpp"
#include "h2mor/shifted_solver.hpp"
#include "h2mor/spectral.hpp"

namespace h2mor
{

enum class StopCriterion
{
  shifts_only,
  shifts_and_tangents,
};

struct IrkaOptions
{
  double tol = 1e-3;
  Index max_iter = 50;
  StopCriterion stop_criterion = StopCriterion::shifts_only;
  bool recycle_conjugates = true;

  void validate() const
  {
    require(tol > 0.0, ErrorCode::InvalidArgument, "tolerance must be positive");
    require(max_iter >= 1, ErrorCode::InvalidArgument, "max_iter must be at least 1");
  }
};

//
// Mirrored poles with residue directions of a reduced model: entry i is
// (-lambda_i, b_i, c_i) with b_i^T = y_i^H B_r and c_i = C_r x_i. Shifts that
// would land in the closed left half-plane are reflected to |Re|, which sets
// *reflected.
//
inline InterpolationData update_interpolation_data(const StateSpaceModel &rom,
                                                   bool *reflected = nullptr)
{
  const PoleResidueForm pr = pole_residue(rom);
  InterpolationData data(rom.inputs(), rom.outputs());
  bool any = false;
  for (Index i = 0; i < pr.size(); ++i)
  {
    Complex s = -pr.poles(i);
    if (s.real() <= 0.0)
    {
      s = Complex(std::abs(s.real()), s.imag());
      any = true;
    }
    data.append_head(s, pr.input_direction(i), pr.output_direction(i));
  }
  if (reflected)
  {
    *reflected = any;
  }
  return data;
}

namespace detail
{

inline std::vector<Index> sorted_by_shift(const InterpolationData &data)
{
  std::vector<Index> order(static_cast<std::size_t>(data.size()));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    const Complex x = data.shift(a);
    const Complex y = data.shift(b);
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return order;
}

}  // namespace detail

//
// Distance between consecutive interpolation data. Shifts are matched after
// sorting by (Re, Im); the shift distance is ||s_next - s_prev|| / ||s_prev||
// (absolute when s_prev = 0). With shifts_and_tangents the largest
// 1 - |cos angle| over matched right and left tangents is included.
//
inline double shift_convergence(const InterpolationData &prev, const InterpolationData &next,
                                StopCriterion criterion)
{
  require(prev.size() == next.size(), ErrorCode::CardinalityMismatch,
          "interpolation data sizes differ (" + std::to_string(prev.size()) + " vs " +
              std::to_string(next.size()) + ")");
  const auto pa = detail::sorted_by_shift(prev);
  const auto pb = detail::sorted_by_shift(next);
  double diff = 0.0;
  double ref = 0.0;
  for (std::size_t k = 0; k < pa.size(); ++k)
  {
    diff += std::norm(next.shift(pb[k]) - prev.shift(pa[k]));
    ref += std::norm(prev.shift(pa[k]));
  }
  double dist = ref > 0.0 ? std::sqrt(diff / ref) : std::sqrt(diff);
  if (criterion == StopCriterion::shifts_and_tangents)
  {
    for (std::size_t k = 0; k < pa.size(); ++k)
    {
      dist = std::max(dist, 1.0 - direction_cosine(prev.right_direction(pa[k]),
                                                   next.right_direction(pb[k])));
      dist = std::max(dist, 1.0 - direction_cosine(prev.left_direction(pa[k]),
                                                   next.left_direction(pb[k])));
    }
  }
  return dist;
}

struct IrkaResult
{
  StateSpaceModel rom;
  InterpolationData rom_data;      // data the final rom interpolates
  InterpolationData optimal_data;  // mirrored poles of the final rom
  Index iterations = 0;
  bool converged = false;
  bool reflected_shifts = false;
  std::vector<InterpolationData> shift_history;
  std::vector<double> distances;
  CostCounters counters;
  std::optional<double> relative_h2_error;
};

//
// Iterative rational Krylov fixed point. Every step builds the two-sided
// tangential bases for the current data, projects, and replaces the data by
// the mirrored poles and residue directions of the projected model. Stops
// when consecutive data are within tol or after max_iter steps; a run that
// hits max_iter returns with converged = false.
//
// counters.full_lu counts the factorizations done by `solver` during the run.
//
inline IrkaResult irka(const StateSpaceModel &model, const InterpolationData &init,
                       const IrkaOptions &opts, ShiftedSolver &solver)
{
  opts.validate();
  require(!init.empty() && init.size() <= model.order(), ErrorCode::InvalidArgument,
          "number of shifts must be between 1 and the model order");
  require(init.inputs() == model.inputs() && init.outputs() == model.outputs(),
          ErrorCode::DimensionMismatch, "interpolation data does not fit the model");
  conjugate_partners(init);

  IrkaResult result;
  const Index lu0 = solver.lu_count();
  const Index lu0_unrecycled = solver.lu_count_unrecycled();
  {
    PhaseTimer timer(result.counters, "total");
    InterpolationData data = init;
    result.shift_history.push_back(data);
    for (Index k = 1; k <= opts.max_iter; ++k)
    {
      KrylovBasis basis(model.order());
      basis.extend(model, data, solver);
      result.rom = project_bases(model, basis.V(), basis.W());
      result.rom_data = data;

      bool reflected = false;
      InterpolationData next = update_interpolation_data(result.rom, &reflected);
      result.reflected_shifts = result.reflected_shifts || reflected;
      const double dist = next.size() == data.size()
                              ? shift_convergence(data, next, opts.stop_criterion)
                              : std::numeric_limits<double>::infinity();
      result.distances.push_back(dist);
      result.shift_history.push_back(next);
      result.iterations = k;
      data = std::move(next);
      if (dist <= opts.tol)
      {
        result.converged = true;
        break;
      }
    }
    result.optimal_data = data;
  }
  result.counters.full_lu = solver.lu_count() - lu0;
  result.counters.full_lu_unrecycled = solver.lu_count_unrecycled() - lu0_unrecycled;
  result.counters.irka_steps_total = result.iterations;
  return result;
}

inline IrkaResult irka(const StateSpaceModel &model, const InterpolationData &init,
                       const IrkaOptions &opts = {})
{
  ShiftedSolver solver(model, opts.recycle_conjugates);
  return irka(model, init, opts, solver);
}

}  // namespace h2mor

#endif  // H2MOR_IRKA_HPP
