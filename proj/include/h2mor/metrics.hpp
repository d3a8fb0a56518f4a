// Copyright 2026 The h2mor Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef H2MOR_METRICS_HPP
#define H2MOR_METRICS_HPP

#include <cmath>
#include <vector>

#include "h2mor/linalg.hpp"
#include "h2mor/model.hpp"
#include "h2mor/shifted_solver.hpp"
#include "h2mor/spectral.hpp"

namespace h2mor
{

//
// H2 norm of the strictly proper part, sqrt(trace(C P C^T)) with the
// controllability Gramian A P E^T + E P A^T + B B^T = 0. The feedthrough is
// ignored.
//
inline double h2_norm(const StateSpaceModel &model)
{
  require_dense_order(model);
  const MatrixXd P = solve_generalized_lyapunov(model.dense_A(), model.dense_E(), model.B());
  const double t = (model.C() * P * model.C().transpose()).trace();
  return std::sqrt(std::max(t, 0.0));
}

struct H2Error
{
  double absolute = 0.0;
  double relative = 0.0;
};

inline H2Error h2_error(const StateSpaceModel &full, const StateSpaceModel &rom)
{
  require(full.inputs() == rom.inputs() && full.outputs() == rom.outputs(),
          ErrorCode::DimensionMismatch, "models have different input/output dimensions");
  const double dscale = std::max(1.0, full.D().norm());
  require((full.D() - rom.D()).norm() <= 1e-12 * dscale, ErrorCode::FeedthroughMismatch,
          "feedthrough terms differ; the error system is not strictly proper");
  H2Error out;
  out.absolute = h2_norm(difference_model(full, rom));
  const double reference = h2_norm(full);
  out.relative = reference > 0.0 ? out.absolute / reference : out.absolute;
  return out;
}

// Time-domain bound ||y - y_r||_inf <= ||G - G_r||_H2 ||u||_L2.
inline double linf_output_bound(double h2_error_abs, double input_l2_norm)
{
  require(h2_error_abs >= 0.0 && input_l2_norm >= 0.0, ErrorCode::NegativeInput,
          "norms must be nonnegative");
  return h2_error_abs * input_l2_norm;
}

// Entrywise magnitudes |G(j w)| at the given frequencies.
inline std::vector<MatrixXd> bode_samples(const StateSpaceModel &model,
                                          const std::vector<double> &frequencies)
{
  for (double w : frequencies)
  {
    require(w > 0.0, ErrorCode::InvalidArgument, "frequencies must be positive");
  }
  ShiftedSolver solver(model);
  std::vector<MatrixXd> out;
  out.reserve(frequencies.size());
  for (double w : frequencies)
  {
    out.push_back(eval_transfer(solver, Complex(0.0, w)).cwiseAbs());
    solver.clear();
  }
  return out;
}

inline std::vector<double> logspace(double lo, double hi, Index points)
{
  require(lo > 0.0 && hi >= lo && points >= 1, ErrorCode::InvalidArgument,
          "invalid logarithmic range");
  std::vector<double> out(static_cast<std::size_t>(points));
  if (points == 1)
  {
    out[0] = lo;
    return out;
  }
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (Index i = 0; i < points; ++i)
  {
    out[static_cast<std::size_t>(i)] =
        std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
  }
  return out;
}

}  // namespace h2mor

#endif  // H2MOR_METRICS_HPP
