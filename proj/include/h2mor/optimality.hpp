// Copyright 2026 The h2mor Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef H2MOR_OPTIMALITY_HPP
#define H2MOR_OPTIMALITY_HPP

#include <vector>

#include "h2mor/interpolation.hpp"
#include "h2mor/model.hpp"
#include "h2mor/shifted_solver.hpp"
#include "h2mor/spectral.hpp"

namespace h2mor
{

//
// First-order H2 optimality conditions of a reduced model with simple poles
// lambda_i and residue directions (b_i, c_i):
//
//   G(-lambda_i) b_i = G_r(-lambda_i) b_i,
//   c_i^T G(-lambda_i) = c_i^T G_r(-lambda_i),
//   c_i^T G'(-lambda_i) b_i = c_i^T G_r'(-lambda_i) b_i.
//
// Unstable poles are not checked; they are counted in skipped_unstable.
//
struct OptimalityReport
{
  std::vector<TangentialResidual> poles;
  Index skipped_unstable = 0;

  double max_residual() const
  {
    double m = 0.0;
    for (const auto &p : poles)
    {
      m = std::max(m, p.max());
    }
    return m;
  }

  bool passed(double tol) const { return skipped_unstable == 0 && max_residual() < tol; }
};

inline OptimalityReport verify_h2_optimality(const StateSpaceModel &full,
                                             const StateSpaceModel &rom)
{
  require(full.inputs() == rom.inputs() && full.outputs() == rom.outputs(),
          ErrorCode::DimensionMismatch, "models have different input/output dimensions");
  const PoleResidueForm pr = pole_residue(rom);
  ShiftedSolver full_solver(full);
  ShiftedSolver rom_solver(rom);
  OptimalityReport report;
  for (Index i = 0; i < pr.size(); ++i)
  {
    if (pr.poles(i).real() >= 0.0)
    {
      ++report.skipped_unstable;
      continue;
    }
    TangentialResidual res = tangential_residual(full_solver, rom_solver, -pr.poles(i),
                                                 pr.input_direction(i), pr.output_direction(i));
    res.index = i;
    report.poles.push_back(res);
  }
  return report;
}

}  // namespace h2mor

#endif  // H2MOR_OPTIMALITY_HPP
