// Copyright 2026 The h2mor Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef H2MOR_BENCH_HPP
#define H2MOR_BENCH_HPP

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "h2mor/cirka.hpp"
#include "h2mor/io/results.hpp"
#include "h2mor/irka.hpp"
#include "h2mor/metrics.hpp"
#include "h2mor/spectral.hpp"

namespace h2mor
{

// All shifts at zero with all-ones tangents, as one Jordan chain.
inline InterpolationData zero_init(Index r, Index inputs, Index outputs)
{
  require(r >= 1, ErrorCode::InvalidArgument, "r must be at least 1");
  return zero_chain(r, inputs, outputs);
}

//
// Mirrored poles of smallest magnitude with their residue directions.
// Conjugate pairs are never split: when only one slot is left, the next real
// pole is used instead.
//
inline InterpolationData eigs_init(const StateSpaceModel &model, Index r)
{
  require(r >= 1 && r < model.order(), ErrorCode::InvalidArgument,
          "r must be between 1 and n - 1");
  const PoleResidueForm pr = pole_residue(model);
  std::vector<Index> order(static_cast<std::size_t>(pr.size()));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return std::abs(pr.poles(a)) < std::abs(pr.poles(b));
  });

  InterpolationData data(model.inputs(), model.outputs());
  std::vector<bool> taken(static_cast<std::size_t>(pr.size()), false);
  auto add = [&](Index i) {
    Complex s = -pr.poles(i);
    s = Complex(std::abs(s.real()), s.imag());
    data.append_head(s, pr.input_direction(i), pr.output_direction(i));
    taken[static_cast<std::size_t>(i)] = true;
  };
  for (Index i : order)
  {
    if (data.size() == r)
    {
      break;
    }
    if (taken[static_cast<std::size_t>(i)])
    {
      continue;
    }
    if (pr.poles(i).imag() == 0.0)
    {
      add(i);
      continue;
    }
    if (data.size() + 2 > r)
    {
      continue;
    }
    // Partner: the conjugate eigenvalue (stored adjacent by the eigensolver).
    Index partner = -1;
    for (Index j : order)
    {
      if (!taken[static_cast<std::size_t>(j)] && j != i && pr.poles(j) == std::conj(pr.poles(i)))
      {
        partner = j;
        break;
      }
    }
    require(partner >= 0, ErrorCode::DefectiveSpectrum, "complex pole without conjugate");
    add(i);
    add(partner);
  }
  require(data.size() == r, ErrorCode::InvalidArgument,
          "cannot select " + std::to_string(r) + " poles without splitting a conjugate pair");
  return data;
}

struct BenchmarkModel
{
  std::string name;
  StateSpaceModel model;
};

struct BenchmarkConfig
{
  std::vector<BenchmarkModel> models;
  std::vector<Index> orders;
  std::string init = "zero";  // "zero" or "eigs"
  IrkaOptions irka;
  CirkaOptions cirka;
  bool compute_errors = true;
};

//
// Cost comparison of one IRKA/CIRKA pair from the same initialization.
// cost_comparison holds when the model function grew by fewer columns in
// total than IRKA solved for, sum_k n_M^{k,+} < 2 r k_IRKA.
//
struct CostReport
{
  std::string model;
  Index r = 0;
  Index irka_steps = 0;
  Index irka_full_lu = 0;
  double irka_time = 0.0;
  Index cirka_steps = 0;
  Index cirka_inner_steps = 0;
  Index cirka_full_lu = 0;
  Index cirka_surrogate_lu = 0;
  double cirka_time = 0.0;
  Index model_function_growth = 0;
  bool cost_comparison = false;
  std::optional<double> speedup;
};

inline CostReport make_cost_report(const std::string &model, Index r, const IrkaResult &ir,
                                   const CirkaResult &cr)
{
  CostReport rep;
  rep.model = model;
  rep.r = r;
  rep.irka_steps = ir.iterations;
  rep.irka_full_lu = ir.counters.full_lu;
  rep.irka_time = ir.counters.total_time();
  rep.cirka_steps = cr.outer_iterations;
  rep.cirka_inner_steps = cr.counters.irka_steps_total;
  rep.cirka_full_lu = cr.counters.full_lu;
  rep.cirka_surrogate_lu = cr.counters.surrogate_lu;
  rep.cirka_time = cr.counters.total_time();
  rep.model_function_growth = cr.model_function.total_growth();
  rep.cost_comparison = rep.model_function_growth < 2 * r * ir.iterations;
  if (rep.cirka_time > 0.0)
  {
    rep.speedup = rep.irka_time / rep.cirka_time;
  }
  return rep;
}

struct BenchmarkResults
{
  std::vector<io::BenchmarkRow> rows;
  std::vector<CostReport> comparisons;
};

inline io::BenchmarkRow irka_row(const std::string &model, Index r, const std::string &init,
                                 const IrkaResult &ir)
{
  io::BenchmarkRow row;
  row.model = model;
  row.algorithm = "irka";
  row.r = r;
  row.k_outer = ir.iterations;
  row.k_inner_total = ir.iterations;
  row.n_lu_full = ir.counters.full_lu;
  row.n_lu_full_unrecycled = ir.counters.full_lu_unrecycled;
  row.time_s = ir.counters.total_time();
  row.rel_h2_error = ir.relative_h2_error;
  row.converged = ir.converged;
  row.init = init;
  return row;
}

inline io::BenchmarkRow cirka_row(const std::string &model, Index r, const std::string &init,
                                  const CirkaResult &cr, std::optional<double> error)
{
  io::BenchmarkRow row;
  row.model = model;
  row.algorithm = "cirka";
  row.r = r;
  row.k_outer = cr.outer_iterations;
  row.k_inner_total = cr.counters.irka_steps_total;
  row.n_lu_full = cr.counters.full_lu;
  row.n_lu_full_unrecycled = cr.counters.full_lu_unrecycled;
  row.n_lu_surrogate = cr.counters.surrogate_lu;
  row.time_s = cr.counters.total_time();
  row.rel_h2_error = error;
  if (cr.error_estimate)
  {
    row.rel_h2_estimate = cr.error_estimate->value;
  }
  row.model_function_growth = cr.model_function.total_growth();
  row.converged = cr.converged;
  row.fallback = cr.fallback;
  row.init = init;
  return row;
}

inline std::optional<double> try_relative_error(const StateSpaceModel &full,
                                                const StateSpaceModel &rom)
{
  try
  {
    return h2_error(full, rom).relative;
  }
  catch (const Error &)
  {
    return std::nullopt;
  }
}

//
// Runs IRKA and CIRKA from identical initial data for every model and order.
// A failing cell is recorded with its error message and the run continues.
// Rows are sorted by (model, r, algorithm).
//
inline BenchmarkResults run_benchmark(const BenchmarkConfig &config)
{
  require(config.init == "zero" || config.init == "eigs", ErrorCode::InvalidArgument,
          "unknown initialization '" + config.init + "'");
  BenchmarkResults out;
  for (const BenchmarkModel &bm : config.models)
  {
    for (Index r : config.orders)
    {
      io::BenchmarkRow irow;
      irow.model = bm.name;
      irow.algorithm = "irka";
      irow.r = r;
      irow.init = config.init;
      io::BenchmarkRow crow = irow;
      crow.algorithm = "cirka";

      std::optional<IrkaResult> ir;
      std::optional<CirkaResult> cr;
      try
      {
        require(r >= 1 && r < bm.model.order(), ErrorCode::InvalidArgument,
                "r = " + std::to_string(r) + " is not below the model order");
        const InterpolationData init = config.init == "zero"
                                           ? zero_init(r, bm.model.inputs(), bm.model.outputs())
                                           : eigs_init(bm.model, r);
        try
        {
          ir = irka(bm.model, init, config.irka);
          if (config.compute_errors)
          {
            ir->relative_h2_error = try_relative_error(bm.model, ir->rom);
          }
          irow = irka_row(bm.name, r, config.init, *ir);
        }
        catch (const Error &e)
        {
          irow.error = e.what();
        }
        try
        {
          cr = cirka(bm.model, init, config.cirka);
          const std::optional<double> err =
              config.compute_errors ? try_relative_error(bm.model, cr->rom) : std::nullopt;
          crow = cirka_row(bm.name, r, config.init, *cr, err);
        }
        catch (const Error &e)
        {
          crow.error = e.what();
        }
      }
      catch (const Error &e)
      {
        irow.error = crow.error = e.what();
      }
      out.rows.push_back(irow);
      out.rows.push_back(crow);
      if (ir && cr)
      {
        out.comparisons.push_back(make_cost_report(bm.name, r, *ir, *cr));
      }
    }
  }
  io::sort_rows(out.rows);
  return out;
}

}  // namespace h2mor

#endif  // H2MOR_BENCH_HPP
