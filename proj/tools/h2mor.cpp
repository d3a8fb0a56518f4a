// Copyright 2026 The h2mor Authors.
// SPDX-License-Identifier: Apache-2.0

// h2mor command-line front end: reduce, benchmark, bode, verify, config.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "h2mor/h2mor.hpp"

#ifndef H2MOR_DEFAULT_MANIFEST_DIR
#define H2MOR_DEFAULT_MANIFEST_DIR "data/manifests"
#endif

namespace fs = std::filesystem;
using namespace h2mor;

namespace
{

enum Exit
{
  kOk = 0,
  kInputError = 1,
  kSolverError = 2,
  kVerifyFailed = 3,
};

int exit_code_for(ErrorCode code)
{
  switch (code)
  {
    case ErrorCode::DimensionMismatch:
    case ErrorCode::StructurallySingularE:
    case ErrorCode::CardinalityMismatch:
    case ErrorCode::NotConjugateClosed:
    case ErrorCode::ParseError:
    case ErrorCode::UnsupportedField:
    case ErrorCode::IoError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::NegativeInput:
      return kInputError;
    default:
      return kSolverError;
  }
}

std::vector<fs::path> search_dirs() { return io::manifest_search_path({H2MOR_DEFAULT_MANIFEST_DIR}); }

struct LoadedModel
{
  std::string name;
  StateSpaceModel model;
};

LoadedModel load_named_model(const std::string &name_or_path)
{
  const auto dirs = search_dirs();
  const auto path = io::find_manifest(name_or_path, dirs);
  if (!path)
  {
    std::string known;
    for (const auto &n : io::list_manifests(dirs))
    {
      known += (known.empty() ? "" : ", ") + n;
    }
    fail(ErrorCode::InvalidArgument, "unknown model '" + name_or_path + "'; registered: " +
                                         (known.empty() ? "(none)" : known));
  }
  const io::ModelManifest manifest = io::read_manifest(*path);
  require(manifest.files_present(), ErrorCode::IoError,
          "matrix files of model '" + manifest.name + "' are missing (see " + path->string() +
              ")");
  return {manifest.name, io::load_model(manifest)};
}

std::string format_complex(Complex z)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g%+.6gj", z.real(), z.imag());
  return buf;
}

std::string stop_name(StopCriterion c) { return c == StopCriterion::shifts_only ? "s0" : "s0+tanDir"; }

StopCriterion parse_stop(const std::string &s)
{
  if (s == "s0")
  {
    return StopCriterion::shifts_only;
  }
  if (s == "s0+tanDir")
  {
    return StopCriterion::shifts_and_tangents;
  }
  fail(ErrorCode::InvalidArgument, "unknown stop criterion '" + s + "'");
}

// Options shared by reduce and benchmark.
struct AlgorithmFlags
{
  double tol = 1e-3;
  Index maxiter = 50;
  std::string stop = "s0";
  std::string cirka_stop = "s0+tanDir";
  std::string init_strategy = "I2";
  std::string update_strategy = "U2";
  double outer_tol = 1e-3;
  Index outer_maxiter = 15;
  Index max_model_order = 0;
  Index initial_nm = 0;
  bool no_recycle = false;

  void add_to(CLI::App *app)
  {
    app->add_option("--tol", tol, "IRKA convergence tolerance")->check(CLI::PositiveNumber);
    app->add_option("--maxiter", maxiter, "maximum IRKA iterations")->check(CLI::PositiveNumber);
    app->add_option("--stop", stop, "IRKA stopping criterion")
        ->check(CLI::IsMember({"s0", "s0+tanDir"}));
    app->add_option("--cirka-stop", cirka_stop, "CIRKA outer stopping criterion")
        ->check(CLI::IsMember({"s0", "s0+tanDir"}));
    app->add_option("--init-strategy", init_strategy, "model function initialization")
        ->check(CLI::IsMember({"I1", "I2"}));
    app->add_option("--update-strategy", update_strategy, "model function update")
        ->check(CLI::IsMember({"U1", "U2", "U3"}));
    app->add_option("--outer-tol", outer_tol, "CIRKA outer tolerance")
        ->check(CLI::PositiveNumber);
    app->add_option("--outer-maxiter", outer_maxiter, "maximum CIRKA outer iterations")
        ->check(CLI::PositiveNumber);
    app->add_option("--max-model-order", max_model_order,
                    "model function order limit (default n/2)");
    app->add_option("--nm", initial_nm, "initial model function order for I1 (default 2r)");
    app->add_flag("--no-recycle", no_recycle, "factorize conjugate shifts separately");
  }

  IrkaOptions irka() const
  {
    IrkaOptions o;
    o.tol = tol;
    o.max_iter = maxiter;
    o.stop_criterion = parse_stop(stop);
    o.recycle_conjugates = !no_recycle;
    return o;
  }

  CirkaOptions cirka() const
  {
    CirkaOptions o;
    o.inner = irka();
    o.init_strategy = init_strategy == "I1" ? InitStrategy::I1 : InitStrategy::I2;
    o.update_strategy = update_strategy == "U1"   ? UpdateStrategy::U1
                        : update_strategy == "U3" ? UpdateStrategy::U3
                                                  : UpdateStrategy::U2;
    o.outer_tol = outer_tol;
    o.outer_max_iter = outer_maxiter;
    o.outer_criterion = parse_stop(cirka_stop);
    o.max_model_order = max_model_order;
    o.initial_nM = initial_nm;
    return o;
  }
};

nlohmann::json config_json(const AlgorithmFlags &flags)
{
  const IrkaOptions io = flags.irka();
  const CirkaOptions co = flags.cirka();
  return {{"irka",
           {{"tol", io.tol},
            {"maxiter", io.max_iter},
            {"stop_criterion", stop_name(io.stop_criterion)},
            {"recycle_conjugates", io.recycle_conjugates}}},
          {"cirka",
           {{"init_strategy", co.init_strategy == InitStrategy::I1 ? "I1" : "I2"},
            {"update_strategy", co.update_strategy == UpdateStrategy::U1   ? "U1"
                                : co.update_strategy == UpdateStrategy::U2 ? "U2"
                                                                           : "U3"},
            {"stop_criterion", stop_name(co.outer_criterion)},
            {"outer_tol", co.outer_tol},
            {"outer_maxiter", co.outer_max_iter},
            {"initial_nM", co.initial_nM > 0 ? nlohmann::json(co.initial_nM) : "2r"},
            {"max_model_order",
             co.max_model_order > 0 ? nlohmann::json(co.max_model_order) : "n/2"},
            {"new_triplet_shift_tol", co.new_triplet_shift_tol},
            {"new_triplet_angle_tol", co.new_triplet_angle_tol},
            {"inner_tol", co.inner.tol},
            {"inner_maxiter", co.inner.max_iter},
            {"inner_stop_criterion", stop_name(co.inner.stop_criterion)}}}};
}

InterpolationData make_init(const std::string &kind, const std::string &file,
                            const StateSpaceModel &model, Index r)
{
  if (kind == "zero")
  {
    return zero_init(r, model.inputs(), model.outputs());
  }
  if (kind == "eigs")
  {
    return eigs_init(model, r);
  }
  require(!file.empty(), ErrorCode::InvalidArgument, "--init file requires --init-file");
  InterpolationData data = io::read_data(file);
  require(data.size() == r, ErrorCode::CardinalityMismatch,
          "initial data has " + std::to_string(data.size()) + " entries, r = " +
              std::to_string(r));
  return data;
}

void print_shifts(const InterpolationData &data)
{
  std::cout << "  shifts:";
  for (Index i = 0; i < data.size(); ++i)
  {
    std::cout << ' ' << format_complex(data.shift(i));
  }
  std::cout << '\n';
}

// --- reduce ----------------------------------------------------------------

struct ReduceFlags
{
  std::string model;
  Index r = 0;
  std::string algo = "cirka";
  std::string init = "zero";
  std::string init_file;
  std::string out_dir;
  bool no_error = false;
  bool verbose = false;
  AlgorithmFlags alg;
};

int cmd_reduce(const ReduceFlags &f)
{
  require(f.r >= 1, ErrorCode::InvalidArgument, "--r must be at least 1");
  const LoadedModel lm = load_named_model(f.model);
  const StateSpaceModel &model = lm.model;
  require(f.r < model.order(), ErrorCode::InvalidArgument,
          "--r must be below the model order " + std::to_string(model.order()));
  const InterpolationData init = make_init(f.init, f.init_file, model, f.r);

  nlohmann::json summary = {{"model", lm.name},
                            {"algorithm", f.algo},
                            {"r", f.r},
                            {"init", f.init},
                            {"n", model.order()},
                            {"m", model.inputs()},
                            {"p", model.outputs()}};
  StateSpaceModel rom;
  InterpolationData optimal;
  InterpolationData rom_data;
  std::optional<OptimalityReport> optimality;

  std::cout << lm.name << " (n=" << model.order() << ", m=" << model.inputs()
            << ", p=" << model.outputs() << "), " << f.algo << ", r=" << f.r
            << ", init=" << f.init << '\n';
  if (f.algo == "irka")
  {
    const IrkaResult res = irka(model, init, f.alg.irka());
    rom = res.rom;
    optimal = res.optimal_data;
    rom_data = res.rom_data;
    summary["converged"] = res.converged;
    summary["k_irka"] = res.iterations;
    summary["n_lu_full"] = res.counters.full_lu;
    summary["n_lu_full_unrecycled"] = res.counters.full_lu_unrecycled;
    summary["time_s"] = res.counters.total_time();
    summary["reflected_shifts"] = res.reflected_shifts;
    std::cout << "  converged: " << (res.converged ? "yes" : "no") << ", k_IRKA=" << res.iterations
              << ", n_LU=" << res.counters.full_lu << " (unrecycled "
              << res.counters.full_lu_unrecycled << ")\n";
    if (f.verbose)
    {
      for (std::size_t k = 0; k < res.distances.size(); ++k)
      {
        std::cout << "    step " << k + 1 << ": distance " << res.distances[k] << '\n';
      }
    }
    try
    {
      optimality = verify_h2_optimality(model, rom);
    }
    catch (const Error &)
    {
    }
  }
  else
  {
    const CirkaResult res = cirka(model, init, f.alg.cirka());
    rom = res.rom;
    optimal = res.optimal_data;
    rom_data = res.rom_data;
    optimality = res.optimality;
    summary["converged"] = res.converged;
    summary["fallback"] = res.fallback;
    summary["k_cirka"] = res.outer_iterations;
    summary["k_irka_inner"] = res.inner_iterations;
    summary["n_lu_full"] = res.counters.full_lu;
    summary["n_lu_full_unrecycled"] = res.counters.full_lu_unrecycled;
    summary["n_lu_surrogate"] = res.counters.surrogate_lu;
    summary["model_function_order"] = res.model_function.order();
    summary["model_function_growth"] = res.model_function.growth;
    summary["time_s"] = res.counters.total_time();
    std::cout << "  converged: " << (res.converged ? "yes" : "no")
              << (res.fallback ? " (fell back to IRKA on the full model)" : "")
              << ", k_CIRKA=" << res.outer_iterations
              << ", sum k_IRKA=" << res.counters.irka_steps_total
              << ", n_LU=" << res.counters.full_lu << ", surrogate n_LU="
              << res.counters.surrogate_lu << ", n_M=" << res.model_function.order() << '\n';
    if (res.error_estimate)
    {
      summary["rel_h2_estimate"] = res.error_estimate->value;
      std::cout << "  error estimate: " << res.error_estimate->value
                << (res.error_estimate->used_stable_part ? " (stable part)" : "") << '\n';
    }
  }
  print_shifts(optimal);

  if (optimality)
  {
    summary["optimality_residual"] = optimality->max_residual();
    summary["unstable_poles"] = optimality->skipped_unstable;
    std::cout << "  optimality residual: " << optimality->max_residual();
    if (optimality->skipped_unstable > 0)
    {
      std::cout << " (" << optimality->skipped_unstable << " unstable poles skipped)";
    }
    std::cout << '\n';
  }
  if (!f.no_error)
  {
    try
    {
      const H2Error err = h2_error(model, rom);
      summary["rel_h2_error"] = err.relative;
      summary["abs_h2_error"] = err.absolute;
      std::cout << "  relative H2 error: " << err.relative << '\n';
    }
    catch (const Error &e)
    {
      std::cout << "  relative H2 error: unavailable (" << e.what() << ")\n";
    }
  }

  if (!f.out_dir.empty())
  {
    const fs::path dir(f.out_dir);
    const std::string stem = lm.name + "_" + f.algo + "_r" + std::to_string(f.r);
    io::write_model(dir, stem, rom, "reduced model");
    io::write_data((dir / (stem + "_optimal.json")).string(), optimal);
    io::write_data((dir / (stem + "_data.json")).string(), rom_data);
    std::ofstream out(dir / (stem + "_result.json"));
    require(static_cast<bool>(out), ErrorCode::IoError, "cannot write result file");
    out << summary.dump(2) << '\n';
    std::cout << "  written to " << (dir / stem).string() << "*\n";
  }
  return kOk;
}

// --- benchmark -------------------------------------------------------------

struct BenchFlags
{
  std::vector<std::string> models;
  std::vector<Index> orders;
  std::string init = "zero";
  std::string out;
  std::string format = "csv";
  bool compare = false;
  bool no_error = false;
  AlgorithmFlags alg;
};

int cmd_benchmark(const BenchFlags &f)
{
  for (Index r : f.orders)
  {
    require(r >= 1, ErrorCode::InvalidArgument, "orders must be at least 1");
  }
  BenchmarkConfig config;
  config.init = f.init;
  config.irka = f.alg.irka();
  config.cirka = f.alg.cirka();
  config.orders = f.orders;
  config.compute_errors = !f.no_error;
  for (const std::string &name : f.models)
  {
    LoadedModel lm = load_named_model(name);
    config.models.push_back({lm.name, std::move(lm.model)});
  }
  const BenchmarkResults results = run_benchmark(config);

  const io::ResultFormat fmt = f.format == "json" ? io::ResultFormat::json : io::ResultFormat::csv;
  if (f.out.empty())
  {
    fmt == io::ResultFormat::csv ? io::write_csv(std::cout, results.rows)
                                 : io::write_json(std::cout, results.rows);
  }
  else
  {
    io::write_results(results.rows, fmt, f.out);
  }
  for (const auto &row : results.rows)
  {
    if (!row.error.empty())
    {
      std::cerr << "cell " << row.model << "/" << row.algorithm << "/r=" << row.r
                << " failed: " << row.error << '\n';
    }
  }
  if (f.compare)
  {
    std::cout << "model,r,irka_k,irka_n_lu,irka_time_s,cirka_k,cirka_inner_k,cirka_n_lu,"
                 "cirka_surrogate_lu,cirka_time_s,speedup,nm_growth,cost_comparison\n";
    for (const CostReport &c : results.comparisons)
    {
      std::cout << c.model << ',' << c.r << ',' << c.irka_steps << ',' << c.irka_full_lu << ','
                << io::format_number(c.irka_time) << ',' << c.cirka_steps << ','
                << c.cirka_inner_steps << ',' << c.cirka_full_lu << ',' << c.cirka_surrogate_lu
                << ',' << io::format_number(c.cirka_time) << ','
                << (c.speedup ? io::format_number(*c.speedup) : "") << ','
                << c.model_function_growth << ',' << (c.cost_comparison ? "true" : "false")
                << '\n';
    }
  }
  return kOk;
}

// --- bode ------------------------------------------------------------------

struct BodeFlags
{
  std::string model;
  std::vector<std::string> roms;
  std::optional<double> wmin;
  std::optional<double> wmax;
  std::vector<double> freqs;
  Index points = 200;
  std::string out;
};

std::pair<double, double> auto_range(const StateSpaceModel &model)
{
  if (model.order() > kDenseThreshold)
  {
    return {1e-2, 1e4};
  }
  GeneralizedEigen eig;
  try
  {
    eig = generalized_eig(model.dense_A(), model.dense_E(), 1e300);
  }
  catch (const Error &)
  {
    return {1e-2, 1e4};
  }
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
    return {1e-2, 1e2};
  }
  return {std::pow(10.0, std::floor(std::log10(lo)) - 1.0),
          std::pow(10.0, std::ceil(std::log10(hi)) + 1.0)};
}

int cmd_bode(const BodeFlags &f)
{
  std::vector<LoadedModel> models;
  models.push_back(load_named_model(f.model));
  for (const std::string &rom : f.roms)
  {
    models.push_back(load_named_model(rom));
  }
  for (const auto &lm : models)
  {
    require(lm.model.inputs() == models[0].model.inputs() &&
                lm.model.outputs() == models[0].model.outputs(),
            ErrorCode::DimensionMismatch, "model '" + lm.name + "' has different dimensions");
  }

  std::vector<double> freqs = f.freqs;
  if (freqs.empty())
  {
    auto [lo, hi] = auto_range(models[0].model);
    lo = f.wmin.value_or(lo);
    hi = f.wmax.value_or(hi);
    require(lo > 0.0 && hi > lo, ErrorCode::InvalidArgument,
            "frequency range must satisfy 0 < wmin < wmax");
    require(f.points >= 2, ErrorCode::InvalidArgument, "--points must be at least 2");
    freqs = logspace(lo, hi, f.points);
  }

  std::ofstream file;
  if (!f.out.empty())
  {
    file.open(f.out);
    require(static_cast<bool>(file), ErrorCode::IoError, "cannot write " + f.out);
  }
  std::ostream &out = f.out.empty() ? std::cout : file;

  std::vector<std::vector<MatrixXd>> mags;
  for (const auto &lm : models)
  {
    mags.push_back(bode_samples(lm.model, freqs));
  }
  out << "omega";
  for (const auto &lm : models)
  {
    for (Index i = 0; i < lm.model.outputs(); ++i)
    {
      for (Index j = 0; j < lm.model.inputs(); ++j)
      {
        out << ',' << lm.name << "_G" << i + 1 << j + 1;
      }
    }
  }
  out << '\n';
  out.precision(10);
  for (std::size_t k = 0; k < freqs.size(); ++k)
  {
    out << freqs[k];
    for (const auto &m : mags)
    {
      for (Index i = 0; i < m[k].rows(); ++i)
      {
        for (Index j = 0; j < m[k].cols(); ++j)
        {
          out << ',' << m[k](i, j);
        }
      }
    }
    out << '\n';
  }
  return kOk;
}

// --- verify ----------------------------------------------------------------

struct VerifyFlags
{
  std::string model;
  std::string rom;
  std::string data;
  std::vector<std::string> checks{"optimality"};
  double tol = 1e-6;
};

int cmd_verify(const VerifyFlags &f)
{
  const LoadedModel full = load_named_model(f.model);
  const LoadedModel rom = load_named_model(f.rom);
  require(full.model.inputs() == rom.model.inputs() &&
              full.model.outputs() == rom.model.outputs(),
          ErrorCode::DimensionMismatch, "reduced model dimensions differ from the full model");
  std::optional<InterpolationData> data;
  if (!f.data.empty())
  {
    data = io::read_data(f.data);
    require(data->inputs() == full.model.inputs() && data->outputs() == full.model.outputs(),
            ErrorCode::DimensionMismatch, "interpolation data dimensions differ from the model");
  }

  bool ok = true;
  auto table = [](const std::vector<TangentialResidual> &rows) {
    std::cout << "  index  shift                      right        left         hermite\n";
    for (const auto &r : rows)
    {
      char line[160];
      std::snprintf(line, sizeof(line), "  %-5ld  %-25s  %-11.3e  %-11.3e  %-11.3e\n",
                    static_cast<long>(r.index), format_complex(r.shift).c_str(), r.right, r.left,
                    r.hermite);
      std::cout << line;
    }
  };

  for (const std::string &check : f.checks)
  {
    if (check == "interpolation")
    {
      require(data.has_value(), ErrorCode::InvalidArgument, "interpolation check needs --data");
      const InterpolationReport rep = verify_tangential_interpolation(full.model, rom.model, *data);
      const bool pass = rep.passed(f.tol);
      ok = ok && pass;
      std::cout << "interpolation: max residual " << rep.max_residual() << " -> "
                << (pass ? "PASS" : "FAIL") << '\n';
      table(rep.entries);
    }
    else if (check == "optimality")
    {
      const OptimalityReport rep = verify_h2_optimality(full.model, rom.model);
      const bool pass = rep.passed(f.tol);
      ok = ok && pass;
      std::cout << "optimality: max residual " << rep.max_residual();
      if (rep.skipped_unstable > 0)
      {
        std::cout << ", " << rep.skipped_unstable << " unstable poles";
      }
      std::cout << " -> " << (pass ? "PASS" : "FAIL") << '\n';
      table(rep.poles);
    }
    else if (check == "equivalence")
    {
      require(data.has_value(), ErrorCode::InvalidArgument, "equivalence check needs --data");
      ShiftedSolver solver(full.model);
      const EquivalenceReport rep =
          verify_realization_equivalence(full.model, *data, rom.model, solver);
      const bool pass = rep.passed(f.tol);
      ok = ok && pass;
      std::cout << "equivalence: max deviation " << rep.max_deviation << " over "
                << rep.points.size() << " points -> " << (pass ? "PASS" : "FAIL") << '\n';
    }
  }
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"H2-optimal model order reduction of sparse descriptor systems"};
  app.require_subcommand(1);

  ReduceFlags reduce;
  CLI::App *reduce_cmd = app.add_subcommand("reduce", "reduce one model");
  reduce_cmd->add_option("--model", reduce.model, "model name or manifest path")->required();
  reduce_cmd->add_option("--r", reduce.r, "reduced order")->required();
  reduce_cmd->add_option("--algo", reduce.algo, "algorithm")
      ->check(CLI::IsMember({"irka", "cirka"}));
  reduce_cmd->add_option("--init", reduce.init, "initial data")
      ->check(CLI::IsMember({"zero", "eigs", "file"}));
  reduce_cmd->add_option("--init-file", reduce.init_file, "interpolation data JSON for --init file");
  reduce_cmd->add_option("--out-dir", reduce.out_dir, "write the reduced model and data here");
  reduce_cmd->add_flag("--no-error", reduce.no_error, "skip the H2 error computation");
  reduce_cmd->add_flag("-v,--verbose", reduce.verbose, "print iteration details");
  reduce.alg.add_to(reduce_cmd);

  BenchFlags bench;
  CLI::App *bench_cmd = app.add_subcommand("benchmark", "IRKA versus CIRKA over models and orders");
  bench_cmd->add_option("--models", bench.models, "model names or manifest paths")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--r", bench.orders, "reduced orders")->required()->delimiter(',');
  bench_cmd->add_option("--init", bench.init, "initial data")
      ->check(CLI::IsMember({"zero", "eigs"}));
  bench_cmd->add_option("--out", bench.out, "output file (default stdout)");
  bench_cmd->add_option("--format", bench.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  bench_cmd->add_flag("--compare", bench.compare, "print paired cost comparison");
  bench_cmd->add_flag("--no-error", bench.no_error, "skip H2 error computation");
  bench.alg.add_to(bench_cmd);

  BodeFlags bode;
  double wmin = 0.0;
  double wmax = 0.0;
  CLI::App *bode_cmd = app.add_subcommand("bode", "magnitude samples |G(jw)| as CSV");
  bode_cmd->add_option("--model", bode.model, "full model")->required();
  bode_cmd->add_option("--rom", bode.roms, "reduced models to include");
  CLI::Option *wmin_opt = bode_cmd->add_option("--wmin", wmin, "lowest frequency");
  CLI::Option *wmax_opt = bode_cmd->add_option("--wmax", wmax, "highest frequency");
  bode_cmd->add_option("--freq", bode.freqs, "explicit frequencies")->delimiter(',');
  bode_cmd->add_option("--points", bode.points, "number of log-spaced points");
  bode_cmd->add_option("--out", bode.out, "output file (default stdout)");

  VerifyFlags verify;
  CLI::App *verify_cmd = app.add_subcommand("verify", "check interpolation and optimality");
  verify_cmd->add_option("--model", verify.model, "full model")->required();
  verify_cmd->add_option("--rom", verify.rom, "reduced model")->required();
  verify_cmd->add_option("--data", verify.data, "interpolation data JSON");
  verify_cmd->add_option("--check", verify.checks, "checks to run")
      ->delimiter(',')
      ->check(CLI::IsMember({"interpolation", "optimality", "equivalence"}));
  verify_cmd->add_option("--tol", verify.tol, "residual threshold")->check(CLI::PositiveNumber);

  AlgorithmFlags defaults;
  CLI::App *config_cmd = app.add_subcommand("config", "print the effective default settings");
  defaults.add_to(config_cmd);

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  try
  {
    if (*reduce_cmd)
    {
      return cmd_reduce(reduce);
    }
    if (*bench_cmd)
    {
      return cmd_benchmark(bench);
    }
    if (*bode_cmd)
    {
      if (*wmin_opt)
      {
        bode.wmin = wmin;
      }
      if (*wmax_opt)
      {
        bode.wmax = wmax;
      }
      return cmd_bode(bode);
    }
    if (*verify_cmd)
    {
      return cmd_verify(verify);
    }
    if (*config_cmd)
    {
      std::cout << config_json(defaults).dump(2) << '\n';
      return kOk;
    }
  }
  catch (const Error &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return kSolverError;
  }
  return kOk;
}
