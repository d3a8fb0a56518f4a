// Copyright 2026 The h2mor Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef H2MOR_IO_RESULTS_HPP
#define H2MOR_IO_RESULTS_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "h2mor/model.hpp"

namespace h2mor::io
{

// One table row: a single reduction of one model at one order.
struct BenchmarkRow
{
  std::string model;
  std::string algorithm;  // "irka" or "cirka"
  Index r = 0;
  Index k_outer = 0;        // k_IRKA, or k_CIRKA
  Index k_inner_total = 0;  // k_IRKA, or the sum of inner IRKA steps
  Index n_lu_full = 0;
  std::optional<Index> n_lu_surrogate;
  double time_s = 0.0;
  std::optional<double> rel_h2_error;
  std::optional<double> rel_h2_estimate;
  bool converged = false;
  std::string init;

  // Not part of the CSV schema.
  Index n_lu_full_unrecycled = 0;
  std::optional<Index> model_function_growth;
  bool fallback = false;
  std::string error;

  bool operator==(const BenchmarkRow &) const = default;
};

inline void sort_rows(std::vector<BenchmarkRow> &rows)
{
  std::stable_sort(rows.begin(), rows.end(), [](const BenchmarkRow &a, const BenchmarkRow &b) {
    return std::tie(a.model, a.r, a.algorithm) < std::tie(b.model, b.r, b.algorithm);
  });
}

inline constexpr const char *kCsvHeader =
    "model,algorithm,r,k_outer,k_inner_total,n_lu_full,n_lu_surrogate,time_s,rel_h2_error,"
    "rel_h2_estimate,converged,init";

// Six significant digits; scientific notation below 1e-3 in magnitude.
inline std::string format_number(double x)
{
  char buf[40];
  if (x != 0.0 && std::abs(x) < 1e-3)
  {
    std::snprintf(buf, sizeof(buf), "%.5e", x);
  }
  else
  {
    std::snprintf(buf, sizeof(buf), "%.6g", x);
  }
  return buf;
}

inline void write_csv(std::ostream &out, const std::vector<BenchmarkRow> &rows)
{
  auto opt_num = [](const std::optional<double> &v) { return v ? format_number(*v) : ""; };
  out << kCsvHeader << '\n';
  for (const BenchmarkRow &row : rows)
  {
    out << row.model << ',' << row.algorithm << ',' << row.r << ',' << row.k_outer << ','
        << row.k_inner_total << ',' << row.n_lu_full << ','
        << (row.n_lu_surrogate ? std::to_string(*row.n_lu_surrogate) : "") << ','
        << format_number(row.time_s) << ',' << opt_num(row.rel_h2_error) << ','
        << opt_num(row.rel_h2_estimate) << ',' << (row.converged ? "true" : "false") << ','
        << row.init << '\n';
  }
}

inline nlohmann::json to_json(const BenchmarkRow &row)
{
  nlohmann::json j;
  j["model"] = row.model;
  j["algorithm"] = row.algorithm;
  j["r"] = row.r;
  j["k_outer"] = row.k_outer;
  j["k_inner_total"] = row.k_inner_total;
  j["n_lu_full"] = row.n_lu_full;
  j["n_lu_surrogate"] = row.n_lu_surrogate ? nlohmann::json(*row.n_lu_surrogate) : nullptr;
  j["time_s"] = row.time_s;
  j["rel_h2_error"] = row.rel_h2_error ? nlohmann::json(*row.rel_h2_error) : nullptr;
  j["rel_h2_estimate"] = row.rel_h2_estimate ? nlohmann::json(*row.rel_h2_estimate) : nullptr;
  j["converged"] = row.converged;
  j["init"] = row.init;
  j["n_lu_full_unrecycled"] = row.n_lu_full_unrecycled;
  j["model_function_growth"] =
      row.model_function_growth ? nlohmann::json(*row.model_function_growth) : nullptr;
  j["fallback"] = row.fallback;
  j["error"] = row.error;
  return j;
}

inline BenchmarkRow row_from_json(const nlohmann::json &j)
{
  try
  {
    BenchmarkRow row;
    row.model = j.at("model").get<std::string>();
    row.algorithm = j.at("algorithm").get<std::string>();
    row.r = j.at("r").get<Index>();
    row.k_outer = j.at("k_outer").get<Index>();
    row.k_inner_total = j.at("k_inner_total").get<Index>();
    row.n_lu_full = j.at("n_lu_full").get<Index>();
    if (!j.at("n_lu_surrogate").is_null())
    {
      row.n_lu_surrogate = j["n_lu_surrogate"].get<Index>();
    }
    row.time_s = j.at("time_s").get<double>();
    if (!j.at("rel_h2_error").is_null())
    {
      row.rel_h2_error = j["rel_h2_error"].get<double>();
    }
    if (!j.at("rel_h2_estimate").is_null())
    {
      row.rel_h2_estimate = j["rel_h2_estimate"].get<double>();
    }
    row.converged = j.at("converged").get<bool>();
    row.init = j.at("init").get<std::string>();
    row.n_lu_full_unrecycled = j.value("n_lu_full_unrecycled", Index(0));
    if (j.contains("model_function_growth") && !j["model_function_growth"].is_null())
    {
      row.model_function_growth = j["model_function_growth"].get<Index>();
    }
    row.fallback = j.value("fallback", false);
    row.error = j.value("error", std::string());
    return row;
  }
  catch (const nlohmann::json::exception &e)
  {
    fail(ErrorCode::ParseError, std::string("malformed result row: ") + e.what());
  }
}

// JSON keeps full double precision so that rows round-trip exactly.
inline void write_json(std::ostream &out, const std::vector<BenchmarkRow> &rows)
{
  nlohmann::json j = nlohmann::json::array();
  for (const BenchmarkRow &row : rows)
  {
    j.push_back(to_json(row));
  }
  out << j.dump(2) << '\n';
}

inline std::vector<BenchmarkRow> read_json_rows(std::istream &in)
{
  nlohmann::json j;
  try
  {
    in >> j;
  }
  catch (const nlohmann::json::exception &e)
  {
    fail(ErrorCode::ParseError, e.what());
  }
  require(j.is_array(), ErrorCode::ParseError, "result file must hold an array of rows");
  std::vector<BenchmarkRow> rows;
  for (const auto &item : j)
  {
    rows.push_back(row_from_json(item));
  }
  return rows;
}

enum class ResultFormat
{
  csv,
  json,
};

inline void write_results(const std::vector<BenchmarkRow> &rows, ResultFormat format,
                          const std::string &path)
{
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorCode::IoError, "cannot write " + path);
  if (format == ResultFormat::csv)
  {
    write_csv(out, rows);
  }
  else
  {
    write_json(out, rows);
  }
  out.flush();
  require(static_cast<bool>(out), ErrorCode::IoError, "write failed for " + path);
}

inline std::vector<BenchmarkRow> read_results_json(const std::string &path)
{
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::IoError, "cannot open " + path);
  return read_json_rows(in);
}

}  // namespace h2mor::io

#endif  // H2MOR_IO_RESULTS_HPP
