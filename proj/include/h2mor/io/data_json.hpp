// Copyright 2026 The h2mor Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef H2MOR_IO_DATA_JSON_HPP
#define H2MOR_IO_DATA_JSON_HPP

#include <fstream>
#include <string>

#include <json.hpp>

#include "h2mor/interpolation_data.hpp"

namespace h2mor::io
{

//
// Interpolation data as JSON:
//
//   { "inputs": m, "outputs": p,
//     "entries": [ { "shift": [re, im], "right": [[re, im], ...],
//                    "left": [[re, im], ...], "predecessor": -1 }, ... ] }
//
inline nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const nlohmann::json &j)
{
  require(j.is_array() && j.size() == 2, ErrorCode::ParseError,
          "complex numbers are stored as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline nlohmann::json to_json(const InterpolationData &data)
{
  nlohmann::json entries = nlohmann::json::array();
  for (Index i = 0; i < data.size(); ++i)
  {
    nlohmann::json right = nlohmann::json::array();
    nlohmann::json left = nlohmann::json::array();
    for (Index k = 0; k < data.inputs(); ++k)
    {
      right.push_back(complex_json(data.right()(k, i)));
    }
    for (Index k = 0; k < data.outputs(); ++k)
    {
      left.push_back(complex_json(data.left()(k, i)));
    }
    entries.push_back({{"shift", complex_json(data.shift(i))},
                       {"right", right},
                       {"left", left},
                       {"predecessor", data.predecessor(i)}});
  }
  return {{"inputs", data.inputs()}, {"outputs", data.outputs()}, {"entries", entries}};
}

inline InterpolationData data_from_json(const nlohmann::json &j)
{
  try
  {
    const Index m = j.at("inputs").get<Index>();
    const Index p = j.at("outputs").get<Index>();
    InterpolationData data(m, p);
    for (const auto &e : j.at("entries"))
    {
      const Index pred = e.value("predecessor", Index(-1));
      if (pred >= 0)
      {
        require(pred < data.size(), ErrorCode::ParseError,
                "predecessor must refer to an earlier entry");
        data.append_continuation(pred);
        continue;
      }
      VectorXcd r(m);
      VectorXcd l(p);
      require(e.at("right").size() == static_cast<std::size_t>(m) &&
                  e.at("left").size() == static_cast<std::size_t>(p),
              ErrorCode::DimensionMismatch, "tangent length does not match inputs/outputs");
      for (Index k = 0; k < m; ++k)
      {
        r(k) = complex_from_json(e["right"][static_cast<std::size_t>(k)]);
      }
      for (Index k = 0; k < p; ++k)
      {
        l(k) = complex_from_json(e["left"][static_cast<std::size_t>(k)]);
      }
      data.append_head(complex_from_json(e.at("shift")), r, l);
    }
    return data;
  }
  catch (const nlohmann::json::exception &e)
  {
    fail(ErrorCode::ParseError, std::string("malformed interpolation data: ") + e.what());
  }
}

inline void write_data(const std::string &path, const InterpolationData &data)
{
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorCode::IoError, "cannot write " + path);
  out << to_json(data).dump(2) << '\n';
}

inline InterpolationData read_data(const std::string &path)
{
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::IoError, "cannot open " + path);
  nlohmann::json j;
  try
  {
    in >> j;
  }
  catch (const nlohmann::json::exception &e)
  {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
  return data_from_json(j);
}

}  // namespace h2mor::io

#endif  // H2MOR_IO_DATA_JSON_HPP
