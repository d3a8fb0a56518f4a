// Copyright 2026 The h2mor Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef H2MOR_IO_MATRIX_MARKET_HPP
#define H2MOR_IO_MATRIX_MARKET_HPP

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "h2mor/model.hpp"

namespace h2mor::io
{

//
// Matrix Market reader for real and integer matrices in coordinate or array
// layout, general or symmetric. Symmetric storage is expanded, duplicate
// coordinate entries are summed.
//
namespace detail
{

inline std::string lower(std::string s)
{
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

inline bool blank_or_comment(const std::string &line)
{
  for (char c : line)
  {
    if (c == '%')
    {
      return true;
    }
    if (!std::isspace(static_cast<unsigned char>(c)))
    {
      return false;
    }
  }
  return true;
}

[[noreturn]] inline void parse_error(const std::string &path, long line, const std::string &what)
{
  fail(ErrorCode::ParseError, path + ":" + std::to_string(line) + ": " + what);
}

inline double parse_value(const std::string &token, const std::string &path, long line)
{
  errno = 0;
  char *end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0' || errno == ERANGE)
  {
    parse_error(path, line, "invalid number '" + token + "'");
  }
  return v;
}

inline long parse_index(const std::string &token, const std::string &path, long line)
{
  char *end = nullptr;
  const long v = std::strtol(token.c_str(), &end, 10);
  if (end == token.c_str() || *end != '\0')
  {
    parse_error(path, line, "invalid index '" + token + "'");
  }
  return v;
}

}  // namespace detail

inline SparseMatrix read_matrix_market(const std::string &path)
{
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::IoError, "cannot open " + path);

  std::string line;
  long lineno = 0;
  if (!std::getline(in, line))
  {
    detail::parse_error(path, 1, "empty file");
  }
  ++lineno;
  std::istringstream header(line);
  std::string banner, object, layout, field, symmetry;
  header >> banner >> object >> layout >> field >> symmetry;
  if (banner != "%%MatrixMarket" || detail::lower(object) != "matrix")
  {
    detail::parse_error(path, lineno, "missing %%MatrixMarket matrix header");
  }
  layout = detail::lower(layout);
  field = detail::lower(field);
  symmetry = detail::lower(symmetry);
  if (field == "complex" || field == "pattern")
  {
    fail(ErrorCode::UnsupportedField, path + ": field '" + field + "' is not supported");
  }
  if (field != "real" && field != "integer" && field != "double")
  {
    detail::parse_error(path, lineno, "unknown field '" + field + "'");
  }
  if (layout != "coordinate" && layout != "array")
  {
    detail::parse_error(path, lineno, "unknown layout '" + layout + "'");
  }
  if (symmetry != "general" && symmetry != "symmetric")
  {
    fail(ErrorCode::UnsupportedField, path + ": symmetry '" + symmetry + "' is not supported");
  }
  const bool symmetric = symmetry == "symmetric";

  auto next_line = [&](std::vector<std::string> &tokens) {
    while (std::getline(in, line))
    {
      ++lineno;
      if (detail::blank_or_comment(line))
      {
        continue;
      }
      tokens.clear();
      std::istringstream ss(line);
      std::string t;
      while (ss >> t)
      {
        tokens.push_back(t);
      }
      return true;
    }
    return false;
  };

  std::vector<std::string> tok;
  if (!next_line(tok))
  {
    detail::parse_error(path, lineno + 1, "missing size line");
  }
  const long rows = detail::parse_index(tok[0], path, lineno);
  const long cols = tok.size() > 1 ? detail::parse_index(tok[1], path, lineno) : -1;
  if (rows < 0 || cols < 0 || (layout == "coordinate" && tok.size() != 3) ||
      (layout == "array" && tok.size() != 2))
  {
    detail::parse_error(path, lineno, "malformed size line");
  }
  if (symmetric && rows != cols)
  {
    detail::parse_error(path, lineno, "symmetric matrix must be square");
  }

  std::vector<Eigen::Triplet<double>> entries;
  if (layout == "coordinate")
  {
    const long nnz = detail::parse_index(tok[2], path, lineno);
    entries.reserve(static_cast<std::size_t>(symmetric ? 2 * nnz : nnz));
    for (long k = 0; k < nnz; ++k)
    {
      if (!next_line(tok))
      {
        detail::parse_error(path, lineno + 1,
                            "expected " + std::to_string(nnz) + " entries, found " +
                                std::to_string(k));
      }
      if (tok.size() != 3)
      {
        detail::parse_error(path, lineno, "expected 'row col value'");
      }
      const long i = detail::parse_index(tok[0], path, lineno);
      const long j = detail::parse_index(tok[1], path, lineno);
      const double v = detail::parse_value(tok[2], path, lineno);
      if (i < 1 || i > rows || j < 1 || j > cols)
      {
        detail::parse_error(path, lineno, "index out of range");
      }
      entries.emplace_back(i - 1, j - 1, v);
      if (symmetric && i != j)
      {
        entries.emplace_back(j - 1, i - 1, v);
      }
    }
  }
  else
  {
    // Column-major values; symmetric arrays store the lower triangle only.
    for (long j = 0; j < cols; ++j)
    {
      for (long i = symmetric ? j : 0; i < rows; ++i)
      {
        if (!next_line(tok))
        {
          detail::parse_error(path, lineno + 1, "array data ends early");
        }
        if (tok.size() != 1)
        {
          detail::parse_error(path, lineno, "expected one value per line");
        }
        const double v = detail::parse_value(tok[0], path, lineno);
        if (v != 0.0)
        {
          entries.emplace_back(i, j, v);
          if (symmetric && i != j)
          {
            entries.emplace_back(j, i, v);
          }
        }
      }
    }
  }
  if (next_line(tok))
  {
    detail::parse_error(path, lineno, "unexpected data after the last entry");
  }

  SparseMatrix M(rows, cols);
  M.setFromTriplets(entries.begin(), entries.end());
  M.makeCompressed();
  return M;
}

inline MatrixXd read_dense_matrix_market(const std::string &path)
{
  return MatrixXd(read_matrix_market(path));
}

namespace detail
{

inline std::string format_exact(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::ofstream open_for_write(const std::string &path)
{
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorCode::IoError, "cannot write " + path);
  return out;
}

}  // namespace detail

// Coordinate/real/general output with round-trip precision.
inline void write_matrix_market(const std::string &path, const SparseMatrix &M)
{
  std::ofstream out = detail::open_for_write(path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << M.rows() << ' ' << M.cols() << ' ' << M.nonZeros() << '\n';
  for (Index k = 0; k < M.outerSize(); ++k)
  {
    for (SparseMatrix::InnerIterator it(M, k); it; ++it)
    {
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << detail::format_exact(it.value())
          << '\n';
    }
  }
  require(static_cast<bool>(out), ErrorCode::IoError, "write failed for " + path);
}

// Array/real/general output (column-major).
inline void write_matrix_market(const std::string &path, const MatrixXd &M)
{
  std::ofstream out = detail::open_for_write(path);
  out << "%%MatrixMarket matrix array real general\n";
  out << M.rows() << ' ' << M.cols() << '\n';
  for (Index j = 0; j < M.cols(); ++j)
  {
    for (Index i = 0; i < M.rows(); ++i)
    {
      out << detail::format_exact(M(i, j)) << '\n';
    }
  }
  require(static_cast<bool>(out), ErrorCode::IoError, "write failed for " + path);
}

}  // namespace h2mor::io

#endif  // H2MOR_IO_MATRIX_MARKET_HPP
