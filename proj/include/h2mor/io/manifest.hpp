// Copyright 2026 The h2mor Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef H2MOR_IO_MANIFEST_HPP
#define H2MOR_IO_MANIFEST_HPP

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "h2mor/io/matrix_market.hpp"
#include "h2mor/model.hpp"

namespace h2mor::io
{

namespace fs = std::filesystem;

//
// JSON model description:
//
//   { "name": "beam", "E": "beam_E.mtx", "A": "beam_A.mtx", "B": "beam_B.mtx",
//     "C": "beam_C.mtx", "D": null, "n": 348, "m": 1, "p": 1, "notes": "..." }
//
// Matrix paths are relative to the manifest's directory. A missing E means
// the identity, a missing D means zero.
//
struct ModelManifest
{
  std::string name;
  fs::path directory;
  std::optional<std::string> E;
  std::string A;
  std::string B;
  std::string C;
  std::optional<std::string> D;
  Index n = 0;
  Index m = 0;
  Index p = 0;
  std::string notes;

  fs::path resolve(const std::string &file) const
  {
    const fs::path f(file);
    return f.is_absolute() ? f : directory / f;
  }

  // True when every referenced matrix file exists.
  bool files_present() const
  {
    for (const std::string *f : {&A, &B, &C})
    {
      if (!fs::exists(resolve(*f)))
      {
        return false;
      }
    }
    return (!E || fs::exists(resolve(*E))) && (!D || fs::exists(resolve(*D)));
  }
};

inline ModelManifest read_manifest(const fs::path &path)
{
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::IoError, "cannot open manifest " + path.string());
  nlohmann::json j;
  try
  {
    in >> j;
  }
  catch (const nlohmann::json::exception &e)
  {
    fail(ErrorCode::ParseError, path.string() + ": " + e.what());
  }

  auto text = [&](const char *key, bool required) -> std::optional<std::string> {
    if (!j.contains(key) || j[key].is_null())
    {
      require(!required, ErrorCode::ParseError,
              path.string() + ": missing field '" + std::string(key) + "'");
      return std::nullopt;
    }
    require(j[key].is_string(), ErrorCode::ParseError,
            path.string() + ": field '" + std::string(key) + "' must be a string");
    return j[key].get<std::string>();
  };
  auto count = [&](const char *key) -> Index {
    require(j.contains(key) && j[key].is_number_integer() && j[key].get<long>() > 0,
            ErrorCode::ParseError,
            path.string() + ": field '" + std::string(key) + "' must be a positive integer");
    return static_cast<Index>(j[key].get<long>());
  };

  ModelManifest m;
  m.directory = path.parent_path();
  m.name = text("name", false).value_or(path.stem().string());
  m.E = text("E", false);
  m.A = *text("A", true);
  m.B = *text("B", true);
  m.C = *text("C", true);
  m.D = text("D", false);
  m.n = count("n");
  m.m = count("m");
  m.p = count("p");
  m.notes = text("notes", false).value_or("");
  return m;
}

inline StateSpaceModel load_model(const ModelManifest &manifest)
{
  auto check = [&](const char *what, Index rows, Index cols, Index er, Index ec) {
    require(rows == er && cols == ec, ErrorCode::DimensionMismatch,
            manifest.name + ": " + what + " is " + shape_string(rows, cols) + ", expected " +
                shape_string(er, ec));
  };
  const Index n = manifest.n;
  SparseMatrix A = read_matrix_market(manifest.resolve(manifest.A).string());
  check("A", A.rows(), A.cols(), n, n);
  SparseMatrix E = manifest.E ? read_matrix_market(manifest.resolve(*manifest.E).string())
                              : sparse_identity(n);
  check("E", E.rows(), E.cols(), n, n);
  MatrixXd B = read_dense_matrix_market(manifest.resolve(manifest.B).string());
  check("B", B.rows(), B.cols(), n, manifest.m);
  MatrixXd C = read_dense_matrix_market(manifest.resolve(manifest.C).string());
  check("C", C.rows(), C.cols(), manifest.p, n);
  std::optional<MatrixXd> D;
  if (manifest.D)
  {
    D = read_dense_matrix_market(manifest.resolve(*manifest.D).string());
    check("D", D->rows(), D->cols(), manifest.p, manifest.m);
  }
  return make_model(std::move(E), std::move(A), std::move(B), std::move(C), std::move(D));
}

inline StateSpaceModel load_model(const fs::path &manifest_path)
{
  return load_model(read_manifest(manifest_path));
}

// Writes all matrices next to a manifest named <name>.json in `dir`.
inline fs::path write_model(const fs::path &dir, const std::string &name,
                            const StateSpaceModel &model, const std::string &notes = "")
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  require(!ec, ErrorCode::IoError, "cannot create directory " + dir.string());
  const std::string stem = name + "_";
  write_matrix_market((dir / (stem + "E.mtx")).string(), model.E());
  write_matrix_market((dir / (stem + "A.mtx")).string(), model.A());
  write_matrix_market((dir / (stem + "B.mtx")).string(), model.B());
  write_matrix_market((dir / (stem + "C.mtx")).string(), model.C());
  write_matrix_market((dir / (stem + "D.mtx")).string(), model.D());

  nlohmann::json j = {{"name", name},
                      {"E", stem + "E.mtx"},
                      {"A", stem + "A.mtx"},
                      {"B", stem + "B.mtx"},
                      {"C", stem + "C.mtx"},
                      {"D", stem + "D.mtx"},
                      {"n", model.order()},
                      {"m", model.inputs()},
                      {"p", model.outputs()},
                      {"notes", notes}};
  const fs::path path = dir / (name + ".json");
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorCode::IoError, "cannot write " + path.string());
  out << j.dump(2) << '\n';
  return path;
}

//
// Manifest lookup. Directories come from the colon-separated H2MOR_MODEL_PATH
// environment variable followed by `defaults`.
//
inline std::vector<fs::path> manifest_search_path(const std::vector<fs::path> &defaults = {})
{
  std::vector<fs::path> dirs;
  if (const char *env = std::getenv("H2MOR_MODEL_PATH"))
  {
    std::string s(env);
    std::size_t start = 0;
    while (start <= s.size())
    {
      const std::size_t end = std::min(s.find(':', start), s.size());
      if (end > start)
      {
        dirs.emplace_back(s.substr(start, end - start));
      }
      start = end + 1;
    }
  }
  dirs.insert(dirs.end(), defaults.begin(), defaults.end());
  return dirs;
}

// Resolves a manifest file path or a registered model name.
inline std::optional<fs::path> find_manifest(const std::string &name_or_path,
                                             const std::vector<fs::path> &dirs)
{
  const fs::path direct(name_or_path);
  if (fs::is_regular_file(direct))
  {
    return direct;
  }
  for (const fs::path &dir : dirs)
  {
    const fs::path candidate = dir / (name_or_path + ".json");
    if (fs::is_regular_file(candidate))
    {
      return candidate;
    }
  }
  return std::nullopt;
}

inline std::vector<std::string> list_manifests(const std::vector<fs::path> &dirs)
{
  std::set<std::string> names;
  for (const fs::path &dir : dirs)
  {
    std::error_code ec;
    if (!fs::is_directory(dir, ec))
    {
      continue;
    }
    for (const auto &entry : fs::directory_iterator(dir, ec))
    {
      if (entry.path().extension() == ".json")
      {
        names.insert(entry.path().stem().string());
      }
    }
  }
  return {names.begin(), names.end()};
}

}  // namespace h2mor::io

#endif  // H2MOR_IO_MANIFEST_HPP
