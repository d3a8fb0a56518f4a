// Copyright 2026 The h2mor Authors.
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "h2mor/io/data_json.hpp"
#include "h2mor/io/manifest.hpp"
#include "h2mor/io/matrix_market.hpp"
#include "h2mor/io/results.hpp"
#include "support/expect_error.hpp"
#include "support/random_models.hpp"

namespace h2mor
{
namespace
{

namespace fs = std::filesystem;
using namespace io;

class IoTest : public ::testing::Test
{
protected:
  void SetUp() override
  {
    const char *base = std::getenv("H2MOR_TEST_TMP");
    dir_ = fs::path(base ? base : fs::temp_directory_path().string()) /
           ("io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string &name, const std::string &text) const
  {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

TEST_F(IoTest, CoordinateGeneral)
{
  const std::string p = write("a.mtx",
                              "%%MatrixMarket matrix coordinate real general\n"
                              "% comment\n"
                              "2 2 3\n"
                              "1 1 1.5\n"
                              "2 1 -2\n"
                              "2 2 4e-1\n");
  const MatrixXd M = MatrixXd(read_matrix_market(p));
  MatrixXd expected(2, 2);
  expected << 1.5, 0.0, -2.0, 0.4;
  EXPECT_EQ(M, expected);
}

TEST_F(IoTest, SymmetricExpandsLowerTriangle)
{
  const std::string p = write("s.mtx",
                              "%%MatrixMarket matrix coordinate real symmetric\n"
                              "2 2 2\n"
                              "1 1 1\n"
                              "2 1 3\n");
  const MatrixXd M = MatrixXd(read_matrix_market(p));
  EXPECT_EQ(M(0, 1), 3.0);
  EXPECT_EQ(M(1, 0), 3.0);
  EXPECT_EQ(M(1, 1), 0.0);
}

TEST_F(IoTest, ArrayLayoutIsColumnMajor)
{
  const std::string p = write("b.mtx",
                              "%%MatrixMarket matrix array real general\n"
                              "2 2\n1\n2\n3\n4\n");
  const MatrixXd M = read_dense_matrix_market(p);
  EXPECT_EQ(M(1, 0), 2.0);
  EXPECT_EQ(M(0, 1), 3.0);
}

TEST_F(IoTest, TruncatedFileNamesLine)
{
  const std::string p = write("t.mtx",
                              "%%MatrixMarket matrix coordinate real general\n"
                              "2 2 3\n"
                              "1 1 1.0\n"
                              "2 x 1.0\n");
  try
  {
    read_matrix_market(p);
    FAIL() << "no exception";
  }
  catch (const Error &e)
  {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find(":4:"), std::string::npos) << e.what();
  }
  const std::string short_file = write("u.mtx",
                                       "%%MatrixMarket matrix coordinate real general\n"
                                       "2 2 3\n"
                                       "1 1 1.0\n");
  EXPECT_H2MOR_ERROR(read_matrix_market(short_file), ErrorCode::ParseError);
}

TEST_F(IoTest, UnsupportedFields)
{
  EXPECT_H2MOR_ERROR(read_matrix_market(write("c.mtx",
                                              "%%MatrixMarket matrix coordinate complex general\n"
                                              "1 1 1\n1 1 1 0\n")),
                     ErrorCode::UnsupportedField);
  EXPECT_H2MOR_ERROR(read_matrix_market(write("p.mtx",
                                              "%%MatrixMarket matrix coordinate pattern general\n"
                                              "1 1 1\n1 1\n")),
                     ErrorCode::UnsupportedField);
  EXPECT_H2MOR_ERROR(read_matrix_market((dir_ / "missing.mtx").string()), ErrorCode::IoError);
}

TEST_F(IoTest, MatrixMarketRoundTrip)
{
  const StateSpaceModel m = testing::random_model(30, 2, 3, 5);
  const std::string a = (dir_ / "A.mtx").string();
  const std::string b = (dir_ / "B.mtx").string();
  write_matrix_market(a, m.A());
  write_matrix_market(b, m.B());
  EXPECT_EQ(MatrixXd(read_matrix_market(a)), MatrixXd(m.A()));
  EXPECT_EQ(read_dense_matrix_market(b), m.B());
}

TEST_F(IoTest, ManifestRoundTrip)
{
  const StateSpaceModel m = testing::random_model(12, 2, 1, 3);
  const fs::path manifest = write_model(dir_, "toy", m, "test model");
  const ModelManifest info = read_manifest(manifest);
  EXPECT_EQ(info.name, "toy");
  EXPECT_EQ(info.n, 12);
  EXPECT_EQ(info.notes, "test model");
  EXPECT_TRUE(info.files_present());
  const StateSpaceModel back = load_model(manifest);
  EXPECT_EQ(MatrixXd(back.A()), MatrixXd(m.A()));
  EXPECT_EQ(MatrixXd(back.E()), MatrixXd(m.E()));
  EXPECT_EQ(back.B(), m.B());
  EXPECT_EQ(back.C(), m.C());
}

TEST_F(IoTest, ManifestDefaultsAndMismatch)
{
  const StateSpaceModel m = testing::random_model(4, 1, 1, 3);
  write_matrix_market((dir_ / "A.mtx").string(), m.A());
  write_matrix_market((dir_ / "B.mtx").string(), m.B());
  write_matrix_market((dir_ / "C.mtx").string(), m.C());
  const std::string ok = write("ok.json", R"({"A":"A.mtx","B":"B.mtx","C":"C.mtx","n":4,"m":1,"p":1})");
  const StateSpaceModel loaded = load_model(fs::path(ok));
  EXPECT_EQ(MatrixXd(loaded.E()), MatrixXd::Identity(4, 4));
  EXPECT_EQ(loaded.D(), MatrixXd::Zero(1, 1));
  EXPECT_EQ(read_manifest(ok).name, "ok");

  const std::string wide =
      write("wide.json", R"({"A":"A.mtx","B":"B.mtx","C":"C.mtx","n":4,"m":2,"p":1})");
  EXPECT_H2MOR_ERROR(load_model(fs::path(wide)), ErrorCode::DimensionMismatch);
  const std::string missing = write("bad.json", R"({"A":"A.mtx","C":"C.mtx","n":4,"m":1,"p":1})");
  EXPECT_H2MOR_ERROR(read_manifest(missing), ErrorCode::ParseError);
  const std::string absent =
      write("absent.json", R"({"A":"nope.mtx","B":"B.mtx","C":"C.mtx","n":4,"m":1,"p":1})");
  EXPECT_FALSE(read_manifest(absent).files_present());
  EXPECT_H2MOR_ERROR(load_model(fs::path(absent)), ErrorCode::IoError);
}

TEST_F(IoTest, ManifestLookup)
{
  write_model(dir_, "toy", testing::random_model(4, 1, 1, 3));
  const std::vector<fs::path> dirs{dir_ / "none", dir_};
  ASSERT_TRUE(find_manifest("toy", dirs).has_value());
  EXPECT_EQ(*find_manifest("toy", dirs), dir_ / "toy.json");
  EXPECT_FALSE(find_manifest("other", dirs).has_value());
  EXPECT_EQ(list_manifests(dirs), std::vector<std::string>{"toy"});
}

io::BenchmarkRow sample_row(const std::string &algo)
{
  io::BenchmarkRow row;
  row.model = "toy";
  row.algorithm = algo;
  row.r = 4;
  row.k_outer = 3;
  row.k_inner_total = algo == "irka" ? 3 : 17;
  row.n_lu_full = 9;
  row.time_s = 0.123456789;
  row.rel_h2_error = 1.0 / 3.0;
  row.converged = true;
  row.init = "zero";
  if (algo == "cirka")
  {
    row.n_lu_surrogate = 40;
    row.rel_h2_estimate = 2.5e-5;
    row.model_function_growth = 12;
  }
  return row;
}

TEST(Results, CsvSchema)
{
  std::ostringstream out;
  io::write_csv(out, {sample_row("irka"), sample_row("cirka")});
  std::istringstream in(out.str());
  std::string header, irka, cirka;
  std::getline(in, header);
  std::getline(in, irka);
  std::getline(in, cirka);
  EXPECT_EQ(header, io::kCsvHeader);
  EXPECT_EQ(irka, "toy,irka,4,3,3,9,,0.123457,0.333333,,true,zero");
  EXPECT_EQ(cirka, "toy,cirka,4,3,17,9,40,0.123457,0.333333,2.50000e-05,true,zero");
}

TEST(Results, FormatNumber)
{
  EXPECT_EQ(io::format_number(0.0), "0");
  EXPECT_EQ(io::format_number(1234567.0), "1.23457e+06");
  EXPECT_EQ(io::format_number(0.5), "0.5");
  EXPECT_EQ(io::format_number(-1.234567e-7), "-1.23457e-07");
}

TEST_F(IoTest, JsonRoundTripIsExact)
{
  const std::vector<io::BenchmarkRow> rows{sample_row("irka"), sample_row("cirka")};
  const std::string path = (dir_ / "rows.json").string();
  io::write_results(rows, io::ResultFormat::json, path);
  EXPECT_EQ(io::read_results_json(path), rows);
}

TEST_F(IoTest, ResultErrors)
{
  EXPECT_H2MOR_ERROR(io::write_results({}, io::ResultFormat::csv, (dir_ / "no/such/x.csv").string()),
                     ErrorCode::IoError);
  EXPECT_H2MOR_ERROR(io::read_results_json(write("bad.json", "{\"a\": 1}")), ErrorCode::ParseError);
  EXPECT_H2MOR_ERROR(io::read_results_json(write("junk.json", "[{")), ErrorCode::ParseError);
}

TEST_F(IoTest, InterpolationDataRoundTrip)
{
  InterpolationData d = testing::random_data(4, 2, 3, 9);
  d.append_continuation(1);
  const std::string path = (dir_ / "data.json").string();
  io::write_data(path, d);
  const InterpolationData back = io::read_data(path);
  ASSERT_EQ(back.size(), d.size());
  EXPECT_EQ(back.shifts(), d.shifts());
  EXPECT_EQ(back.right(), d.right());
  EXPECT_EQ(back.left(), d.left());
  EXPECT_EQ(back.predecessor(4), 1);
}

}  // namespace
}  // namespace h2mor
