// Copyright 2026 The h2mor Authors.
// SPDX-License-Identifier: Apache-2.0

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "h2mor/io/data_json.hpp"
#include "h2mor/io/manifest.hpp"
#include "h2mor/io/results.hpp"
#include "h2mor/irka.hpp"
#include "support/random_models.hpp"

namespace h2mor
{
namespace
{

namespace fs = std::filesystem;

struct CliRun
{
  int code = -1;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test
{
protected:
  static void SetUpTestSuite()
  {
    dir_ = fs::path(H2MOR_TEST_TMP) / "cli";
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    full_ = io::write_model(dir_, "toy", testing::random_model(40, 1, 1, 2));
    lag_ = io::write_model(dir_, "lag", testing::lag_model());
  }

  static CliRun run(const std::string &args)
  {
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = std::string(H2MOR_CLI_PATH) + " " + args + " >" + out.string() +
                            " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ostringstream o, e;
    o << std::ifstream(out).rdbuf();
    e << std::ifstream(err).rdbuf();
    r.out = o.str();
    r.err = e.str();
    return r;
  }

  static inline fs::path dir_;
  static inline fs::path full_;
  static inline fs::path lag_;
};

TEST_F(CliTest, ConfigPrintsDefaults)
{
  const CliRun r = run("config");
  ASSERT_EQ(r.code, 0) << r.err;
  const nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["irka"]["tol"], 1e-3);
  EXPECT_EQ(j["irka"]["maxiter"], 50);
  EXPECT_EQ(j["irka"]["stop_criterion"], "s0");
  EXPECT_EQ(j["cirka"]["init_strategy"], "I2");
  EXPECT_EQ(j["cirka"]["update_strategy"], "U2");
  EXPECT_EQ(j["cirka"]["stop_criterion"], "s0+tanDir");
  EXPECT_EQ(j["cirka"]["max_model_order"], "n/2");
  EXPECT_EQ(j["cirka"]["initial_nM"], "2r");

  const CliRun changed = run("config --tol 1e-6 --update-strategy U3");
  const nlohmann::json k = nlohmann::json::parse(changed.out);
  EXPECT_EQ(k["irka"]["tol"], 1e-6);
  EXPECT_EQ(k["cirka"]["update_strategy"], "U3");
}

TEST_F(CliTest, InputErrors)
{
  EXPECT_EQ(run("reduce --model " + full_.string() + " --r 0").code, 1);
  EXPECT_EQ(run("reduce --model " + full_.string() + " --r 40").code, 1);
  EXPECT_EQ(run("reduce --model " + full_.string() + " --r 2 --tol -1").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);

  const CliRun unknown = run("reduce --model nosuchmodel --r 2");
  EXPECT_EQ(unknown.code, 1);
  EXPECT_NE(unknown.err.find("registered"), std::string::npos) << unknown.err;
  EXPECT_NE(unknown.err.find("cdplayer"), std::string::npos) << unknown.err;

  // Registered benchmark manifests without their matrix files.
  const CliRun missing = run("reduce --model beam --r 2");
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("missing"), std::string::npos) << missing.err;
}

TEST_F(CliTest, ReduceWritesOutputs)
{
  const fs::path out = dir_ / "reduce";
  const CliRun r = run("reduce --model " + full_.string() + " --r 2 --algo irka --out-dir " +
                    out.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("converged"), std::string::npos);
  EXPECT_TRUE(fs::exists(out / "toy_irka_r2.json"));
  EXPECT_TRUE(fs::exists(out / "toy_irka_r2_optimal.json"));
  const nlohmann::json summary =
      nlohmann::json::parse(std::ifstream(out / "toy_irka_r2_result.json"));
  EXPECT_EQ(summary["r"], 2);
  EXPECT_EQ(io::load_model(out / "toy_irka_r2.json").order(), 2);
}

TEST_F(CliTest, BodeLag)
{
  const CliRun r = run("bode --model " + lag_.string() + " --freq 1,10");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  EXPECT_EQ(header, "omega,lag_G11");
  EXPECT_EQ(first.substr(0, 9), "1,0.70710");
  EXPECT_EQ(run("bode --model " + lag_.string() + " --wmin 10 --wmax 1").code, 1);
}

TEST_F(CliTest, VerifyExitCodes)
{
  const StateSpaceModel m = io::load_model(full_);
  IrkaOptions o;
  o.tol = 1e-10;
  o.max_iter = 300;
  const IrkaResult res = irka(m, zero_chain(4, 1, 1), o);
  ASSERT_TRUE(res.converged);
  const fs::path rom = io::write_model(dir_, "rom", res.rom);
  const fs::path data = dir_ / "rom_data.json";
  io::write_data(data.string(), res.rom_data);

  const CliRun ok = run("verify --model " + full_.string() + " --rom " + rom.string() + " --data " +
                     data.string() + " --check optimality,interpolation,equivalence");
  EXPECT_EQ(ok.code, 0) << ok.out << ok.err;
  EXPECT_NE(ok.out.find("optimality"), std::string::npos);

  const StateSpaceModel &r = res.rom;
  const fs::path bad = io::write_model(
      dir_, "bad", make_dense_model(r.dense_E(), 1.01 * r.dense_A(), r.B(), r.C(), r.D()));
  EXPECT_EQ(run("verify --model " + full_.string() + " --rom " + bad.string()).code, 3);

  const fs::path wide = io::write_model(dir_, "wide", testing::random_model(4, 2, 1, 1));
  EXPECT_EQ(run("verify --model " + full_.string() + " --rom " + wide.string()).code, 1);
}

TEST_F(CliTest, BenchmarkCsv)
{
  const CliRun r = run("benchmark --models " + full_.string() + " --r 2 --compare");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string header, row1, row2;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  EXPECT_EQ(header, io::kCsvHeader);
  EXPECT_EQ(row1.rfind("toy,cirka,2,", 0), 0u) << row1;
  EXPECT_EQ(row2.rfind("toy,irka,2,", 0), 0u) << row2;
  EXPECT_NE(r.out.find("cost_comparison"), std::string::npos);

  const fs::path json = dir_ / "bench.json";
  ASSERT_EQ(run("benchmark --models " + full_.string() + " --r 2 --format json --out " +
                json.string())
                .code,
            0);
  EXPECT_EQ(io::read_results_json(json.string()).size(), 2u);
}

}  // namespace
}  // namespace h2mor
