#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "wwrank/models.hpp"
#include "wwrank/symmetric_matrix.hpp"
#include "wwrank_cli/cli.hpp"

using namespace wwrank;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("wwrank_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = (dir_ / name).string();
    std::ofstream(path) << text;
    return path;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, TestCommandOutputsJson) {
  const auto path = write("a.csv", "0,1,2\n1,0,3\n2,3,0\n");
  const auto r = run({"test", path});
  EXPECT_EQ(r.code, cli::kOk);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["reject"], false);
}

TEST_F(CliTest, MonotoneTransformGivesIdenticalOutput) {
  const auto a = sample_homogeneous(30, parse_distribution("normal(0,1)"), 4);
  std::vector<double> v(a.values().begin(), a.values().end());
  for (double& x : v) x = std::exp(x);
  const auto pa = (dir_ / "a.txt").string();
  const auto pb = (dir_ / "b.txt").string();
  save_matrix(pa, a, MatrixFormat::upper_triangle_text);
  save_matrix(pb, SymmetricMatrix(30, v), MatrixFormat::upper_triangle_text);
  const auto ra = run({"test", pa, "--format", "upper-triangle-text"});
  const auto rb = run({"test", pb, "--format", "upper-triangle-text"});
  EXPECT_EQ(ra.code, rb.code);
  EXPECT_EQ(ra.out, rb.out);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({"test", (dir_ / "missing.csv").string()}).code, cli::kIo);
  EXPECT_EQ(run({"test", write("asym.csv", "0,1,2\n1,0,3\n2,4,0\n")}).code, cli::kAsymmetry);
  EXPECT_EQ(run({"test", write("tie.csv", "0,1,1\n1,0,3\n1,3,0\n")}).code, cli::kTies);
  EXPECT_EQ(run({"test", write("tie.csv", "0,1,1\n1,0,3\n1,3,0\n"), "--ties", "random"}).code, cli::kUsage);
  EXPECT_EQ(run({"test", write("tie.csv", "0,1,1\n1,0,3\n1,3,0\n"), "--ties", "random", "--seed", "1"}).code,
            cli::kOk);
  EXPECT_EQ(run({"test", write("bad.csv", "0,x\nx,0\n")}).code, cli::kParse);
  EXPECT_EQ(run({"test", write("two.csv", "0,1\n1,0\n")}).code, cli::kInvalidArgument);
  EXPECT_EQ(run({"simulate", "homogeneous", "normal(1", "--n", "10", "--replicates", "2", "--seed", "1"}).code,
            cli::kParse);
  EXPECT_EQ(run({"simulate", "homogeneous", "normal(0,1)", "--n", "10", "--replicates", "2"}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  const auto err = run({"test", (dir_ / "missing.csv").string()}).err;
  const auto j = nlohmann::json::parse(err);
  EXPECT_EQ(j["exit_code"], cli::kIo);
  EXPECT_EQ(j["error"], "io");
}

TEST_F(CliTest, RejectionExitCode) {
  // A strong two-block signal at n = 60.
  const auto g = sample_two_block(60, parse_distribution("normal(0,1)"), parse_distribution("normal(3,1)"), 1);
  const auto path = (dir_ / "g.csv").string();
  save_matrix(path, g.matrix, MatrixFormat::dense_csv);
  const auto r = run({"test", path});
  EXPECT_EQ(r.code, cli::kRejected);
  EXPECT_EQ(nlohmann::json::parse(r.out)["reject"], true);
}

TEST_F(CliTest, SimulateIsDeterministic) {
  const std::vector<std::string> args{"simulate", "two_block", "normal(0,1)", "normal(1,1)", "--n", "20",
                                      "--replicates", "8", "--seed", "3", "--no-timing"};
  auto a = args;
  a.insert(a.end(), {"--threads", "1"});
  auto b = args;
  b.insert(b.end(), {"--threads", "2"});
  const auto ra = run(a);
  const auto rb = run(b);
  EXPECT_EQ(ra.code, cli::kOk);
  EXPECT_EQ(ra.out, rb.out);
  const auto j = nlohmann::json::parse(ra.out);
  EXPECT_EQ(j["config"]["replicates"], 8);
  EXPECT_FALSE(j.contains("elapsed_s"));
}

TEST_F(CliTest, SimulateFromConfigFile) {
  const auto path = write("cfg.json", R"j({"model": "planted", "n": 20, "n1": 5, "f1": "normal(2,1)",
                                          "f2": "normal(0,1)", "replicates": 4, "seed": 9})j");
  const auto r = run({"simulate", "--config", path, "--replicates", "6", "--no-timing"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["config"]["replicates"], 6);
  EXPECT_EQ(j["config"]["n1"], 5);
}

TEST_F(CliTest, ReproduceWritesFiles) {
  const auto out = (dir_ / "res").string();
  const auto r = run({"reproduce", "table2", "--seed", "1", "--scale", "0.01", "--sizes", "20", "--out", out,
                      "--no-timing"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  std::ifstream csv(out + "/table2.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "row,mu1_equals_mu2,e1f2_gap,n,F1,F2,replicates,rejection_rate");
  EXPECT_TRUE(fs::exists(out + "/table2.json"));
}

TEST_F(CliTest, Help) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("simulate"), std::string::npos);
}
