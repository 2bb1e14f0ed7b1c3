// Copyright 2026 The nehari Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs the nehari binary end to end in a scratch directory.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nehari_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()) + "_" +
            std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  // Exit status of `nehari <args>`; output goes to out/ below the scratch dir.
  int run(const std::string& args, const std::string& out = "out") {
    const std::string cmd = std::string("\"") + NEHARI_CLI_PATH + "\" " + args + " --out \"" +
                            (dir_ / out).string() + "\" > \"" + (dir_ / "log.txt").string() + "\" 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  }

  std::string read(const std::string& rel) {
    std::ifstream in(dir_ / rel, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string l; std::getline(ss, l);) out.push_back(l);
    return out;
  }

  fs::path dir_;
};

const char* kSmall =
    R"({"grid": {"n": 3}, "kernel": {"p": 2, "alpha": 0.25, "theta": 1}, "beta": 1.5,
        "b": {"preset": "pos-core", "params": [0.5]}})";
const char* kSolve =
    R"({"grid": {"n": 32}, "beta": 1.5, "b": {"preset": "pos-core", "params": [0.5]}, "lambda_factor": 0.9})";

TEST_F(Cli, EigenMatchesDenseOnSmallGrid) {
  const auto cfg = write("e.json", kSmall);
  ASSERT_EQ(run("--config " + cfg.string() + " eigen"), 0) << read("log.txt");
  const std::string csv = read("out/eigen.csv");
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  const auto ls = lines(csv);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0],
            "n_interior,p,alpha,theta,beta,lambda1,lambda_b,dense_lambda1,iterations,residual,"
            "b_phi1_integral,b_phi1_sign");
  std::vector<std::string> f;
  std::stringstream ss(ls[1]);
  for (std::string c; std::getline(ss, c, ',');) f.push_back(c);
  ASSERT_EQ(f.size(), 12u);
  const double l1 = std::stod(f[5]), dense = std::stod(f[7]);
  EXPECT_NEAR(l1, dense, 1e-8 * dense);
  EXPECT_EQ(lines(read("out/phi1.csv")).size(), 4u);
  EXPECT_EQ(lines(read("out/phi1.csv"))[0], "x,phi1");
}

TEST_F(Cli, SolveWritesSummaryAndSolution) {
  const auto cfg = write("s.json", kSolve);
  ASSERT_EQ(run("--config " + cfg.string() + " solve"), 0) << read("log.txt");
  const auto ls = lines(read("out/solve_summary.csv"));
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0],
            "lambda,branch,j_value,u_norm,lp_norm,b_integral,angle_to_phi1,nehari_residual,grad_residual,"
            "min_node_value,iterations,converged");
  EXPECT_NE(ls[1].find(",plus,"), std::string::npos);
  EXPECT_EQ(lines(read("out/solution_plus.csv")).size(), 33u);
}

TEST_F(Cli, TwoBranchSolveWritesBothSolutions) {
  const auto cfg = write("t.json",
                         R"({"grid": {"n": 64}, "beta": 1.5, "b": {"preset": "neg-core", "params": [0.2]},
                             "lambda_factor": 1.01, "branch": "both"})");
  ASSERT_EQ(run("--config " + cfg.string() + " solve"), 0) << read("log.txt");
  EXPECT_EQ(lines(read("out/solution_plus.csv")).size(), 65u);
  EXPECT_EQ(lines(read("out/solution_minus.csv")).size(), 65u);
  EXPECT_EQ(lines(read("out/solve_summary.csv")).size(), 3u);
}

TEST_F(Cli, SuperlinearMinusBelowLambda1HasPositiveEnergy) {
  const auto cfg = write("u.json",
                         R"({"grid": {"n": 32}, "beta": 3, "b": {"preset": "pos-core", "params": [0.5]},
                             "lambda_factor": 0.9, "branch": "minus"})");
  ASSERT_EQ(run("--config " + cfg.string() + " solve"), 0) << read("log.txt");
  const auto ls = lines(read("out/solve_summary.csv"));
  ASSERT_EQ(ls.size(), 2u);
  const std::string row = ls[1];
  const auto a = row.find(',', row.find(',') + 1);  // after lambda,branch
  EXPECT_GT(std::stod(row.substr(a + 1)), 0.0);
}

TEST_F(Cli, EmptyBranchExitsThree) {
  const auto cfg = write("m.json",
                         R"({"grid": {"n": 32}, "beta": 1.5, "b": {"preset": "pos-core", "params": [0.5]},
                             "lambda_factor": 0.9, "branch": "minus"})");
  EXPECT_EQ(run("--config " + cfg.string() + " solve"), 3);
}

TEST_F(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(run("--config " + write("a.json", R"({"kernel": {"alpha": 0.6}})").string() + " eigen"), 2);
  EXPECT_EQ(run("--config " + write("b.json", R"({"kernl": {}})").string() + " eigen"), 2);
  EXPECT_EQ(run("--config " + write("c.json", "{not json").string() + " eigen"), 2);
  EXPECT_EQ(run("--config " + (dir_ / "missing.json").string() + " eigen"), 2);
  EXPECT_EQ(run("--config " + write("d.json", kSmall).string() + " no-such-command"), 2);
  EXPECT_EQ(run("eigen"), 2);  // --config is required
}

TEST_F(Cli, SweepIsDeterministicAcrossThreadCounts) {
  const auto cfg = write("w.json",
                         R"({"grid": {"n": 32}, "beta": 1.5, "b": {"preset": "pos-core", "params": [0.5]},
                             "sweep": {"lambda_factors": [0.9, 0.5, 0.8], "branches": ["plus", "minus"]}})");
  ASSERT_EQ(run("--config " + cfg.string() + " --threads 1 sweep", "one"), 0) << read("log.txt");
  ASSERT_EQ(run("--config " + cfg.string() + " --threads 3 sweep", "three"), 0) << read("log.txt");
  ASSERT_EQ(run("--config " + cfg.string() + " --threads 3 sweep", "again"), 0) << read("log.txt");
  const std::string a = read("one/sweep.csv");
  EXPECT_EQ(a, read("three/sweep.csv"));
  EXPECT_EQ(a, read("again/sweep.csv"));
  const auto ls = lines(a);
  ASSERT_EQ(ls.size(), 7u);
  EXPECT_EQ(ls[0],
            "lambda,branch,j_inf,u_norm,lp_norm,b_integral,angle_to_phi1,iterations,converged,"
            "nehari_residual,closed_form,status");
  // Rows are ordered by lambda; minus rows below lambda1 are branch_empty.
  EXPECT_NE(ls[2].find("branch_empty"), std::string::npos);
  EXPECT_LT(std::stod(ls[1]), std::stod(ls[3]));
}

TEST_F(Cli, SweepNearLambda1NeedsFlag) {
  const auto cfg = write("n.json",
                         R"({"grid": {"n": 32}, "beta": 1.5, "b": {"preset": "pos-core", "params": [0.5]},
                             "sweep": {"lambda_factors": [0.99999999], "branches": ["plus"]}})");
  EXPECT_EQ(run("--config " + cfg.string() + " sweep"), 2);
}

TEST_F(Cli, FiberDump) {
  const auto cfg = write("f.json", kSolve);
  ASSERT_EQ(run("--config " + cfg.string() + " fiber-dump"), 0) << read("log.txt");
  const auto ls = lines(read("out/fiber.csv"));
  EXPECT_EQ(ls[0], "t,phi,phi_d1,phi_d2,is_t_star");
  EXPECT_EQ(ls.size(), 202u);
  int marked = 0;
  for (const auto& l : ls) marked += l.size() > 2 && l.substr(l.size() - 2) == ",1";
  EXPECT_EQ(marked, 1);
  EXPECT_EQ(lines(read("out/fiber_summary.csv"))[0], "lambda,case_id,e_sign,b_sign,t_star,target_branch");

  const auto zero = write("z.json",
                          R"({"grid": {"n": 3}, "beta": 1.5, "b": {"preset": "pos-core", "params": [0.5]},
                              "lambda_factor": 0.9, "fiber": {"source": "values", "values": [0, 0, 0]}})");
  EXPECT_EQ(run("--config " + zero.string() + " fiber-dump", "z"), 2);
}

TEST_F(Cli, CheckPasses) {
  ASSERT_EQ(run("--seed 3 check"), 0) << read("log.txt");
  const auto ls = lines(read("out/check.csv"));
  EXPECT_EQ(ls[0], "name,max_rel_error,samples,tolerance,passed");
  EXPECT_GT(ls.size(), 5u);
}

}  // namespace
