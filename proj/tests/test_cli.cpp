// Copyright 2026 The Collapse Lab Authors.
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

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "collapse_lab/cli.hpp"

namespace collapse_lab::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("collapse_lab_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  int invoke(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }

  std::vector<std::vector<double>> rows() const {
    std::istringstream in(out_.str());
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> out;
    while (std::getline(in, line)) {
      std::vector<double> row;
      std::istringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
      out.push_back(row);
    }
    return out;
  }

  std::string header() const { return out_.str().substr(0, out_.str().find('\n')); }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, TransformSinhGivesTanh) {
  const std::string cfg =
      write("t.json", R"({"surface": {"family": "sinh", "a": 1}, "r": 1, "kappa": 1, "rho_max": 4})");
  ASSERT_EQ(invoke({"transform", "--config", cfg}), kExitOk) << err_.str();
  EXPECT_EQ(header(), "rho,f,f_transformed");
  const auto r = rows();
  EXPECT_EQ(r.size(), 200u);
  for (const auto& row : r) {
    ASSERT_EQ(row.size(), 3u);
    EXPECT_NEAR(row[2], std::tanh(row[0]), 1e-12);
  }
}

TEST_F(CliTest, TransformAcceptsTopLevelWarpAndInverse) {
  const std::string cfg = write(
      "t.json", R"({"family": "tanh", "a": 1, "r": 1, "kappa": 1, "rho_max": 2, "points": 9, "inverse": true})");
  ASSERT_EQ(invoke({"transform", "--config", cfg}), kExitOk) << err_.str();
  for (const auto& row : rows()) EXPECT_NEAR(row[2], std::sinh(row[0]), 1e-12);
}

TEST_F(CliTest, CurvatureOfTanhAtPole) {
  const std::string cfg = write("k.json", R"({"family": "tanh", "a": 1, "rho_max": 3, "points": 31})");
  ASSERT_EQ(invoke({"curvature", "--config", cfg}), kExitOk) << err_.str();
  EXPECT_EQ(header(), "rho,K");
  const auto r = rows();
  EXPECT_EQ(r[0][0], 0.0);
  EXPECT_EQ(r[0][1], 2.0);
  for (const auto& row : r) EXPECT_NEAR(row[1], 2 / std::pow(std::cosh(row[0]), 2), 1e-12);
}

TEST_F(CliTest, SolitonTable) {
  const std::string cfg = write("s.json", R"({"A": 1, "rho_max": 2, "step": 0.001})");
  ASSERT_EQ(invoke({"soliton", "--config", cfg}), kExitOk) << err_.str();
  EXPECT_EQ(header(), "rho,f,fprime,K,phi,res1,res2");
  const auto r = rows();
  EXPECT_GT(r.size(), 1900u);
  for (const auto& row : r) {
    ASSERT_EQ(row.size(), 7u);
    EXPECT_GT(row[1], 1e-4);
    EXPECT_NEAR(row[1], std::tanh(row[0]), 1e-10);
    EXPECT_LE(row[5], 1e-8);
    EXPECT_LE(row[6], 1e-8);
  }
  const std::string flat = write("f.json", R"({"A": 0, "rho_max": 1, "step": 0.01})");
  ASSERT_EQ(invoke({"soliton", "--config", flat}), kExitOk) << err_.str();
  for (const auto& row : rows()) EXPECT_EQ(row[4], 0.0);
}

TEST_F(CliTest, QuotientBothForms) {
  const std::string proj = write(
      "q.json", R"({"metric": [[1,0,0],[0,4,0],[0,0,1]], "H": [[0,1,1]], "frame": [[1,0,0],[0,1,0]]})");
  ASSERT_EQ(invoke({"quotient", "--config", proj}), kExitOk) << err_.str();
  auto r = rows();
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[1][1], 0.8, 1e-15);
  const std::string kill =
      write("k.json", R"({"metric": [[1,0,0],[0,1,0],[0,0,1]], "killing": [1,0,0], "r": 1, "kappa": 2})");
  ASSERT_EQ(invoke({"quotient", "--config", kill}), kExitOk) << err_.str();
  r = rows();
  EXPECT_EQ(r[0][0], 0.2);
  EXPECT_EQ(r[2][2], 1.0);
}

TEST_F(CliTest, BergerScanAndSummary) {
  const std::string cfg = write("b.json", R"({"A": 0.2, "B": 1, "C": 1, "points": 11, "seed": 5})");
  ASSERT_EQ(invoke({"berger", "--config", cfg}), kExitOk) << err_.str();
  EXPECT_EQ(header(), "target_radius,max_distortion");
  EXPECT_EQ(rows().size(), 11u);
  EXPECT_NE(err_.str().find("R*="), std::string::npos);
  ASSERT_EQ(invoke({"berger", "--config", cfg, "--quiet"}), kExitOk);
  EXPECT_TRUE(err_.str().empty());
  const std::string xi = write("x.json", R"({"xi": 1.5707963267948966, "points": 3})");
  EXPECT_EQ(invoke({"berger", "--config", xi}), kExitOk) << err_.str();
}

TEST_F(CliTest, CollapseTable) {
  const std::string cfg = write("c.json", R"({"surface": {"family": "sinh", "a": 1}, "rho_max": 2,
    "r": 1, "m1": 1, "m2": 1, "p_values": [2, 4, 8],
    "grid": {"n_rho": 24, "n_theta": 24, "n_s": 8},
    "sample": {"n_rho": 5, "n_theta": 4, "n_s": 2}, "seed": 3})");
  ASSERT_EQ(invoke({"collapse", "--config", cfg}), kExitOk) << err_.str();
  EXPECT_EQ(header(), "p,distortion,gh_upper_bound,grid_floor_estimate");
  const auto r = rows();
  ASSERT_EQ(r.size(), 3u);
  for (const auto& row : r) EXPECT_EQ(row[2], row[1] / 2);
}

TEST_F(CliTest, OutputFileAndDeterminism) {
  const std::string cfg = write("t.json", R"({"family": "sin", "a": 1, "r": 2, "kappa": 0.5, "rho_max": 3})");
  const std::string a = (dir_ / "a.csv").string(), b = (dir_ / "b.csv").string();
  ASSERT_EQ(invoke({"transform", "--config", cfg, "--out", a}), kExitOk);
  EXPECT_TRUE(out_.str().empty());
  ASSERT_EQ(invoke({"transform", "--config", cfg, "--out", b}), kExitOk);
  std::ifstream fa(a), fb(b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  EXPECT_FALSE(sa.str().empty());
  EXPECT_EQ(sa.str(), sb.str());
}

TEST_F(CliTest, SeventeenDigitFormat) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(std::stod(format_double(M_PI)), M_PI);
}

TEST_F(CliTest, ParseErrorReportsLineAndColumn) {
  const std::string cfg = write("bad.json", "{\n  \"family\": \"sinh\",\n  \"a\": ,\n}");
  EXPECT_EQ(invoke({"transform", "--config", cfg}), kExitConfig);
  EXPECT_NE(err_.str().find("bad.json:3:8"), std::string::npos) << err_.str();
}

TEST_F(CliTest, ConfigErrorsExitTwo) {
  EXPECT_EQ(invoke({"transform", "--config", (dir_ / "missing.json").string()}), kExitConfig);
  const std::string fam = write("f.json", R"({"family": "cosh", "a": 1})");
  EXPECT_EQ(invoke({"transform", "--config", fam}), kExitConfig);
  EXPECT_NE(err_.str().find("cosh"), std::string::npos);
  const std::string type = write("t.json", R"({"family": "sinh", "a": "one"})");
  EXPECT_EQ(invoke({"curvature", "--config", type}), kExitConfig);
  const std::string noP = write("c.json", R"({"surface": {"family": "sinh", "a": 1}, "rho_max": 2})");
  EXPECT_EQ(invoke({"collapse", "--config", noP}), kExitConfig);
}

TEST_F(CliTest, DomainErrorsExitOne) {
  const std::string tan = write("t.json", R"({"family": "tan", "a": 1, "rho_max": 2})");
  EXPECT_EQ(invoke({"transform", "--config", tan}), kExitDomain);
  EXPECT_NE(err_.str().find("domain"), std::string::npos);
  const std::string blow = write("s.json", R"({"A": -1, "rho_max": 1.6})");
  EXPECT_EQ(invoke({"soliton", "--config", blow}), kExitDomain);
  const std::string xi = write("x.json", R"({"xi": 0})");
  EXPECT_EQ(invoke({"berger", "--config", xi}), kExitDomain);
}

TEST_F(CliTest, UnknownSubcommandPrintsUsage) {
  EXPECT_NE(invoke({"frobnicate", "--config", "x.json"}), kExitOk);
  EXPECT_NE(err_.str().find("Usage"), std::string::npos);
  EXPECT_NE(invoke({}), kExitOk);
  EXPECT_NE(invoke({"transform"}), kExitOk);
}

std::string shell(const std::string& cmd, int* status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  *status = pclose(p);
  return out;
}

TEST_F(CliTest, BinaryExitCodesAndIsaIndependence) {
  const std::string bin = COLLAPSE_LAB_CLI_PATH;
  int status = 0;
  shell(bin + " frobnicate 2>/dev/null", &status);
  EXPECT_NE(WEXITSTATUS(status), 0);

  const std::string cfg = write("c.json", R"({"surface": {"family": "sinh", "a": 1}, "rho_max": 2,
    "p_values": [2, 8], "grid": {"n_rho": 24, "n_theta": 24, "n_s": 8},
    "sample": {"n_rho": 5, "n_theta": 6, "n_s": 4}})");
  const std::string vec = shell(bin + " collapse --config " + cfg, &status);
  EXPECT_EQ(WEXITSTATUS(status), 0);
  const std::string scalar = shell("COLLAPSE_LAB_ISA=scalar " + bin + " collapse --config " + cfg, &status);
  EXPECT_EQ(WEXITSTATUS(status), 0);
  EXPECT_FALSE(vec.empty());
  EXPECT_EQ(vec, scalar);
  const std::string one = shell("COLLAPSE_LAB_THREADS=1 " + bin + " collapse --config " + cfg, &status);
  EXPECT_EQ(vec, one);
}

}  // namespace
}  // namespace collapse_lab::cli
