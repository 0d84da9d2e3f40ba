// Copyright 2026 The Strahler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the strahler executable end to end.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "json.hpp"

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
  const std::string cmd =
      env + " " + std::string(STRAHLER_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.out.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// Output without "# " header lines.
std::string body(const std::string& out) {
  std::string kept;
  std::size_t pos = 0;
  while (pos < out.size()) {
    std::size_t end = out.find('\n', pos);
    if (end == std::string::npos) end = out.size();
    const std::string line = out.substr(pos, end - pos);
    if (line.rfind("# ", 0) != 0) kept += line + "\n";
    pos = end + 1;
  }
  return kept;
}

TEST(CliTest, EnumerateCount) {
  const CliRun r = run("enumerate --n 3 --count-only");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(body(r.out), "2\n");
  EXPECT_NE(r.out.find("# config: {\"subcommand\":\"enumerate\""),
            std::string::npos);
  EXPECT_EQ(body(run("enumerate --n 4").out).size(), 5 * 15u);
  EXPECT_EQ(run("enumerate --n 13").code, 2);
}

TEST(CliTest, DistExact) {
  const CliRun r = run("dist --r 2 --n 4 --mode exact");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["config"]["mode"], "exact");
  ASSERT_EQ(j["support"].size(), 2u);
  EXPECT_EQ(j["support"][0]["num"], 1);
  EXPECT_EQ(j["support"][0]["p_num"], 4);
  EXPECT_EQ(j["support"][0]["p_den"], 5);
  EXPECT_EQ(j["support"][1]["num"], 2);
  EXPECT_EQ(j["support"][1]["p_num"], 1);
  EXPECT_EQ(j["support"][1]["p_den"], 5);
}

TEST(CliTest, ModeFromEnvironmentAndOverride) {
  auto j = nlohmann::json::parse(run("dist --r 2 --n 4", "STRAHLER_MODE=float").out);
  EXPECT_EQ(j["config"]["mode"], "float");
  EXPECT_NEAR(j["support"][0]["p"].get<double>(), 0.8, 1e-15);
  j = nlohmann::json::parse(
      run("dist --r 2 --n 4 --mode exact", "STRAHLER_MODE=float").out);
  EXPECT_EQ(j["config"]["mode"], "exact");
  EXPECT_EQ(run("dist --r 2 --n 4", "STRAHLER_MODE=bogus").code, 2);
}

TEST(CliTest, RatioDist) {
  const auto j = nlohmann::json::parse(run("ratio-dist --q 1 --r 1 --n 4").out);
  ASSERT_EQ(j["support"].size(), 2u);
  EXPECT_EQ(j["support"][0]["num"], 1);
  EXPECT_EQ(j["support"][0]["den"], 4);
}

TEST(CliTest, Strahler) {
  const CliRun r = run("strahler --tree '((()())(((()())())()))'");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["counts"], nlohmann::json::parse("[6,2,1]"));
  EXPECT_EQ(j["strahler_number"], 3);
  EXPECT_EQ(run("strahler --tree '(()'").code, 2);
}

TEST(CliTest, Moments) {
  CliRun r = run("moments --kind raw --k 1 --n 4 --mode exact");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(body(r.out), "kind,k,l,n,numerator,denominator\nraw,1,0,4,6,5\n");
  r = run("moments --kind negative --k 1 --n 4 --n-max 5 --mode float");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(body(r.out).rfind("kind,k,l,n,value\nnegative,1,0,4,0.9", 0), 0u);
  EXPECT_EQ(run("moments --kind skew --n 4").code, 2);
}

TEST(CliTest, Mgf) {
  const CliRun r = run("mgf --n 4 --x-num 2 --x-den 1");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["hypergeometric"]["num"], 12);
  EXPECT_EQ(j["hypergeometric"]["den"], 5);
  EXPECT_EQ(j["direct"], j["hypergeometric"]);
  EXPECT_EQ(j["residual"]["num"], 0);
  EXPECT_EQ(j["derivative_residual"]["num"], 0);
  EXPECT_EQ(run("mgf --n 4 --x-den 0").code, 2);
}

TEST(CliTest, CltNeedsSeed) {
  EXPECT_EQ(run("clt --n 64 --samples 10").code, 2);
  EXPECT_EQ(run("clt --n 64 --samples 10 --entropy").code, 0);
}

TEST(CliTest, CltCsvAndJson) {
  const CliRun a = run("clt --kind count --r 1 --n 256 --samples 500 --seed 7");
  ASSERT_EQ(a.code, 0);
  const std::string csv = body(a.out);
  EXPECT_EQ(csv.rfind("kind,q,r,n,samples,mean,variance,predicted_variance,"
                      "m3,m4,ks,zero_freq\ncount,1,1,256,500,",
                      0),
            0u);
  EXPECT_NE(csv.find(",1/16,"), std::string::npos);
  EXPECT_EQ(a.out, run("clt --kind count --r 1 --n 256 --samples 500 --seed 7").out);

  const CliRun b = run(
      "clt --kind ratio --q 2 --r 1 --n 256 --samples 300 --seed 7 --out json "
      "--hist-bins 8");
  ASSERT_EQ(b.code, 0);
  const auto j = nlohmann::json::parse(b.out);
  EXPECT_EQ(j["config"]["seed"], 7);
  EXPECT_EQ(j["predicted_variance"]["num"], 1);
  EXPECT_EQ(j["predicted_variance"]["den"], 4);
  EXPECT_EQ(j["histogram"]["counts"].size(), 8u);
  EXPECT_EQ(run("clt --n 64 --samples 10 --seed 1 --out xml").code, 2);
  EXPECT_EQ(run("clt --kind tree --n 64 --samples 10 --seed 1").code, 2);
}

TEST(CliTest, Horton) {
  const CliRun r = run("horton --orders 1,2 --n 1024 --samples 50 --seed 3");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(body(r.out).rfind("r,n,samples,exceedances,frequency\n1,1024,50,", 0),
            0u);
}

TEST(CliTest, Sample) {
  const CliRun a = run("sample --n 5 --count 3 --seed 4");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, run("sample --n 5 --count 3 --seed 4").out);
  EXPECT_EQ(run("sample --n 5").code, 2);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("dist --r 2 --n 4 --bogus").code, 2);
  EXPECT_EQ(run("dist --r 0 --n 4").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(CliTest, VerifyAllExactOnly) {
  const CliRun r = run("verify-all --skip-mc");
  EXPECT_EQ(r.code, 0);
  for (int id = 1; id <= 7; ++id) {
    EXPECT_NE(r.out.find("PASS [" + std::to_string(id) + "]"), std::string::npos)
        << id;
  }
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("SKIP [8]"), std::string::npos);
}

}  // namespace
