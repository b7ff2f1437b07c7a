// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "cache.hpp"
#include "commands.hpp"

using namespace orbital_ssp::cli;
namespace fs = std::filesystem;

namespace {

const std::string kData = ORBITAL_SSP_TEST_DATA;

struct Run {
  int rc = 0;
  std::string out;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "orbital-ssp");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);
  std::ostringstream os;
  Run r;
  r.rc = run(static_cast<int>(args.size()), argv.data(), os);
  r.out = os.str();
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

fs::path temp_dir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("orbital_ssp_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override { ::unsetenv("ORBITAL_SSP_CACHE"); }
};

}  // namespace

TEST_F(Cli, SolveMainExample) {
  auto r = cli({"solve", "--instance", kData + "/main_example.json"});
  EXPECT_EQ(r.rc, kExitOk);
  auto ls = lines(r.out);
  ASSERT_GE(ls.size(), 2u);
  EXPECT_EQ(ls[0], "N_sols=1 indices=[365]");
  EXPECT_NE(ls[1].find("gm_ok=1"), std::string::npos);
}

TEST_F(Cli, SolveJson) {
  auto r = cli({"--json", "solve", "--instance", kData + "/main_example.json", "--q-start"});
  EXPECT_EQ(r.rc, kExitOk);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["N_sols"], "1");
  EXPECT_EQ(j["indices"], nlohmann::json::array({"365"}));
}

TEST_F(Cli, SolveMetricsCsv) {
  auto dir = temp_dir("metrics");
  auto csv = (dir / "m.csv").string();
  auto r = cli({"solve", "--instance", kData + "/main_example.json", "--metrics-csv", csv, "--count-only"});
  EXPECT_EQ(r.rc, kExitOk);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "iter,nodes,arcs,eta_nodes,eta_arcs");
  fs::remove_all(dir);
}

TEST_F(Cli, InputErrors) {
  EXPECT_EQ(cli({"solve", "--instance", "/nonexistent/x.json"}).rc, kExitInput);
  EXPECT_EQ(cli({"bogus"}).rc, kExitInput);
  EXPECT_EQ(cli({"solve"}).rc, kExitInput);
  EXPECT_EQ(cli({"gen", "nosuchfamily", "--n", "4"}).rc, kExitInput);
}

TEST_F(Cli, GuardExit) {
  EXPECT_EQ(cli({"verify", "--instance", kData + "/example2.json", "--method", "enum"}).rc, kExitGuard);
}

TEST_F(Cli, VerifyAllMethods) {
  auto r = cli({"--json", "verify", "--instance", kData + "/main_example.json", "--method", "all", "--pipeline"});
  EXPECT_EQ(r.rc, kExitOk);
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 5u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(nlohmann::json::parse(ls[i])["count"], "1");
  EXPECT_TRUE(nlohmann::json::parse(ls[4])["agree"].get<bool>());
}

TEST_F(Cli, GenIsDeterministic) {
  auto a = cli({"--seed", "5", "gen", "random", "--n", "8", "--m", "12"});
  auto b = cli({"gen", "random", "--n", "8", "--m", "12", "--seed", "5"});
  auto c = cli({"--seed", "6", "gen", "random", "--n", "8", "--m", "12"});
  EXPECT_EQ(a.rc, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["n"], 8);
  EXPECT_EQ(j["a"].size(), 8u);
}

TEST_F(Cli, GenWritesFileThatSolves) {
  auto dir = temp_dir("gen");
  auto path = (dir / "cp.json").string();
  EXPECT_EQ(cli({"gen", "cp", "--n", "6", "--k1", "3", "--target", "9", "--out", path}).rc, kExitOk);
  auto r = cli({"solve", "--instance", path, "--count-only"});
  EXPECT_EQ(r.rc, kExitOk);
  EXPECT_EQ(lines(r.out)[0].rfind("N_sols=20", 0), 0u);
  fs::remove_all(dir);
}

TEST_F(Cli, BenchCsv) {
  auto r = cli({"--seed", "1", "bench", "--family", "random", "--n", "5..7", "--m", "8..10", "--trials", "3"});
  EXPECT_EQ(r.rc, kExitOk);
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 4u);
  EXPECT_EQ(ls[0], "trial,family,n,m,ihm_count,oracle_count,agree,eta_peak,k_peak,ihm_ms,oracle_ms");
  for (std::size_t i = 1; i < ls.size(); ++i) EXPECT_NE(ls[i].find(",1,"), std::string::npos) << ls[i];
  auto again = cli({"--seed", "1", "bench", "--family", "random", "--n", "5..7", "--m", "8..10", "--trials", "3"});
  auto strip = [](const std::string& s) {
    std::string out;
    for (const auto& l : lines(s)) {
      auto cut = l.rfind(',', l.rfind(',') - 1);
      out += l.substr(0, cut) + "\n";
    }
    return out;
  };
  EXPECT_EQ(strip(again.out), strip(r.out));
}

TEST_F(Cli, Apps) {
  auto r = cli({"apps", "binomial", "10", "3"});
  EXPECT_EQ(r.rc, kExitOk);
  EXPECT_EQ(lines(r.out)[0], "app=binomial pipeline_count=120 dp_count=120 agree=1");
  auto c = cli({"--json", "apps", "cubes", "289", "6"});
  EXPECT_EQ(c.rc, kExitOk);
  EXPECT_NE(c.out.find("\"agree\":true"), std::string::npos);
}

TEST_F(Cli, AnalyzeConfigCsv) {
  auto r = cli({"analyze", "config", "--instance", kData + "/main_example.json"});
  EXPECT_EQ(r.rc, kExitOk);
  auto ls = lines(r.out);
  ASSERT_GE(ls.size(), 2u);
  EXPECT_EQ(ls[0], "r,gamma,mu_r,Gamma_r,bound");
  EXPECT_EQ(ls[1].rfind("0,1,", 0), 0u);
}

TEST_F(Cli, AnalyzeSumsAndVm) {
  auto s = cli({"analyze", "sums", "--instance", kData + "/main_example.json"});
  EXPECT_EQ(s.rc, kExitOk);
  EXPECT_EQ(lines(s.out)[0], "U=512 N_LO=1 method=dp");
  EXPECT_EQ(cli({"analyze", "vm", "--instance", kData + "/main_example.json"}).rc, kExitOk);
}

TEST_F(Cli, NdpAndHGraphAndGraph) {
  auto seq = cli({"ndp", "seq", "--kind", "q", "--n", "6", "--check"});
  EXPECT_EQ(seq.rc, kExitOk);
  EXPECT_NE(seq.out.find("\"simulation_match\":true"), std::string::npos);
  auto tv = cli({"ndp", "tv", "--x", "365", "--n", "9", "--start", "q"});
  EXPECT_EQ(nlohmann::json::parse(tv.out)["index"], "219");
  auto fam = cli({"ndp", "family", "--n", "7"});
  auto fl = lines(fam.out);
  ASSERT_EQ(fl.size(), 17u);
  auto summary = nlohmann::json::parse(fl.back());
  EXPECT_EQ(summary["members"], 16);
  EXPECT_TRUE(summary["covered"].get<bool>());
  EXPECT_EQ(summary["unique_segments"], 142);
  auto beta = cli({"hgraph", "beta", "--n", "5"});
  EXPECT_EQ(lines(beta.out)[0], "r,beta,hockey_stick");
  auto stats = cli({"graph", "stats", "--instance", kData + "/main_example.json"});
  EXPECT_EQ(stats.rc, kExitOk);
  EXPECT_NE(stats.out.find("v0=496 v0_formula=496"), std::string::npos);
  auto dump = cli({"graph", "dump", "--instance", kData + "/main_example.json"});
  EXPECT_EQ(dump.rc, kExitOk);
  for (const auto& l : lines(dump.out)) EXPECT_NO_THROW(nlohmann::json::parse(l));
}

TEST_F(Cli, SvgOutput) {
  auto dir = temp_dir("svg");
  auto path = (dir / "s.svg").string();
  EXPECT_EQ(cli({"ndp", "--svg", path, "--instance", kData + "/main_example.json"}).rc, kExitOk);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str().rfind("<svg", 0), 0u);
  EXPECT_NE(ss.str().find("</svg>"), std::string::npos);
  fs::remove_all(dir);
}

TEST_F(Cli, ResultCache) {
  auto dir = temp_dir("cache");
  ::setenv("ORBITAL_SSP_CACHE", dir.c_str(), 1);
  auto a = cli({"solve", "--instance", kData + "/main_example.json"});
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) files += e.is_regular_file();
  EXPECT_EQ(files, 1u);
  auto b = cli({"solve", "--instance", kData + "/main_example.json"});
  EXPECT_EQ(lines(a.out)[0], lines(b.out)[0]);
  ::unsetenv("ORBITAL_SSP_CACHE");
  fs::remove_all(dir);
}

TEST(Cache, Sha256KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
