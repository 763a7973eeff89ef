// Copyright 2026 The gauge_ladder Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "gauge_ladder/cli.hpp"

using namespace gauge_ladder;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "gauge_ladder");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch_dir() {
  const auto d = fs::temp_directory_path() / ("gauge_ladder_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

nlohmann::json error_json(const Outcome& o) { return nlohmann::json::parse(o.err); }

}  // namespace

TEST(Cli, JcmSpectrum) {
  const auto o = run({"--model", "jcm", "--omega-c", "1", "--omega-a", "1", "--rabi", "0.2",
                      "--sector", "q=1", "--task", "spectrum"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto l = lines(o.out);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0], "sector,index,energy");
  EXPECT_NEAR(std::stod(io::split(l[1], ',')[2]), 0.4, 1e-15);
  EXPECT_NEAR(std::stod(io::split(l[2], ',')[2]), 0.6, 1e-15);
}

TEST(Cli, Su2ZeroSpectrum) {
  const auto o = run({"--model", "su2-link", "--g", "1", "--mass", "0", "--eps", "0", "--sector",
                      "jq=0", "--task", "spectrum"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out, "sector,index,energy\njq=0,0,0\njq=0,1,0\njq=0,2,0.375\n");
}

TEST(Cli, ProjectedAndAnalyticAgree) {
  for (const char* src : {"analytic", "projected"}) {
    const auto o = run({"--model", "u1-link", "--g", "1.2", "--mass", "0.3", "--eps", "0.4",
                        "--sector", "q=-2", "--sector", "q=1", "--source", src});
    ASSERT_EQ(o.code, 0) << o.err;
    const auto l = lines(o.out);
    ASSERT_EQ(l.size(), 5u);
  }
  const auto a = run({"--model", "u1-link", "--g", "1.2", "--mass", "0.3", "--eps", "0.4",
                      "--sector", "q=1", "--source", "analytic"});
  const auto p = run({"--model", "u1-link", "--g", "1.2", "--mass", "0.3", "--eps", "0.4",
                      "--sector", "q=1", "--source", "projected"});
  const auto la = lines(a.out), lp = lines(p.out);
  for (int k = 1; k <= 2; ++k)
    EXPECT_NEAR(std::stod(io::split(la[k], ',')[2]), std::stod(io::split(lp[k], ',')[2]), 1e-12);
}

TEST(Cli, SpectrumJsonCarriesBasisLabels) {
  const auto o = run({"--model", "su2-link", "--g", "1", "--mass", "0.5", "--eps", "0.2",
                      "--sector", "jq=1/2", "--format", "json", "--eigenvectors"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = nlohmann::json::parse(o.out);
  const auto& s = j.at("sectors").at(0);
  EXPECT_EQ(s.at("basis").get<std::vector<std::string>>(),
            (std::vector<std::string>{"D(1/2)", "ppbar+(1/2)", "ppbar-(1/2)", "Dbar(1/2)"}));
  EXPECT_EQ(s.at("energies").size(), 4u);
  EXPECT_EQ(s.at("eigenvectors").size(), 4u);
}

TEST(Cli, EigenvectorRows) {
  const auto o = run({"--model", "jcm", "--rabi", "0.2", "--sector", "q=2", "--eigenvectors"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto l = lines(o.out);
  EXPECT_EQ(l[0], "sector,index,energy,basis,re,im");
  EXPECT_EQ(l.size(), 5u);
}

TEST(Cli, Blocks) {
  const auto o = run({"--task", "blocks", "--model", "u1-link", "--g", "1", "--mass", "1",
                      "--eps", "0.5", "--sector", "q=0"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out,
            "sector,row_label,col_label,re,im\n"
            "q=0,D(0),D(0),-1,0\n"
            "q=0,D(0),ppbar(0),0.5,0\n"
            "q=0,ppbar(0),D(0),0.5,0\n"
            "q=0,ppbar(0),ppbar(0),1.5,0\n");
}

TEST(Cli, InconsistentU1SectorIsAConfigError) {
  const auto o = run({"--task", "spectrum", "--model", "u1-chain", "--sites", "4", "--sector",
                      "q=1,0,0,0"});
  EXPECT_EQ(o.code, 2);
  const auto e = error_json(o);
  EXPECT_EQ(e.at("error").at("code"), 2);
  EXPECT_EQ(e.at("error").at("kind"), "invalid_sector");
  EXPECT_TRUE(o.out.empty());
}

TEST(Cli, ConfigErrors) {
  EXPECT_EQ(run({"--model", "u3-link"}).code, 2);
  EXPECT_EQ(run({"--task", "nothing"}).code, 2);
  EXPECT_EQ(run({"--no-such-flag"}).code, 2);
  EXPECT_EQ(run({"--model", "su2-link", "--sector", "jq=1/3"}).code, 2);
  EXPECT_EQ(run({"--model", "su2-link", "--sector", "jq=1/2;mq=3/2"}).code, 2);
  EXPECT_EQ(run({"--model", "u1-link", "--sites", "4"}).code, 2);
  EXPECT_EQ(run({"--model", "jcm", "--window", "0:3"}).code, 2);
  const auto w = run({"--model", "jcm", "--sector", "q=9", "--source", "projected"});
  EXPECT_EQ(w.code, 2);
  EXPECT_EQ(error_json(w).at("error").at("kind"), "window_too_small");
  const auto u = run({"--model", "u1-link", "--sector", "q=2", "--source", "projected",
                      "--window", "0:2"});
  EXPECT_EQ(u.code, 2);
  EXPECT_EQ(error_json(u).at("error").at("kind"), "window_too_small");
  const auto c = run({"--model", "u1-chain", "--sites", "4", "--source", "analytic"});
  EXPECT_EQ(c.code, 2);
}

TEST(Cli, HelpExitsCleanly) {
  const auto o = run({"--help"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("--perturb-hermiticity"), std::string::npos);
}

TEST(Cli, EmptySectorMapsToExitThree) {
  SectorBlock b;
  b.key = jcm_sector(1);
  EXPECT_THROW(cli::require_nonempty({b}), cli::EmptyResult);
}

TEST(Cli, DimsU1) {
  const auto o = run({"--task", "dims", "--model", "u1-chain", "--chain-m", "1"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out, "link,dim_bound\n0,2\n1,3\n2,2\nD_gauge,bound_total,exact_physical\n12,72,6\n");
  const auto big = run({"--task", "dims", "--model", "u1-chain", "--chain-m", "3"});
  ASSERT_EQ(big.code, 0) << big.err;
  EXPECT_EQ(lines(big.out).back().back(), ',');  // exact column blank beyond six sites
}

TEST(Cli, DimsSu2) {
  const auto o = run({"--task", "dims", "--model", "su2-link"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out, "link,dim_bound\n0,5\nD_gauge,bound_total,exact_physical\n5,30,3\n");
  const auto m1 = run({"--task", "dims", "--model", "su2-chain", "--chain-m", "1"});
  ASSERT_EQ(m1.code, 0) << m1.err;
  EXPECT_EQ(m1.out,
            "link,dim_bound\n0,5\n1,14\n2,5\nD_gauge,bound_total,exact_physical\n350,24500,20\n");
}

TEST(Cli, VerifyDefaultPasses) {
  const auto o = run({"--task", "verify", "--format", "json"});
  EXPECT_EQ(o.code, 0) << o.err;
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_TRUE(j.at("passed").get<bool>());
  for (const auto& c : j.at("checks")) {
    EXPECT_NE(c.at("status"), "fail") << c.at("name");
    EXPECT_TRUE(c.contains("tolerance"));
  }
}

TEST(Cli, VerifyDetectsInjectedFault) {
  const auto o = run({"--task", "verify", "--perturb-hermiticity", "1e-3", "--format", "json"});
  EXPECT_EQ(o.code, 1);
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_FALSE(j.at("passed").get<bool>());
  bool seen = false;
  for (const auto& c : j.at("checks"))
    if (c.at("name") == "hermiticity") {
      seen = true;
      EXPECT_EQ(c.at("status"), "fail");
    }
  EXPECT_TRUE(seen);
}

TEST(Cli, VerifyCrossingReportsBothValues) {
  const auto o = run({"--task", "verify", "--model", "su2-link", "--check", "crossing",
                      "--format", "json"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto c = nlohmann::json::parse(o.out).at("checks").at(0);
  EXPECT_NEAR(c.at("numeric_value").get<double>(), 2.0, 1e-9);
  EXPECT_NEAR(c.at("paper_value").get<double>(), 1.0, 1e-12);
  EXPECT_EQ(run({"--task", "verify", "--check", "bogus"}).code, 2);
}

TEST(Cli, EvolvePresets) {
  const auto b = run({"--task", "evolve", "--preset", "fig3b"});
  ASSERT_EQ(b.code, 0) << b.err;
  const auto l = lines(b.out);
  EXPECT_EQ(l[0], "t,pop_D,pop_ppbar,pop_Dbar,energy");
  EXPECT_EQ(l.size(), 401u);
  const auto c = run({"--task", "evolve", "--preset", "fig3c", "--format", "json"});
  ASSERT_EQ(c.code, 0) << c.err;
  const auto j = nlohmann::json::parse(c.out);
  EXPECT_EQ(j.at("parameters").at("preset"), "fig3c");
  EXPECT_EQ(j.at("initial"), "D(2)");
  double peak = 0.0;
  for (double p : j.at("populations").at("ppbar-(2)")) peak = std::max(peak, p);
  EXPECT_GT(peak, 0.8);
}

TEST(Cli, EvolveZeroTime) {
  const auto o = run({"--task", "evolve", "--preset", "fig3c", "--t-max", "0"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto l = lines(o.out);
  ASSERT_EQ(l.size(), 2u);
  const auto f = io::split(l[1], ',');
  EXPECT_EQ(f[0], "0");
  EXPECT_EQ(f[1], "1");
}

TEST(Cli, EvolveUnknownStateListsNames) {
  const auto o = run({"--task", "evolve", "--preset", "fig3b", "--initial", "nope"});
  EXPECT_EQ(o.code, 2);
  const std::string msg = error_json(o).at("error").at("message");
  EXPECT_NE(msg.find("D, ppbar, Dbar"), std::string::npos);
}

TEST(Cli, EvolveWithoutPreset) {
  const auto o = run({"--task", "evolve", "--model", "jcm", "--rabi", "0.4", "--sector", "q=2",
                      "--initial", "site0(2)", "--n-steps", "10", "--method", "krylov"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(lines(o.out)[0], "t,pop_site1(2),pop_site0(2),energy");
  EXPECT_EQ(lines(o.out).size(), 12u);
}

TEST(Cli, ConfigRoundTrip) {
  const auto dir = scratch_dir();
  const auto dumped = (dir / "config.json").string();
  const auto o = run({"--model", "su2-link", "--g", "1.25", "--mass", "0.5", "--sector", "jq=0",
                      "--sector", "jq=3/2", "--format", "json", "--dump-config", dumped});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto loaded = cli::load_config_file(dumped);
  cli::RunConfig want;
  want.model = "su2-link";
  want.g = 1.25;
  want.mass = 0.5;
  want.sectors = {"jq=0", "jq=3/2"};
  want.format = "json";
  EXPECT_TRUE(loaded == want);
  // the config reproduces the flag run, and explicit flags override it
  const auto from_flags = run({"--model", "su2-link", "--g", "1.25", "--mass", "0.5", "--sector",
                               "jq=0", "--sector", "jq=3/2", "--format", "json"});
  const auto from_file = run({"--config", dumped});
  EXPECT_EQ(from_flags.out, from_file.out);
  const auto overridden = run({"--config", dumped, "--format", "csv"});
  EXPECT_EQ(lines(overridden.out)[0], "sector,index,energy");
}

TEST(Cli, BadConfigFiles) {
  const auto dir = scratch_dir();
  const auto bad = dir / "bad.json";
  std::ofstream(bad) << "{ not json";
  EXPECT_EQ(run({"--config", bad.string()}).code, 2);
  const auto unknown = dir / "unknown.json";
  std::ofstream(unknown) << R"({"model": "jcm", "colour": 3})";
  EXPECT_EQ(run({"--config", unknown.string()}).code, 2);
  EXPECT_EQ(run({"--config", (dir / "missing.json").string()}).code, 2);
}

TEST(Cli, OutputFile) {
  const auto path = scratch_dir() / "spectrum.csv";
  const auto o = run({"--model", "jcm", "--rabi", "0.2", "--sector", "q=1", "--output",
                      path.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(o.out.empty());
  EXPECT_EQ(slurp(path).substr(0, 20), "sector,index,energy\n");
}

TEST(Cli, ThreadCountDoesNotChangeOutput) {
  const std::vector<std::string> args = {"--model", "u1-link", "--g", "1.1", "--mass", "0.2",
                                         "--eps", "0.3", "--source", "projected",
                                         "--sector", "q=-2", "--sector", "q=-1",
                                         "--sector", "q=0", "--sector", "q=1", "--sector", "q=2"};
  ::setenv("GAUGE_LADDER_THREADS", "1", 1);
  const auto one = run(args);
  ::setenv("GAUGE_LADDER_THREADS", "4", 1);
  const auto four = run(args);
  ::unsetenv("GAUGE_LADDER_THREADS");
  ASSERT_EQ(one.code, 0);
  EXPECT_EQ(one.out, four.out);
  EXPECT_EQ(lines(one.out)[1].substr(0, 5), "q=-2,");
}

TEST(Cli, SeparateProcessesWriteIdenticalFiles) {
  const auto dir = scratch_dir();
  const std::string exe = GAUGE_LADDER_CLI_PATH;
  const std::vector<std::string> commands = {
      "--task spectrum --model su2-chain --sites 4 --g 1 --mass 0.7 --eps 0.4 --eigenvectors",
      "--task evolve --preset fig3b",
      "--task evolve --preset fig3c --format json",
      "--task dims --model su2-chain --chain-m 2 --format json",
      "--task blocks --model jcm --rabi 0.3 --sector q=0 --sector q=3",
      "--task verify --model u1-chain --sites 4"};
  int k = 0;
  for (const auto& c : commands) {
    const auto a = dir / ("a" + std::to_string(k) + ".out");
    const auto b = dir / ("b" + std::to_string(k) + ".out");
    ++k;
    ASSERT_EQ(std::system((exe + " " + c + " --output " + a.string()).c_str()), 0) << c;
    ASSERT_EQ(std::system(("GAUGE_LADDER_THREADS=3 " + exe + " " + c + " --output " + b.string())
                              .c_str()),
              0)
        << c;
    const auto sa = slurp(a), sb = slurp(b);
    EXPECT_FALSE(sa.empty());
    EXPECT_EQ(sa, sb) << c;
    EXPECT_EQ(sa.find('\r'), std::string::npos);
  }
}
