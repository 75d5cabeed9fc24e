// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "config.hpp"
#include "fdran/common/error.hpp"

namespace fs = std::filesystem;
using namespace fdran;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(FDRAN_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, p)) r.out += buf;
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("fdran_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& s) const { return path_ / s; }

 private:
  fs::path path_;
};

void write_file(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST(Config, RoundTrip) {
  for (const char* name : {"tiny", "paper-3bs"}) {
    const auto c = cli::preset_run_config(name);
    const auto j = cli::to_json(c);
    const auto back = cli::parse_run_config(j);
    EXPECT_EQ(cli::to_json(back), j);
    EXPECT_EQ(cli::config_hash(back), cli::config_hash(c));
  }
}

TEST(Config, OverridesApplyOnTopOfPreset) {
  const auto c = cli::parse_run_config(json::parse(R"({"preset":"tiny","sim":{"users":3,"scheme":"pmi"},"seeds":[5,6]})"));
  EXPECT_EQ(c.sim.users, 3);
  EXPECT_EQ(c.sim.scheme, Scheme::kPmiFeedback);
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{5, 6}));
  EXPECT_NE(cli::config_hash(c), cli::config_hash(cli::preset_run_config("tiny")));
}

TEST(Config, StrictKeysAndTypes) {
  const auto code = [](const char* text) {
    try {
      cli::parse_run_config(json::parse(text));
      return ErrorCode::kInvalidArgument;
    } catch (const Error& e) {
      return e.code();
    }
  };
  EXPECT_EQ(code(R"({"presett":"tiny"})"), ErrorCode::kConfigError);
  EXPECT_EQ(code(R"({"preset":"tiny","sim":{"userz":3}})"), ErrorCode::kConfigError);
  EXPECT_EQ(code(R"({"preset":"tiny","sim":{"users":"three"}})"), ErrorCode::kConfigError);
  EXPECT_EQ(code(R"({"preset":"tiny","sim":{"scheme":"magic"}})"), ErrorCode::kConfigError);
  EXPECT_EQ(code(R"({"preset":"tiny","sim":{"t_sc":0}})"), ErrorCode::kConfigError);
  EXPECT_EQ(code(R"({"preset":"unknown"})"), ErrorCode::kConfigError);
}

TEST(Config, ExitCodes) {
  EXPECT_EQ(cli::exit_code_for(Error(ErrorCode::kConfigError, "x")), 2);
  EXPECT_EQ(cli::exit_code_for(Error(ErrorCode::kOutOfGrid, "x")), 2);
  EXPECT_EQ(cli::exit_code_for(Error(ErrorCode::kFairnessInfeasible, "x")), 3);
  EXPECT_EQ(cli::exit_code_for(Error(ErrorCode::kPumpFailed, "x")), 5);
  EXPECT_EQ(cli::exit_code_for(Error(ErrorCode::kRankDeficient, "x")), 1);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("--bogus").code, 2);
  EXPECT_EQ(run("simulate --preset nope").code, 2);
  EXPECT_EQ(run("schedule --mode sideways x").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, ScheduleHeavy) {
  TempDir dir;
  write_file(dir / "h.json", R"({"K":10,"eta_min":0.1,"users":[
    {"id":1,"weight":0.5,"demand":1000,"rate":100},
    {"id":2,"weight":0.5,"demand":800,"rate":100}]})");
  const auto r = run("schedule --mode heavy " + q(dir / "h.json") + " --out-dir " + q(dir / "o"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("V="), std::string::npos);
  const auto alloc = read_file(dir / "o" / "allocation.csv");
  EXPECT_EQ(alloc.substr(0, alloc.find('\n')), "user_id,weight,demand_bps,rate_bps,required,mandatory,subcarriers,eta");
  EXPECT_TRUE(fs::exists(dir / "o" / "resource_map.csv"));
  EXPECT_TRUE(fs::exists(dir / "o" / "manifest.json"));

  write_file(dir / "bad.json", R"({"K":10,"users":[{"id":1,"weight":0.5,"demand":1000,"rate":0}]})");
  EXPECT_EQ(run("schedule-heavy " + q(dir / "bad.json")).code, 2);
  write_file(dir / "unfair.json", R"({"K":2,"eta_min":0.9,"users":[
    {"id":1,"weight":0.5,"demand":1000,"rate":100},{"id":2,"weight":0.5,"demand":1000,"rate":100}]})");
  EXPECT_EQ(run("schedule-heavy " + q(dir / "unfair.json") + " --out-dir " + q(dir / "u")).code, 3);
}

TEST(Cli, ScheduleLightAndLimits) {
  TempDir dir;
  write_file(dir / "l.jsonl",
             "{\"K\":8,\"M\":2,\"power_mw\":1,\"lambda\":1000}\n"
             "{\"id\":0,\"demand\":500,\"rates\":[100,120,300]}\n"
             "{\"id\":1,\"demand\":300,\"rates\":[150,90,280]}\n");
  auto r = run("schedule --mode light " + q(dir / "l.jsonl") + " --out-dir " + q(dir / "o"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("proven=yes"), std::string::npos);
  r = run("schedule-light " + q(dir / "l.jsonl") + " --time-limit-ms 0 --out-dir " + q(dir / "o2"));
  EXPECT_EQ(r.code, 4) << r.out;
  EXPECT_NE(r.out.find("proven=no"), std::string::npos);

  write_file(dir / "h.jsonl",
             "{\"K\":4,\"M\":2}\n"
             "{\"id\":0,\"demand\":5000,\"rates\":[100,120,300]}\n");
  EXPECT_EQ(run("schedule-light " + q(dir / "h.jsonl")).code, 2);
  write_file(dir / "short.jsonl", "{\"K\":8,\"M\":2}\n{\"id\":0,\"demand\":50,\"rates\":[100,120]}\n");
  EXPECT_EQ(run("schedule-light " + q(dir / "short.jsonl")).code, 2);
}

TEST(Cli, Verify) {
  const auto r = run("verify --heavy-instances 20 --light-instances 10");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_EQ(run("verify --heavy-max-k 99").code, 2);
}

TEST(Cli, BuildMapIsReproducible) {
  TempDir dir;
  const auto a = run("build-map --preset tiny --out " + q(dir / "a.bin"));
  const auto b = run("build-map --preset tiny --out " + q(dir / "b.bin"));
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_NE(a.out.find("coop_sets_per_cell=3"), std::string::npos);
  EXPECT_TRUE(read_file(dir / "a.bin") == read_file(dir / "b.bin"));
  // The episode seed does not enter the map; the network seed does.
  ASSERT_EQ(run("build-map --preset tiny --seed 9 --out " + q(dir / "c.bin")).code, 0);
  EXPECT_TRUE(read_file(dir / "a.bin") == read_file(dir / "c.bin"));
  write_file(dir / "cfg.json", R"({"preset":"tiny","network":{"seed":9}})");
  ASSERT_EQ(run("build-map --config " + q(dir / "cfg.json") + " --out " + q(dir / "d.bin")).code, 0);
  EXPECT_FALSE(read_file(dir / "a.bin") == read_file(dir / "d.bin"));
}

TEST(Cli, ThreeBsMapHasSevenSets) {
  TempDir dir;
  write_file(dir / "cfg.json", R"({"preset":"paper-3bs","sim":{"users":4},"network":{"samples":2,
    "grid":{"origin":[0,0,1.5],"spacing":[2,2,1],"counts":[2,2,1]}}})");
  const auto r = run("build-map --config " + q(dir / "cfg.json") + " --out " + q(dir / "m.bin"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("cells=4"), std::string::npos);
  EXPECT_NE(r.out.find("coop_sets_per_cell=7"), std::string::npos);
}

TEST(Cli, SimulateSweepAndDeterminism) {
  TempDir dir;
  write_file(dir / "cfg.json", R"({"preset":"tiny","sim":{"episode_slots":30}})");
  const auto a = run("simulate --config " + q(dir / "cfg.json") + " --seed 1 --episodes 100 --jobs 2 --out-dir " +
                     q(dir / "a"));
  ASSERT_EQ(a.code, 0) << a.out;
  int episodes = 0;
  for (const auto& e : fs::directory_iterator(dir / "a")) {
    if (e.path().filename().string().rfind("episode_", 0) == 0) ++episodes;
  }
  EXPECT_EQ(episodes, 100);
  const auto agg = read_file(dir / "a" / "aggregate.csv");
  EXPECT_EQ(std::count(agg.begin(), agg.end(), '\n'), 101);
  const auto manifest = json::parse(read_file(dir / "a" / "manifest.json"));
  EXPECT_EQ(manifest.at("seeds").size(), 100u);
  EXPECT_TRUE(manifest.contains("config_hash"));

  const auto b = run("simulate --config " + q(dir / "cfg.json") + " --seed 1 --episodes 100 --jobs 1 --out-dir " +
                     q(dir / "b"));
  ASSERT_EQ(b.code, 0) << b.out;
  EXPECT_EQ(agg, read_file(dir / "b" / "aggregate.csv"));
  EXPECT_TRUE(read_file(dir / "a" / "episode_42.csv") == read_file(dir / "b" / "episode_42.csv"));
}

TEST(Cli, SimulateReusesMapAndRejectsMismatch) {
  TempDir dir;
  ASSERT_EQ(run("build-map --preset tiny --out " + q(dir / "m.bin")).code, 0);
  const auto r = run("simulate --preset tiny --map " + q(dir / "m.bin") + " --dispatch-log --out-dir " + q(dir / "o"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::exists(dir / "o" / "dispatch_1.csv"));
  const auto bad = run("simulate --preset tiny --seed 1 --map " + q(dir / "m.bin") + " --out-dir " + q(dir / "x") +
                       " --config " + q(dir / "nope.json"));
  EXPECT_EQ(bad.code, 2);
  write_file(dir / "cfg.json", R"({"preset":"tiny","network":{"seed":99}})");
  EXPECT_EQ(run("simulate --config " + q(dir / "cfg.json") + " --map " + q(dir / "m.bin") + " --out-dir " +
                q(dir / "y"))
                .code,
            2);
}
