#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "rumor/generators.hpp"
#include "rumor/graph_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "rumor");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = rumor::cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "rumor_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, PredictPullOnThousandVertices) {
  const auto r = run({"predict", "--protocol", "pull", "--q", "1", "--n", "1000"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string first, second;
  std::getline(lines, first);
  std::getline(lines, second);
  EXPECT_NEAR(json::parse(first)["value"].get<double>(), 1.442695, 1e-6);
  EXPECT_NEAR(json::parse(second)["value"].get<double>(), 9.9657, 1e-3);
  EXPECT_NE(r.err.find("\"command\":\"predict\""), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"simulate", "--q", "abc"}).code, 2);
  EXPECT_EQ(run({"sweep", "--family", "complete", "--n-list", "8,16,32", "--out", "x"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "oracle"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "nonsense", "--seed", "1"}).code, 2);
  EXPECT_EQ(run({"simulate", "--family", "gnp", "--n", "20", "--seed", "1"}).code, 2);
  EXPECT_EQ(run({"simulate", "--family", "complete", "--n", "20", "--q", "1.5", "--seed", "1"}).code, 2);
  EXPECT_EQ(run({"predict", "--family", "star", "--n", "100"}).code, 2);
  EXPECT_EQ(run({"sweep", "--family", "complete", "--n-list", "32,16,8", "--seed", "1", "--out",
                 scratch("bad").string()})
                .code,
            2);
}

TEST(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("simulate"), std::string::npos);
}

TEST(Cli, SimulateStarPushPull) {
  const auto r = run({"simulate", "--family", "star", "--n", "64", "--protocol", "pp", "--q", "1", "--trials", "10",
                      "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  ASSERT_EQ(doc["T"].size(), 10u);
  for (const auto& t : doc["T"]) EXPECT_LE(t.get<int>(), 2);
  EXPECT_EQ(doc["meta"]["config"]["seed"], 1);
}

TEST(Cli, SimulateWithoutSeedEchoesOne) {
  const auto r = run({"simulate", "--family", "complete", "--n", "16", "--trials", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("\"seed\":"), std::string::npos);
}

TEST(Cli, GenerateRoundTrip) {
  const auto path = scratch("adv.json");
  const auto r = run({"generate", "--family", "push-adversary", "--n", "60", "--eps", "0.2", "--seed", "9", "--out",
                      path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  rumor::FamilySpec s;
  s.family = rumor::Family::push_adversary;
  s.n = 60;
  s.eps = 0.2;
  EXPECT_EQ(rumor::load_graph(path), rumor::generate(s, 9));
  const json doc = json::parse(slurp(path));
  EXPECT_EQ(doc["meta"]["version"], "0.3.0");
  EXPECT_EQ(doc["meta"]["config"]["seed"], 9);

  const auto sim = run({"simulate", "--graph", path.string(), "--protocol", "pull", "--trials", "3", "--seed", "4"});
  EXPECT_EQ(sim.code, 0) << sim.err;
}

TEST(Cli, SweepWritesCsvAndSummary) {
  const auto prefix = scratch("sweep").string();
  const std::vector<std::string> args{"sweep", "--family", "complete", "--n-list", "32,64,128", "--protocol",
                                      "push", "--trials", "20", "--seed", "5", "--out", prefix};
  ASSERT_EQ(run(args).code, 0);
  const std::string first = slurp(prefix + ".csv");
  const json summary = json::parse(slurp(prefix + ".summary.json"));
  EXPECT_EQ(summary["meta"]["command"], "sweep");
  EXPECT_TRUE(summary.contains("slope_fit"));
  ASSERT_EQ(run(args).code, 0);
  EXPECT_EQ(slurp(prefix + ".csv"), first);
}

TEST(Cli, SimulateFailsOnStuckConnectedRun) {
  const auto r = run({"simulate", "--family", "complete", "--n", "200", "--protocol", "push", "--max-rounds", "2",
                      "--seed", "1"});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, VerifySuites) {
  const auto sb = run({"verify", "--suite", "self-bounding", "--seed", "1"});
  EXPECT_EQ(sb.code, 0) << sb.err;
  EXPECT_TRUE(json::parse(sb.out)["pass"].get<bool>());
  const auto sp = run({"verify", "--suite", "spectral", "--seed", "1"});
  EXPECT_EQ(sp.code, 0) << sp.err;
}

TEST(Cli, DiagnoseReportsProfileAndBound) {
  const auto r = run({"diagnose", "--family", "gnp", "--n", "80", "--p", "0.2", "--seed", "3", "--samples", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["mixing"].size(), 5u);
  for (const auto& m : doc["mixing"])
    EXPECT_LE(m["deviation"].get<double>(), m["lambda_bound"].get<double>() + 1e-9);
}
