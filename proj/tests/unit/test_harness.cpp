#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "rumor/error.hpp"
#include "rumor/harness.hpp"

using namespace rumor;

namespace {

ExperimentConfig base_config(Family f, std::vector<std::size_t> ns, std::size_t trials) {
  ExperimentConfig cfg;
  FamilySpec s;
  s.family = f;
  s.n = ns.front();
  cfg.families.push_back(s);
  cfg.n_values = std::move(ns);
  cfg.trials = trials;
  cfg.master_seed = 2718;
  return cfg;
}

std::string csv_of(const SweepResult& r) {
  std::ostringstream os;
  write_trials_csv(os, r.trials);
  return os.str();
}

}  // namespace

TEST(Harness, CompleteTwoIsForced) {
  auto cfg = base_config(Family::complete, {2}, 100);
  const auto r = run_trials(cfg);
  ASSERT_EQ(r.summaries.size(), 1u);
  EXPECT_EQ(r.summaries[0].mean_rounds, 1.0);
  EXPECT_EQ(r.summaries[0].sd_rounds, 0.0);
  EXPECT_EQ(r.summaries[0].completion_rate, 1.0);
}

TEST(Harness, StarPushPullFinishesInTwo) {
  auto cfg = base_config(Family::star, {64}, 100);
  cfg.protocol = Protocol::push_pull;
  cfg.start_vertex = std::nullopt;
  const auto r = run_trials(cfg);
  EXPECT_LE(r.summaries[0].mean_rounds, 2.0);
  EXPECT_EQ(r.summaries[0].completion_rate, 1.0);
  for (const auto& row : r.trials) EXPECT_LE(row.rounds, 2u);
}

TEST(Harness, RerunIsByteIdenticalAcrossThreadCounts) {
  auto cfg = base_config(Family::gnp, {64, 128, 256}, 30);
  cfg.families[0].p = 0.1;
  cfg.protocol = Protocol::pull;
  cfg.q = 0.7;
  cfg.start_vertex = std::nullopt;
  cfg.threads = 1;
  const auto a = run_trials(cfg);
  cfg.threads = 4;
  const auto b = run_trials(cfg);
  EXPECT_EQ(csv_of(a), csv_of(b));
  EXPECT_EQ(summary_to_json(a, nullptr).dump(), summary_to_json(b, nullptr).dump());
  cfg.master_seed += 1;
  EXPECT_NE(csv_of(a), csv_of(run_trials(cfg)));
}

TEST(Harness, CsvLayout) {
  auto cfg = base_config(Family::complete, {2}, 2);
  const std::string csv = csv_of(run_trials(cfg));
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "family,n,protocol,q,trial,seed,T,T_tilde,completed");
  EXPECT_EQ(row.rfind("complete,2,push,1,0,", 0), 0u) << row;
  EXPECT_EQ(row.substr(row.size() - 6), ",1,0,1");
}

TEST(Harness, ConfigValidation) {
  auto cfg = base_config(Family::complete, {8, 4}, 5);
  EXPECT_THROW(validate(cfg), Error);
  cfg.n_values = {4, 8};
  cfg.trials = 0;
  EXPECT_THROW(validate(cfg), Error);
}

TEST(Harness, DisconnectedTrialsAreReportedNotCounted) {
  const std::vector<Edge> two{{0, 1}, {2, 3}};
  ExperimentConfig cfg;
  cfg.trials = 5;
  cfg.max_rounds = 10;
  const auto r = run_trials_on(Graph::from_edges(4, two), "pair", cfg);
  EXPECT_EQ(r.summaries[0].completed, 0u);
  EXPECT_EQ(r.summaries[0].completion_rate, 0.0);
}

TEST(Harness, SlopeFitExamples) {
  const std::vector<std::pair<double, double>> pts{
      {std::exp(1.0), 5.5}, {std::exp(2.0), 8.0}, {std::exp(3.0), 10.5}};
  const auto fit = fit_slope(pts);
  EXPECT_NEAR(fit.slope, 2.5, 1e-12);
  EXPECT_NEAR(fit.intercept, 3.0, 1e-12);
  EXPECT_NEAR(fit.max_residual, 0.0, 1e-12);
  const std::vector<std::pair<double, double>> single{{10.0, 1.0}, {10.0, 2.0}, {10.0, 3.0}};
  EXPECT_THROW((void)fit_slope(single), Error);
  const std::vector<std::pair<double, double>> two{{10.0, 1.0}, {20.0, 2.0}};
  EXPECT_THROW((void)fit_slope(two), Error);
}

TEST(Harness, BootstrapComparison) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> b(200);
  for (double& x : b) x = 10.0 + z(rng);
  const auto same = compare_means(b, b, 1);
  EXPECT_EQ(same.difference, 0.0);
  EXPECT_GE(same.p_value, 0.4);
  EXPECT_LE(same.p_value, 0.6);
  std::vector<double> a(b);
  for (double& x : a) x += 5.0;
  const auto shifted = compare_means(a, b, 2);
  EXPECT_NEAR(shifted.difference, 5.0, 1e-9);
  EXPECT_LT(shifted.p_value, 0.001);
  EXPECT_EQ(compare_means(a, b, 2).p_value, shifted.p_value);
  EXPECT_THROW((void)compare_means(std::vector<double>{}, b, 1), Error);
}

TEST(Harness, QuantilesAndSummary) {
  const std::vector<double> xs{1, 2, 3, 4, 5};
  EXPECT_DOUBLE_EQ(quantile_sorted(xs, 0.5), 3.0);
  EXPECT_DOUBLE_EQ(quantile_sorted(xs, 0.05), 1.2);
  EXPECT_DOUBLE_EQ(quantile_sorted(xs, 0.95), 4.8);
  std::vector<TrialRow> rows(4);
  for (std::size_t i = 0; i < 4; ++i) {
    rows[i].trial = i;
    rows[i].completed = i < 3;
    rows[i].rounds = 2 + i;
  }
  const auto s = summarize("x", 10, rows);
  EXPECT_EQ(s.completed, 3u);
  EXPECT_DOUBLE_EQ(s.completion_rate, 0.75);
  EXPECT_DOUBLE_EQ(s.mean_rounds, 3.0);
  EXPECT_DOUBLE_EQ(s.sd_rounds, 1.0);
}

TEST(Harness, FormattingUsesTwelveDigits) {
  EXPECT_EQ(format_real(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_real(2.0), "2");
  EXPECT_DOUBLE_EQ(round_significant(2.4426950408889634), 2.44269504089);
}

TEST(Harness, MidPhaseRatioOnCompleteGraph) {
  ProtocolConfig c;
  c.protocol = Protocol::pull;
  const auto r = simulate(Graph::complete(4096), c, 3);
  const auto ratio = mid_phase_boundary_ratio(r, 4096);
  ASSERT_TRUE(ratio.has_value());
  EXPECT_GT(*ratio, 1.5);
  EXPECT_LT(*ratio, 2.5);
}

TEST(Harness, LabelsIncludeParameters) {
  FamilySpec s;
  s.family = Family::gnp;
  s.n = 10;
  s.p = 0.1;
  EXPECT_EQ(family_label(s), "gnp:p=0.1");
  s.family = Family::complete;
  s.p.reset();
  EXPECT_EQ(family_label(s), "complete");
}
