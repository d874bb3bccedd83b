#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rumor/generators.hpp"
#include "rumor/protocol.hpp"

namespace rumor {

struct ExperimentConfig {
  /// Graph families; each spec's n is replaced by every entry of n_values.
  std::vector<FamilySpec> families;
  Protocol protocol = Protocol::push;
  double q = 1.0;
  /// Strictly increasing.
  std::vector<std::size_t> n_values;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  bool thresholds = true;
  /// Fixed start vertex; nullopt draws a uniform start per trial.
  std::optional<Vertex> start_vertex = Vertex{0};
  std::optional<std::size_t> max_rounds;
  /// 0 means: hardware concurrency, capped by RUMOR_THREADS when set.
  std::size_t threads = 0;
  /// Keep full per-trial results (with traces) in SweepResult::results.
  bool keep_results = false;
  std::optional<std::filesystem::path> csv_path;
  std::optional<std::filesystem::path> summary_path;
};

/// Throws Error(invalid_spec).
void validate(const ExperimentConfig& cfg);

/// "gnp:p=0.1", "push-adversary:eps=0.3", "complete", ...
std::string family_label(const FamilySpec& spec);

struct TrialRow {
  std::string family;
  std::size_t n = 0;
  Protocol protocol = Protocol::push;
  double q = 1.0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  Vertex start = 0;
  bool completed = false;
  std::size_t rounds = 0;
  std::optional<std::size_t> rounds_tilde;

  friend bool operator==(const TrialRow&, const TrialRow&) = default;
};

/// Aggregate for one (family, n) point. Runtime statistics cover completed
/// trials only; non-completion shows up in completion_rate.
struct Summary {
  std::string family;
  std::size_t n = 0;
  std::uint64_t graph_seed = 0;
  std::uint64_t master_seed = 0;
  std::size_t trials = 0;
  std::size_t completed = 0;
  double completion_rate = 0.0;
  double mean_rounds = 0.0;
  double sd_rounds = 0.0;
  double q05 = 0.0;
  double q50 = 0.0;
  double q95 = 0.0;
  std::optional<double> mean_rounds_tilde;
};

struct SweepResult {
  std::vector<Summary> summaries;
  std::vector<TrialRow> trials;
  std::vector<TrialResult> results;
};

/// Runs every (family, n, trial). Graphs are generated once per point from
/// derive_seed(master, {family_index, n, "graph"}); trial seeds are
/// derive_seed(master, {family_index, n, trial}). The output does not depend on
/// the thread count. Propagates generation_failure.
SweepResult run_trials(const ExperimentConfig& cfg);

/// Same as run_trials for one externally supplied graph (n_values and
/// families are ignored; `label` names the family column).
SweepResult run_trials_on(const Graph& g, const std::string& label, const ExperimentConfig& cfg);

/// Effective worker count for a requested value (see ExperimentConfig::threads).
std::size_t resolve_threads(std::size_t requested);

Summary summarize(std::string family, std::size_t n, std::span<const TrialRow> rows);

/// Type-7 (linear interpolation) sample quantile of sorted data.
double quantile_sorted(std::span<const double> sorted, double prob);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

/// Ordinary least squares of mean runtime against ln n. Needs at least three
/// points and two distinct n; throws Error(degenerate_input) otherwise.
SlopeFit fit_slope(std::span<const std::pair<double, double>> points);

struct MeanComparison {
  double difference = 0.0;
  double p_value = 1.0;
};

/// One-sided bootstrap test of mean(a) > mean(b): both samples are shifted to
/// the pooled mean, resampled with replacement, and the p-value is
/// (1 + #{resampled difference >= observed}) / (1 + resamples).
MeanComparison compare_means(std::span<const double> a, std::span<const double> b,
                             std::uint64_t seed, std::size_t resamples = 10000);

/// Average of e(I_{t+1}, U_{t+1}) / e(I_t, U_t) over rounds with
/// sqrt(ln n) <= |I_t| <= n / ln n; nullopt when no round qualifies.
std::optional<double> mid_phase_boundary_ratio(const TrialResult& result, std::size_t n);

/// Fixed 12-significant-digit formatting used for every float written out.
std::string format_real(double x);
double round_significant(double x);

void write_trials_csv(std::ostream& out, std::span<const TrialRow> rows);
nlohmann::ordered_json summary_to_json(const SweepResult& result, const nlohmann::json& meta);

}  // namespace rumor
