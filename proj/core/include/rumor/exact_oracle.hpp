#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>
#include <span>
#include <string>
#include <vector>

#include "rumor/graph.hpp"
#include "rumor/protocol.hpp"

namespace rumor::exact {

inline constexpr std::size_t kMaxVertices = 20;
inline constexpr std::size_t kMaxChoosers = 12;
inline constexpr std::uint64_t kMaxConfigurations = std::uint64_t{1} << 24;

using Mask = std::uint32_t;

Mask to_mask(std::span<const Vertex> vertices);
std::vector<Vertex> from_mask(Mask mask);

/// Exact distribution of I_{t+1} given I_t, keyed by bitmask.
struct RoundPMF {
  std::size_t n = 0;
  Mask start = 0;
  std::map<Mask, double> outcomes;

  /// Index k holds P(|I_{t+1}| = k), k = 0..n.
  std::vector<double> size_pmf() const;
  double mean() const;
  double variance() const;
  double mean_uninformed() const { return static_cast<double>(n) - mean(); }
  double total_probability() const;
};

/// Enumerates every joint neighbour choice of the active callers (push: I_t,
/// pull: U_t, pp: everyone) and, per choice, sums the q-coin patterns in
/// closed form: a vertex hit by k messages is informed with probability
/// 1 - (1-q)^k, independently across vertices. Same semantics as run_round.
/// Throws Error(instance_too_large) beyond 20 vertices, 12 callers or 2^24
/// choice configurations.
RoundPMF exact_round_pmf(const Graph& g, std::span<const Vertex> informed,
                         const ProtocolConfig& cfg);

struct SelfBoundingReport {
  double variance = 0.0;
  double mean = 0.0;
  bool pass = false;
};

/// Var[|I_{t+1}|] <= E[|I_{t+1}|] + 1e-12 on the exact distribution.
SelfBoundingReport verify_self_bounding(const Graph& g, std::span<const Vertex> informed,
                                        const ProtocolConfig& cfg);

struct ExpectationReport {
  double pull_formula = 0.0;
  double pull_exact = 0.0;
  double push_formula = 0.0;
  double push_exact = 0.0;
  bool pass = false;
};

/// Compares the exact expected number of uninformed vertices after one round
/// with sum_u (1 - q|N(u) ∩ I|/|N(u)|) for pull and
/// sum_u prod_{i in N(u) ∩ I} (1 - q/|N(i)|) for push, at tolerance 1e-12.
ExpectationReport verify_expectation_formulas(const Graph& g, std::span<const Vertex> informed,
                                              double q);

/// All connected labelled graphs on exactly n vertices (n <= 6).
std::vector<Graph> connected_graphs(std::size_t n);

struct CaseRecord {
  std::size_t graph_index = 0;
  std::size_t n = 0;
  std::vector<Edge> edges;
  Mask informed = 0;
  Protocol protocol = Protocol::push;
  double q = 1.0;
  /// Self-bounding sweep: moments of |I_{t+1}|.
  double mean = 0.0;
  double variance = 0.0;
  /// Expectation sweep: expected uninformed count, closed form and exact.
  double formula = 0.0;
  double exact = 0.0;
  bool pass = false;
};

struct SweepReport {
  std::string suite;
  std::size_t cases = 0;
  std::size_t failures = 0;
  /// Largest observed violation margin (negative when every case passes).
  double worst_margin = std::numeric_limits<double>::lowest();
  std::vector<CaseRecord> records;

  bool pass() const noexcept { return failures == 0 && cases > 0; }
};

/// Every connected graph on 1..max_n vertices, every nonempty informed set,
/// every protocol and every q: checks Var <= E.
SweepReport self_bounding_sweep(std::size_t max_n, std::span<const double> qs,
                                bool keep_records = false);

/// Same enumeration for push and pull, checking the expected uninformed count
/// against its closed form (one record per protocol).
SweepReport expectation_sweep(std::size_t max_n, std::span<const double> qs,
                              bool keep_records = false);

struct AgreementReport {
  double exact_mean = 0.0;
  double exact_variance = 0.0;
  double sample_mean = 0.0;
  double standard_error = 0.0;
  double z = 0.0;
  bool pass = false;
};

/// Monte Carlo mean of |I_{t+1}| over `repetitions` engine rounds versus the
/// exact mean; passes within `max_z` standard errors (exact match when the
/// outcome is deterministic).
AgreementReport monte_carlo_agreement(const Graph& g, std::span<const Vertex> informed,
                                      const ProtocolConfig& cfg, std::size_t repetitions,
                                      std::uint64_t seed, double max_z = 4.0);

struct TinyInstance {
  std::string name;
  Graph graph;
  std::vector<Vertex> informed;
  ProtocolConfig config;
};

/// The fixed set of 20 small instances used for engine/oracle agreement.
std::vector<TinyInstance> reference_instances();

nlohmann::ordered_json to_json(const SweepReport& report, bool include_records);

}  // namespace rumor::exact
