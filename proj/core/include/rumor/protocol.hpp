#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rumor/graph.hpp"
#include "rumor/rng.hpp"

namespace rumor {

enum class Protocol { push, pull, push_pull };

std::string_view to_string(Protocol protocol) noexcept;
/// Accepts "push", "pull", "pp" (also "push-pull").
Protocol parse_protocol(std::string_view name);

struct ProtocolConfig {
  Protocol protocol = Protocol::push;
  /// Per-message success probability, in (0, 1].
  double q = 1.0;
  Vertex start_vertex = 0;
  /// Defaults to default_max_rounds(n) when unset.
  std::optional<std::size_t> max_rounds;
  bool tilde_threshold_enabled = true;
};

/// 64 * ceil(log2 n) + 64.
std::size_t default_max_rounds(std::size_t n);

/// n - ceil(n / ln n), clamped to at least 1; the informed count at which the
/// almost-everyone stopping time is recorded.
std::size_t tilde_threshold(std::size_t n);

/// State of the rumour at the beginning of round t. t starts at 1 with |I_1| = 1.
struct RoundRecord {
  std::size_t t = 0;
  std::size_t informed = 0;
  std::size_t boundary = 0;
  std::size_t newly_informed = 0;

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct TrialResult {
  bool completed = false;
  /// Rounds executed until I_t = V (T), or max_rounds when not completed.
  std::size_t rounds = 0;
  /// Rounds executed until |I_t| >= tilde_threshold(n).
  std::optional<std::size_t> rounds_tilde;
  std::uint64_t seed = 0;
  std::vector<RoundRecord> trace;

  friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

/// Synchronous-round rumour state over a fixed graph. Every decision in a round
/// reads I_t only; vertices reached during the round join I_{t+1} together.
/// The edge boundary e(I_t, U_t) is maintained incrementally.
class RumourSpread {
 public:
  RumourSpread(const Graph& g, const ProtocolConfig& cfg);

  /// Resets to the given informed set (duplicates ignored). Throws out_of_range.
  void reset(std::span<const Vertex> informed);

  /// Executes one round; returns the number of newly informed vertices.
  std::size_t step(Rng& rng);

  std::size_t informed_count() const noexcept { return informed_list_.size(); }
  std::size_t boundary() const noexcept { return boundary_; }
  bool is_informed(Vertex v) const { return state_[v] == kInformed; }
  bool all_informed() const noexcept { return informed_list_.size() == g_->order(); }
  /// Informed vertices in the order they were reached.
  std::span<const Vertex> informed() const noexcept { return informed_list_; }

 private:
  static constexpr std::uint8_t kUninformed = 0;
  static constexpr std::uint8_t kInformed = 1;
  static constexpr std::uint8_t kPending = 2;

  const Graph* g_;
  Protocol protocol_;
  double q_;
  std::vector<std::uint8_t> state_;
  std::vector<Vertex> informed_list_;
  std::vector<Vertex> pending_;
  std::size_t boundary_ = 0;

  Vertex pick_neighbor(Vertex v, Rng& rng) const;
  bool transmit(Rng& rng) const;
  void mark(Vertex v);
  void commit(Vertex v);
};

/// One synchronous round from `informed`; returns I_{t+1} sorted ascending.
std::vector<Vertex> run_round(const Graph& g, std::span<const Vertex> informed,
                              const ProtocolConfig& cfg, Rng& rng);

/// Runs from I_1 = {start_vertex} until everyone is informed or max_rounds.
/// Deterministic in (g, cfg, seed).
TrialResult simulate(const Graph& g, const ProtocolConfig& cfg, std::uint64_t seed);

/// JSON lines, one object per round: {"t":..,"informed":..,"boundary":..,"new":..}.
void write_trace_jsonl(std::ostream& out, std::span<const RoundRecord> trace);

}  // namespace rumor
