#include "rumor/protocol.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <nlohmann/json.hpp>
#include <ostream>
#include <string>

#include "rumor/error.hpp"

namespace rumor {

std::string_view to_string(Protocol protocol) noexcept {
  switch (protocol) {
    case Protocol::push: return "push";
    case Protocol::pull: return "pull";
    case Protocol::push_pull: return "pp";
  }
  return "unknown";
}

Protocol parse_protocol(std::string_view name) {
  if (name == "push") return Protocol::push;
  if (name == "pull") return Protocol::pull;
  if (name == "pp" || name == "push-pull" || name == "pushpull") return Protocol::push_pull;
  throw Error(ErrorKind::invalid_spec, "unknown protocol '" + std::string(name) + "'");
}

std::size_t default_max_rounds(std::size_t n) {
  const std::size_t log2_ceil = n <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(n - 1));
  return 64 * log2_ceil + 64;
}

std::size_t tilde_threshold(std::size_t n) {
  if (n <= 2) return 1;
  const auto slack =
      static_cast<std::size_t>(std::ceil(static_cast<double>(n) / std::log(static_cast<double>(n))));
  return slack >= n ? 1 : std::max<std::size_t>(1, n - slack);
}

RumourSpread::RumourSpread(const Graph& g, const ProtocolConfig& cfg)
    : g_(&g), protocol_(cfg.protocol), q_(cfg.q), state_(g.order(), kUninformed) {
  if (!(cfg.q > 0.0 && cfg.q <= 1.0)) {
    throw Error(ErrorKind::invalid_spec, "q must lie in (0, 1]");
  }
  informed_list_.reserve(g.order());
}

void RumourSpread::reset(std::span<const Vertex> informed) {
  std::fill(state_.begin(), state_.end(), kUninformed);
  informed_list_.clear();
  pending_.clear();
  boundary_ = 0;
  for (Vertex v : informed) {
    if (v >= g_->order()) {
      throw Error(ErrorKind::out_of_range, "informed vertex " + std::to_string(v) +
                                               " out of range for n=" + std::to_string(g_->order()));
    }
    if (state_[v] == kUninformed) commit(v);
  }
}

Vertex RumourSpread::pick_neighbor(Vertex v, Rng& rng) const {
  std::uniform_int_distribution<std::size_t> dist(0, g_->degree(v) - 1);
  return g_->neighbor(v, dist(rng));
}

bool RumourSpread::transmit(Rng& rng) const {
  if (q_ >= 1.0) return true;
  return std::bernoulli_distribution(q_)(rng);
}

void RumourSpread::mark(Vertex v) {
  state_[v] = kPending;
  pending_.push_back(v);
}

// Adds v to I and updates e(I, U) by deg(v) - 2 |N(v) ∩ I|.
void RumourSpread::commit(Vertex v) {
  std::size_t informed_neighbors = 0;
  const auto row = g_->stored_row(v);
  if (g_->row_is_complement(v)) {
    std::size_t informed_missing = 0;
    for (Vertex w : row) informed_missing += (state_[w] == kInformed);
    informed_neighbors = informed_list_.size() - informed_missing;
  } else {
    for (Vertex w : row) informed_neighbors += (state_[w] == kInformed);
  }
  boundary_ = boundary_ + g_->degree(v) - 2 * informed_neighbors;
  state_[v] = kInformed;
  informed_list_.push_back(v);
}

std::size_t RumourSpread::step(Rng& rng) {
  const std::size_t n = g_->order();
  const std::size_t before = informed_list_.size();
  pending_.clear();

  switch (protocol_) {
    case Protocol::push:
      for (std::size_t i = 0; i < before; ++i) {
        const Vertex u = informed_list_[i];
        if (g_->degree(u) == 0) continue;
        const Vertex w = pick_neighbor(u, rng);
        if (state_[w] == kUninformed && transmit(rng)) mark(w);
      }
      break;
    case Protocol::pull:
      for (Vertex u = 0; u < n; ++u) {
        if (state_[u] != kUninformed || g_->degree(u) == 0) continue;
        const Vertex w = pick_neighbor(u, rng);
        if (state_[w] == kInformed && transmit(rng)) mark(u);
      }
      break;
    case Protocol::push_pull:
      // Each vertex makes one contact; the contact carries a push when the
      // caller is in I_t and a pull when only the callee is. Vertices marked
      // earlier in this round still count as uninformed.
      for (Vertex u = 0; u < n; ++u) {
        if (g_->degree(u) == 0) continue;
        const Vertex w = pick_neighbor(u, rng);
        if (state_[u] == kInformed) {
          if (state_[w] == kUninformed && transmit(rng)) mark(w);
        } else if (state_[w] == kInformed) {
          if (state_[u] == kUninformed && transmit(rng)) mark(u);
        }
      }
      break;
  }

  for (Vertex v : pending_) commit(v);
  assert(informed_list_.size() >= before);
  return informed_list_.size() - before;
}

std::vector<Vertex> run_round(const Graph& g, std::span<const Vertex> informed,
                              const ProtocolConfig& cfg, Rng& rng) {
  RumourSpread spread(g, cfg);
  spread.reset(informed);
  if (spread.informed_count() == 0) {
    throw Error(ErrorKind::invalid_spec, "run_round needs a nonempty informed set");
  }
  spread.step(rng);
  std::vector<Vertex> out(spread.informed().begin(), spread.informed().end());
  std::sort(out.begin(), out.end());
  return out;
}

TrialResult simulate(const Graph& g, const ProtocolConfig& cfg, std::uint64_t seed) {
  const std::size_t n = g.order();
  if (n == 0) throw Error(ErrorKind::invalid_spec, "simulate needs at least one vertex");
  if (cfg.start_vertex >= n) {
    throw Error(ErrorKind::out_of_range, "start vertex " + std::to_string(cfg.start_vertex) +
                                             " out of range for n=" + std::to_string(n));
  }
  const std::size_t max_rounds = cfg.max_rounds.value_or(default_max_rounds(n));
  const std::size_t threshold = tilde_threshold(n);

  TrialResult result;
  result.seed = seed;
  Rng rng(seed);
  RumourSpread spread(g, cfg);
  const Vertex start[] = {cfg.start_vertex};
  spread.reset(start);

  std::size_t t = 1;
  std::size_t fresh = 1;
  while (true) {
    result.trace.push_back({t, spread.informed_count(), spread.boundary(), fresh});
    if (cfg.tilde_threshold_enabled && !result.rounds_tilde &&
        spread.informed_count() >= threshold) {
      result.rounds_tilde = t - 1;
    }
    if (spread.all_informed()) {
      result.completed = true;
      result.rounds = t - 1;
      break;
    }
    if (t - 1 >= max_rounds) {
      result.rounds = max_rounds;
      break;
    }
    fresh = spread.step(rng);
    ++t;
  }
  return result;
}

void write_trace_jsonl(std::ostream& out, std::span<const RoundRecord> trace) {
  for (const auto& r : trace) {
    nlohmann::ordered_json line = {
        {"t", r.t}, {"informed", r.informed}, {"boundary", r.boundary}, {"new", r.newly_informed}};
    out << line.dump() << '\n';
  }
}

}  // namespace rumor
