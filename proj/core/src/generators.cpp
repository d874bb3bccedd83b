#include "rumor/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "rumor/error.hpp"
#include "rumor/rng.hpp"

namespace rumor {
namespace {

constexpr int kConnectivityAttempts = 100;
constexpr int kSwitchAttemptsPerDefect = 1000;

std::size_t robust_ceil(double x) {
  return static_cast<std::size_t>(std::ceil(x - 1e-9));
}

[[noreturn]] void bad_spec(const std::string& msg) {
  throw Error(ErrorKind::invalid_spec, msg);
}

// Configuration model with repair. Loops and repeated pairs are removed by
// switching each defective pair {a,b} against a random good pair {c,e} into
// {a,c},{b,e}; this keeps every degree fixed.
std::vector<Edge> pairing_with_switchings(std::size_t m, std::size_t d, Rng& rng,
                                          bool parity_slack) {
  std::vector<Vertex> stubs;
  stubs.reserve(m * d);
  for (std::size_t v = 0; v < m; ++v) stubs.insert(stubs.end(), d, static_cast<Vertex>(v));
  if (stubs.size() % 2 == 1) {
    if (!parity_slack) {
      throw Error(ErrorKind::generation_failure,
                  "no " + std::to_string(d) + "-regular graph on " + std::to_string(m) +
                      " vertices (odd degree sum)");
    }
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    const auto short_vertex = static_cast<Vertex>(pick(rng));
    stubs.erase(std::find(stubs.begin(), stubs.end(), short_vertex));
  }
  std::shuffle(stubs.begin(), stubs.end(), rng);

  const std::size_t pair_count = stubs.size() / 2;
  std::vector<Edge> pairs(pair_count);
  std::unordered_map<std::uint64_t, std::uint32_t> multiplicity;
  multiplicity.reserve(pair_count * 2);
  auto key = [m](Vertex a, Vertex b) {
    return a < b ? std::uint64_t{a} * m + b : std::uint64_t{b} * m + a;
  };
  auto count = [&](std::uint64_t k) -> std::uint32_t {
    auto it = multiplicity.find(k);
    return it == multiplicity.end() ? 0 : it->second;
  };
  auto remove_one = [&](std::uint64_t k) {
    auto it = multiplicity.find(k);
    if (--it->second == 0) multiplicity.erase(it);
  };

  std::vector<std::size_t> defects;
  for (std::size_t i = 0; i < pair_count; ++i) {
    pairs[i] = {stubs[2 * i], stubs[2 * i + 1]};
    const auto c = ++multiplicity[key(pairs[i].first, pairs[i].second)];
    if (pairs[i].first == pairs[i].second || c > 1) defects.push_back(i);
  }

  std::uniform_int_distribution<std::size_t> pick_pair(0, pair_count == 0 ? 0 : pair_count - 1);
  std::bernoulli_distribution flip(0.5);
  while (!defects.empty()) {
    const std::size_t i = defects.back();
    const auto [a, b] = pairs[i];
    if (a != b && count(key(a, b)) == 1) {  // resolved by an earlier switch
      defects.pop_back();
      continue;
    }
    bool switched = false;
    for (int attempt = 0; attempt < kSwitchAttemptsPerDefect && !switched; ++attempt) {
      const std::size_t j = pick_pair(rng);
      if (j == i) continue;
      auto [c, e] = pairs[j];
      if (c == e || count(key(c, e)) != 1) continue;
      if (flip(rng)) std::swap(c, e);
      if (a == c || b == e) continue;
      const auto k1 = key(a, c);
      const auto k2 = key(b, e);
      if (k1 == k2 || count(k1) != 0 || count(k2) != 0) continue;
      remove_one(key(a, b));
      remove_one(key(c, e));
      ++multiplicity[k1];
      ++multiplicity[k2];
      pairs[i] = {a, c};
      pairs[j] = {b, e};
      switched = true;
    }
    if (!switched) {
      throw Error(ErrorKind::generation_failure,
                  "pairing model could not realise degree " + std::to_string(d) + " on " +
                      std::to_string(m) + " vertices");
    }
    defects.pop_back();
  }
  return pairs;
}

std::vector<Edge> bernoulli_pairs(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> out;
  if (n < 2 || p <= 0.0) return out;
  if (p >= 1.0) {
    for (Vertex v = 1; v < n; ++v)
      for (Vertex w = 0; w < v; ++w) out.emplace_back(w, v);
    return out;
  }
  // Geometric skipping over the lower triangle (v, w), w < v.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double log_q = std::log1p(-p);
  std::size_t v = 1;
  std::int64_t w = -1;
  while (v < n) {
    const double r = unit(rng);
    w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
    while (w >= static_cast<std::int64_t>(v) && v < n) {
      w -= static_cast<std::int64_t>(v);
      ++v;
    }
    if (v < n) out.emplace_back(static_cast<Vertex>(w), static_cast<Vertex>(v));
  }
  return out;
}

// First block complete to everything; the second block carries `inner`.
Graph two_block(std::size_t n, const Graph& inner) {
  const std::size_t b = first_block_size(n);
  const std::size_t m = inner.order();
  std::vector<Edge> non_edges;
  for (Vertex u = 0; u < m; ++u) {
    for (Vertex v = u + 1; v < m; ++v) {
      if (!inner.adjacent(u, v)) {
        non_edges.emplace_back(static_cast<Vertex>(u + b), static_cast<Vertex>(v + b));
      }
    }
  }
  return Graph::from_non_edges(n, non_edges);
}

template <class Make>
Graph until_connected(std::uint64_t seed, const char* family, Make&& make) {
  for (int attempt = 0; attempt < kConnectivityAttempts; ++attempt) {
    Graph g = make(seed ^ static_cast<std::uint64_t>(attempt));
    if (is_connected(g)) return g;
  }
  throw Error(ErrorKind::generation_failure,
              std::string(family) + ": no connected sample within " +
                  std::to_string(kConnectivityAttempts) + " attempts");
}

}  // namespace

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::complete: return "complete";
    case Family::star: return "star";
    case Family::gnp: return "gnp";
    case Family::regular: return "regular";
    case Family::push_adversary: return "push-adversary";
    case Family::pp_adversary: return "pp-adversary";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::complete, Family::star, Family::gnp, Family::regular,
                   Family::push_adversary, Family::pp_adversary}) {
    if (to_string(f) == name) return f;
  }
  bad_spec("unknown family '" + std::string(name) + "'");
}

void validate(const FamilySpec& spec) {
  const bool wants_p = spec.family == Family::gnp;
  const bool wants_d = spec.family == Family::regular;
  const bool wants_eps =
      spec.family == Family::push_adversary || spec.family == Family::pp_adversary;
  const std::string name(to_string(spec.family));

  if (spec.p.has_value() != wants_p)
    bad_spec(name + (wants_p ? " requires p" : " does not take p"));
  if (spec.d.has_value() != wants_d)
    bad_spec(name + (wants_d ? " requires d" : " does not take d"));
  if (spec.eps.has_value() != wants_eps)
    bad_spec(name + (wants_eps ? " requires eps" : " does not take eps"));
  if (spec.n < 1) bad_spec(name + ": n must be at least 1");

  switch (spec.family) {
    case Family::complete:
      break;
    case Family::star:
      if (spec.n < 2) bad_spec("star: n must be at least 2");
      break;
    case Family::gnp:
      if (!(*spec.p > 0.0 && *spec.p <= 1.0)) bad_spec("gnp: p must lie in (0, 1]");
      break;
    case Family::regular:
      if (*spec.d + 1 > spec.n) bad_spec("regular: d must be at most n-1");
      break;
    case Family::push_adversary:
    case Family::pp_adversary:
      if (spec.n < 8) bad_spec(name + ": n must be at least 8");
      if (!(*spec.eps > 0.0 && *spec.eps < 0.5)) bad_spec(name + ": eps must lie in (0, 1/2)");
      if (spec.family == Family::push_adversary &&
          robust_ceil((1.0 - *spec.eps) * static_cast<double>(spec.n)) + 1 > spec.n) {
        bad_spec("push-adversary: ceil((1-eps) n) exceeds n-1; increase n or eps");
      }
      break;
  }
}

std::size_t push_adversary_target_degree(std::size_t n, double eps) {
  return robust_ceil((1.0 - eps) * static_cast<double>(n)) + 1;
}

std::size_t retention_quota(double keep_fraction, std::size_t degree) {
  return std::min(degree, robust_ceil(keep_fraction * static_cast<double>(degree)));
}

Graph near_regular(std::size_t m, std::size_t d, std::uint64_t seed, bool parity_slack) {
  if (m == 0) return Graph::from_edges(0, {});
  if (d + 1 > m) {
    throw Error(ErrorKind::generation_failure,
                "degree " + std::to_string(d) + " impossible on " + std::to_string(m) +
                    " vertices");
  }
  Rng rng(seed);
  if (2 * d > m - 1) {
    // m(m-1) is even, so the complement degree has the same parity defect.
    const auto sparse = pairing_with_switchings(m, m - 1 - d, rng, parity_slack);
    return Graph::from_non_edges(m, sparse);
  }
  const auto pairs = pairing_with_switchings(m, d, rng, parity_slack);
  return Graph::from_edges(m, pairs);
}

Graph gnp_graph(std::size_t n, double p, std::uint64_t seed) {
  if (!(p > 0.0 && p <= 1.0)) bad_spec("gnp: p must lie in (0, 1]");
  Rng rng(seed);
  if (p > 0.5) {
    const auto absent = bernoulli_pairs(n, 1.0 - p, rng);
    return Graph::from_non_edges(n, absent);
  }
  const auto present = bernoulli_pairs(n, p, rng);
  return Graph::from_edges(n, present);
}

Graph generate(const FamilySpec& spec, std::uint64_t seed) {
  validate(spec);
  const std::size_t n = spec.n;
  switch (spec.family) {
    case Family::complete:
      return Graph::complete(n);
    case Family::star: {
      std::vector<Edge> edges;
      for (Vertex v = 1; v < n; ++v) edges.emplace_back(0, v);
      return Graph::from_edges(n, edges);
    }
    case Family::gnp:
      return until_connected(seed, "gnp", [&](std::uint64_t s) { return gnp_graph(n, *spec.p, s); });
    case Family::regular:
      return until_connected(seed, "regular",
                             [&](std::uint64_t s) { return near_regular(n, *spec.d, s, false); });
    case Family::push_adversary: {
      const std::size_t b = first_block_size(n);
      const std::size_t m = n - b;
      const std::size_t interior =
          std::min(push_adversary_target_degree(n, *spec.eps) - b, m - 1);
      return until_connected(seed, "push-adversary", [&](std::uint64_t s) {
        return two_block(n, near_regular(m, interior, s, true));
      });
    }
    case Family::pp_adversary: {
      const std::size_t m = n - first_block_size(n);
      const double p = 1.0 - 2.0 * *spec.eps;
      return until_connected(seed, "pp-adversary",
                             [&](std::uint64_t s) { return two_block(n, gnp_graph(m, p, s)); });
    }
  }
  bad_spec("unhandled family");
}

Graph delete_random(const Graph& g, double keep_fraction, std::uint64_t seed) {
  if (!(keep_fraction > 0.0 && keep_fraction <= 1.0)) {
    bad_spec("keep_fraction must lie in (0, 1]");
  }
  const std::size_t n = g.order();
  std::vector<std::size_t> quota(n);
  std::vector<std::size_t> current(n);
  for (Vertex v = 0; v < n; ++v) {
    current[v] = g.degree(v);
    quota[v] = retention_quota(keep_fraction, current[v]);
  }
  auto edges = g.edges();
  Rng rng(seed);
  std::shuffle(edges.begin(), edges.end(), rng);
  std::vector<Edge> kept;
  kept.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    if (current[u] > quota[u] && current[v] > quota[v]) {
      --current[u];
      --current[v];
    } else {
      kept.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, kept);
}

}  // namespace rumor
