#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "rumor/error.hpp"
#include "rumor/generators.hpp"
#include "rumor/harness.hpp"
#include "rumor/protocol.hpp"

using namespace rumor;

namespace {

Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (Vertex v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, e);
}

Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v < n; ++v) e.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  return Graph::from_edges(n, e);
}

// Irregular test graph: a triangle 0-1-2 with a pendant path 2-3-4 and a chord 1-4.
Graph lopsided() {
  const std::vector<Edge> e{{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {1, 4}, {0, 5}, {4, 5}};
  return Graph::from_edges(6, e);
}

ProtocolConfig cfg_of(Protocol p, double q, Vertex start = 0) {
  ProtocolConfig c;
  c.protocol = p;
  c.q = q;
  c.start_vertex = start;
  return c;
}

std::vector<double> rounds_of(const Graph& g, const ProtocolConfig& c, std::size_t trials, std::uint64_t base) {
  std::vector<double> out;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto r = simulate(g, c, derive_seed(base, {i}));
    EXPECT_TRUE(r.completed);
    out.push_back(static_cast<double>(r.rounds));
  }
  return out;
}

double mean(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double var(const std::vector<double>& x) {
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

}  // namespace

TEST(Protocol, NamesAndDefaults) {
  EXPECT_EQ(parse_protocol("pp"), Protocol::push_pull);
  EXPECT_EQ(parse_protocol("push-pull"), Protocol::push_pull);
  EXPECT_EQ(to_string(Protocol::pull), "pull");
  EXPECT_THROW((void)parse_protocol("gossip"), Error);
  EXPECT_EQ(default_max_rounds(1024), 64u * 10u + 64u);
  EXPECT_EQ(tilde_threshold(1000), 1000u - 145u);
}

TEST(Protocol, StarPushFromCentreAddsOneLeaf) {
  const Graph s = star(5);
  Rng rng(1);
  const std::vector<Vertex> centre{0};
  for (int i = 0; i < 200; ++i) EXPECT_EQ(run_round(s, centre, cfg_of(Protocol::push, 1.0), rng).size(), 2u);
}

TEST(Protocol, StarPushPullFromLeafReachesCentre) {
  const Graph s = star(5);
  Rng rng(2);
  const std::vector<Vertex> leaf{3};
  for (int i = 0; i < 200; ++i) {
    const auto next = run_round(s, leaf, cfg_of(Protocol::push_pull, 1.0, 3), rng);
    EXPECT_TRUE(std::find(next.begin(), next.end(), 0u) != next.end());
  }
}

TEST(Protocol, TrivialRuntimes) {
  EXPECT_EQ(simulate(Graph::complete(1), cfg_of(Protocol::push, 1.0), 5).rounds, 0u);
  for (std::uint64_t s = 0; s < 50; ++s) EXPECT_EQ(simulate(Graph::complete(2), cfg_of(Protocol::push, 1.0), s).rounds, 1u);
  const Graph st = star(40);
  for (Vertex start = 0; start <= 40; ++start) {
    const auto r = simulate(st, cfg_of(Protocol::push_pull, 1.0, start), start * 7 + 1);
    EXPECT_TRUE(r.completed);
    EXPECT_LE(r.rounds, 2u);
  }
}

TEST(Protocol, TraceInvariants) {
  FamilySpec f;
  f.family = Family::gnp;
  f.n = 300;
  f.p = 0.04;
  const Graph g = generate(f, 8);
  for (Protocol p : {Protocol::push, Protocol::pull, Protocol::push_pull}) {
    for (double q : {0.3, 1.0}) {
      const auto r = simulate(g, cfg_of(p, q, 17), 99);
      ASSERT_TRUE(r.completed);
      ASSERT_FALSE(r.trace.empty());
      EXPECT_EQ(r.trace.front().t, 1u);
      EXPECT_EQ(r.trace.front().informed, 1u);
      EXPECT_EQ(r.rounds, r.trace.back().t - 1);
      for (std::size_t i = 1; i < r.trace.size(); ++i) {
        EXPECT_EQ(r.trace[i].t, i + 1);
        EXPECT_GE(r.trace[i].informed, r.trace[i - 1].informed);
        EXPECT_EQ(r.trace[i].informed - r.trace[i - 1].informed, r.trace[i].newly_informed);
      }
      for (const auto& rec : r.trace) EXPECT_EQ(rec.boundary == 0, rec.informed == g.order());
      ASSERT_TRUE(r.rounds_tilde.has_value());
      EXPECT_LE(*r.rounds_tilde, r.rounds);
    }
  }
}

TEST(Protocol, BoundaryTracksRecount) {
  const Graph g = gnp_graph(80, 0.1, 4);
  RumourSpread engine(g, cfg_of(Protocol::push_pull, 0.6));
  const std::vector<Vertex> seed{5};
  engine.reset(seed);
  Rng rng(3);
  while (!engine.all_informed()) {
    const std::vector<Vertex> before(engine.informed().begin(), engine.informed().end());
    engine.step(rng);
    for (Vertex v : before) EXPECT_TRUE(engine.is_informed(v));
    const std::vector<Vertex> now(engine.informed().begin(), engine.informed().end());
    EXPECT_EQ(engine.boundary(), edge_boundary(g, now));
  }
}

TEST(Protocol, Determinism) {
  const Graph g = gnp_graph(200, 0.05, 10);
  const auto c = cfg_of(Protocol::push_pull, 0.7, 3);
  EXPECT_EQ(simulate(g, c, 42), simulate(g, c, 42));
  EXPECT_NE(simulate(g, c, 42).trace, simulate(g, c, 43).trace);
}

TEST(Protocol, DisconnectedGraphHitsRoundCap) {
  const std::vector<Edge> two{{0, 1}, {2, 3}};
  auto c = cfg_of(Protocol::push, 1.0);
  c.max_rounds = 12;
  const auto r = simulate(Graph::from_edges(4, two), c, 1);
  EXPECT_FALSE(r.completed);
  EXPECT_EQ(r.rounds, 12u);
}

TEST(Protocol, RejectsBadConfig) {
  EXPECT_THROW((void)simulate(Graph::complete(3), cfg_of(Protocol::push, 0.0), 1), Error);
  EXPECT_THROW((void)simulate(Graph::complete(3), cfg_of(Protocol::push, 1.0, 3), 1), Error);
}

TEST(Protocol, TraceJsonLines) {
  const auto r = simulate(Graph::complete(2), cfg_of(Protocol::push, 1.0), 1);
  std::ostringstream os;
  write_trace_jsonl(os, r.trace);
  EXPECT_EQ(os.str(),
            "{\"t\":1,\"informed\":1,\"boundary\":1,\"new\":1}\n"
            "{\"t\":2,\"informed\":2,\"boundary\":0,\"new\":1}\n");
}

TEST(Protocol, OneRoundPullFrequency) {
  const Graph g = lopsided();
  const std::vector<Vertex> informed{0, 1};
  const double q = 0.6;
  const std::size_t reps = 100000;
  Rng rng(2024);
  std::vector<std::size_t> hits(g.order(), 0);
  for (std::size_t i = 0; i < reps; ++i)
    for (Vertex v : run_round(g, informed, cfg_of(Protocol::pull, q), rng)) ++hits[v];
  for (Vertex u = 2; u < g.order(); ++u) {
    std::size_t k = 0;
    for (Vertex w : g.neighbors(u)) k += (w == 0 || w == 1);
    const double p = q * static_cast<double>(k) / static_cast<double>(g.degree(u));
    const double se = std::sqrt(std::max(p * (1 - p), 1e-12) / reps);
    EXPECT_NEAR(static_cast<double>(hits[u]) / reps, p, 3 * se + 1e-12) << "u=" << u;
  }
}

TEST(Protocol, OneRoundPushFrequency) {
  const Graph g = lopsided();
  const std::vector<Vertex> informed{1, 2, 5};
  const double q = 0.8;
  const std::size_t reps = 100000;
  Rng rng(77);
  std::vector<std::size_t> hits(g.order(), 0);
  for (std::size_t i = 0; i < reps; ++i)
    for (Vertex v : run_round(g, informed, cfg_of(Protocol::push, q), rng)) ++hits[v];
  for (Vertex u : {0u, 3u, 4u}) {
    double miss = 1.0;
    for (Vertex i : informed)
      if (g.adjacent(i, u)) miss *= 1.0 - q / static_cast<double>(g.degree(i));
    const double p = 1.0 - miss;
    const double se = std::sqrt(p * (1 - p) / reps);
    EXPECT_NEAR(static_cast<double>(hits[u]) / reps, p, 3 * se) << "u=" << u;
  }
}

TEST(Protocol, PushPullBeatsSingleSidedOnCompleteGraph) {
  const Graph k = Graph::complete(1024);
  const auto pp = rounds_of(k, cfg_of(Protocol::push_pull, 1.0), 200, 1);
  const auto push = rounds_of(k, cfg_of(Protocol::push, 1.0), 200, 2);
  const auto pull = rounds_of(k, cfg_of(Protocol::pull, 1.0), 200, 3);
  const auto vs_push = compare_means(push, pp, 5);
  const auto vs_pull = compare_means(pull, pp, 6);
  EXPECT_GT(vs_push.difference, 0.0);
  EXPECT_LT(vs_push.p_value, 0.01);
  EXPECT_GT(vs_pull.difference, 0.0);
  EXPECT_LT(vs_pull.p_value, 0.01);
}

TEST(Protocol, StartVertexSymmetry) {
  const Graph k = Graph::complete(256);
  const Graph c = cycle(64);
  for (const Graph* g : {&k, &c}) {
    const auto a = rounds_of(*g, cfg_of(Protocol::push, 1.0, 0), 500, 11);
    const auto b = rounds_of(*g, cfg_of(Protocol::push, 1.0, static_cast<Vertex>(g->order() / 2 + 1)), 500, 12);
    const double se = std::sqrt(var(a) / 500.0 + var(b) / 500.0);
    EXPECT_LE(std::abs(mean(a) - mean(b)), 3.0 * se) << "n=" << g->order();
  }
}
