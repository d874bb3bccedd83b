#include <gtest/gtest.h>

#include <vector>

#include "rumor/error.hpp"
#include "rumor/graph.hpp"

using rumor::Edge;
using rumor::Error;
using rumor::ErrorKind;
using rumor::Graph;
using rumor::Vertex;

namespace {

Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v < n; ++v) e.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  return Graph::from_edges(n, e);
}

Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (Vertex v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, e);
}

}  // namespace

TEST(Graph, CompleteGraphHasAllEdges) {
  const Graph k4 = Graph::complete(4);
  EXPECT_EQ(k4.order(), 4u);
  EXPECT_EQ(k4.edge_count(), 6u);
  for (Vertex v = 0; v < 4; ++v) EXPECT_EQ(k4.degree(v), 3u);
  EXPECT_TRUE(rumor::validate(k4));
}

TEST(Graph, NeighbourIndexingAgreesAcrossStorageKinds) {
  // Dense rows are stored as complements; sparse rows as plain lists.
  const Graph k = Graph::complete(9);
  const Graph c = cycle(9);
  for (const Graph* g : {&k, &c}) {
    for (Vertex v = 0; v < g->order(); ++v) {
      const auto nb = g->neighbors(v);
      ASSERT_EQ(nb.size(), g->degree(v));
      std::vector<Vertex> visited;
      g->for_each_neighbor(v, [&](Vertex w) { visited.push_back(w); });
      EXPECT_EQ(visited, nb);
      for (std::size_t k2 = 0; k2 < nb.size(); ++k2) EXPECT_EQ(g->neighbor(v, k2), nb[k2]);
      for (Vertex w = 0; w < g->order(); ++w) {
        const bool listed = std::find(nb.begin(), nb.end(), w) != nb.end();
        EXPECT_EQ(g->adjacent(v, w), listed);
      }
    }
  }
  EXPECT_TRUE(k.row_is_complement(0));
  EXPECT_FALSE(c.row_is_complement(0));
}

TEST(Graph, NonEdgeConstructionMatchesEdgeConstruction) {
  const std::vector<Edge> missing{{0, 1}, {2, 5}, {3, 4}};
  const Graph a = Graph::from_non_edges(6, missing);
  std::vector<Edge> present;
  for (Vertex u = 0; u < 6; ++u)
    for (Vertex v = u + 1; v < 6; ++v)
      if (std::find(missing.begin(), missing.end(), Edge{u, v}) == missing.end()) present.emplace_back(u, v);
  const Graph b = Graph::from_edges(6, present);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.edges(), present);
}

TEST(Graph, RejectsLoopsDuplicatesAndOutOfRange) {
  const std::vector<Edge> loop{{1, 1}};
  const std::vector<Edge> dup{{0, 1}, {1, 0}};
  const std::vector<Edge> far{{0, 7}};
  for (const auto* e : {&loop, &dup, &far}) {
    try {
      (void)Graph::from_edges(4, *e);
      FAIL() << "expected rejection";
    } catch (const Error& err) {
      EXPECT_EQ(err.kind(), ErrorKind::invalid_spec);
    }
  }
}

TEST(Graph, EdgeBoundaryExamples) {
  const Graph k4 = Graph::complete(4);
  const std::vector<Vertex> one{0};
  EXPECT_EQ(rumor::edge_boundary(k4, one), 3u);
  EXPECT_EQ(rumor::edge_boundary(k4, std::vector<Vertex>{}), 0u);
  EXPECT_EQ(rumor::edge_boundary(star(4), one), 4u);
  const std::vector<Vertex> all{0, 1, 2, 3};
  EXPECT_EQ(rumor::edge_boundary(k4, all), 0u);
  const std::vector<Vertex> bad{9};
  EXPECT_THROW((void)rumor::edge_boundary(k4, bad), Error);
}

TEST(Graph, Connectivity) {
  EXPECT_TRUE(rumor::is_connected(Graph::complete(4)));
  const std::vector<Edge> two{{0, 1}, {2, 3}};
  EXPECT_FALSE(rumor::is_connected(Graph::from_edges(4, two)));
  EXPECT_TRUE(rumor::is_connected(Graph::complete(1)));
}

TEST(Graph, LargeCompleteGraphIsCompact) {
  const Graph k = Graph::complete(1 << 14);
  EXPECT_EQ(k.edge_count(), (std::size_t{1} << 14) * ((1 << 14) - 1) / 2);
  EXPECT_EQ(k.stored_row(5).size(), 1u);
  EXPECT_EQ(k.neighbor(5, 5), 6u);
  EXPECT_EQ(k.neighbor(5, 4), 4u);
}
