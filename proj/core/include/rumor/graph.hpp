#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace rumor {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Each vertex stores whichever of its two sorted rows is shorter: the
/// neighbour list N(v), or the complement list V \ N(v) (which always contains
/// v itself). Dense graphs such as K_n or the two-block constructions therefore
/// cost O(n) memory instead of O(n^2), while neighbour sampling stays exact.
/// The representation choice is a pure function of the edge set, so two graphs
/// with the same edges compare equal.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Order is irrelevant; self-loops, duplicate
  /// edges and out-of-range endpoints raise Error(invalid_spec).
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  /// Builds K_n minus the given non-edges (same validation as from_edges).
  static Graph from_non_edges(std::size_t n, std::span<const Edge> non_edges);

  static Graph complete(std::size_t n);

  std::size_t order() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edge_count_; }

  std::size_t degree(Vertex v) const { return degrees_[v]; }
  std::size_t min_degree() const noexcept { return min_degree_; }
  std::size_t max_degree() const noexcept { return max_degree_; }

  /// k-th smallest neighbour of v, 0 <= k < degree(v).
  Vertex neighbor(Vertex v, std::size_t k) const;

  bool adjacent(Vertex u, Vertex v) const;

  /// Sorted neighbour list (materialised).
  std::vector<Vertex> neighbors(Vertex v) const;

  /// All edges as (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  template <class F>
  void for_each_neighbor(Vertex v, F&& f) const {
    const auto row = stored_row(v);
    if (!complemented_[v]) {
      for (Vertex w : row) f(w);
      return;
    }
    std::size_t j = 0;
    for (Vertex w = 0; w < n_; ++w) {
      if (j < row.size() && row[j] == w) {
        ++j;
        continue;
      }
      f(w);
    }
  }

  /// Raw storage access for hot loops: the stored row of v and whether it is
  /// the complement list (then it contains v) or the neighbour list.
  std::span<const Vertex> stored_row(Vertex v) const {
    return {entries_.data() + offsets_[v], entries_.data() + offsets_[v + 1]};
  }
  bool row_is_complement(Vertex v) const { return complemented_[v] != 0; }

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::size_t n_ = 0;
  std::size_t edge_count_ = 0;
  std::size_t min_degree_ = 0;
  std::size_t max_degree_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> entries_;
  std::vector<std::uint8_t> complemented_;
  std::vector<std::size_t> degrees_;

  static Graph from_rows(std::size_t n, std::vector<std::size_t> offsets,
                         std::vector<Vertex> entries, bool rows_are_complement);
};

/// Breadth-first reachability of all vertices from vertex 0.
bool is_connected(const Graph& g);

/// e(S, V \ S). S is treated as a set; duplicates are ignored.
std::size_t edge_boundary(const Graph& g, std::span<const Vertex> subset);

/// Checks the Graph invariants from scratch (symmetry, sortedness, no loops,
/// edge count). Used by tests; returns false on the first violation.
bool validate(const Graph& g);

}  // namespace rumor
