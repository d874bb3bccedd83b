#include "rumor/graph.hpp"

#include <algorithm>
#include <string>

#include "rumor/error.hpp"

namespace rumor {
namespace {

struct Csr {
  std::vector<std::size_t> offsets;
  std::vector<Vertex> entries;
};

// Symmetric CSR from an undirected pair list, rows sorted and checked.
Csr build_csr(std::size_t n, std::span<const Edge> pairs, const char* what) {
  Csr csr;
  csr.offsets.assign(n + 1, 0);
  for (const auto& [u, v] : pairs) {
    if (u >= n || v >= n) {
      throw Error(ErrorKind::invalid_spec,
                  std::string(what) + " endpoint out of range: (" + std::to_string(u) +
                      ", " + std::to_string(v) + ") with n=" + std::to_string(n));
    }
    if (u == v) {
      throw Error(ErrorKind::invalid_spec,
                  std::string(what) + " self-loop at vertex " + std::to_string(u));
    }
    ++csr.offsets[u + 1];
    ++csr.offsets[v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) csr.offsets[v + 1] += csr.offsets[v];
  csr.entries.resize(csr.offsets[n]);
  std::vector<std::size_t> fill(csr.offsets.begin(), csr.offsets.end() - 1);
  for (const auto& [u, v] : pairs) {
    csr.entries[fill[u]++] = v;
    csr.entries[fill[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = csr.entries.begin() + static_cast<std::ptrdiff_t>(csr.offsets[v]);
    auto last = csr.entries.begin() + static_cast<std::ptrdiff_t>(csr.offsets[v + 1]);
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) {
      throw Error(ErrorKind::invalid_spec,
                  std::string("duplicate ") + what + " at vertex " + std::to_string(v));
    }
  }
  return csr;
}

}  // namespace

Graph Graph::from_rows(std::size_t n, std::vector<std::size_t> offsets,
                       std::vector<Vertex> entries, bool rows_are_complement) {
  Graph g;
  g.n_ = n;
  g.degrees_.resize(n);
  g.complemented_.resize(n);
  g.offsets_.assign(1, 0);
  g.offsets_.reserve(n + 1);

  std::size_t degree_sum = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t len = offsets[v + 1] - offsets[v];
    const std::size_t deg = rows_are_complement ? n - 1 - len : len;
    const bool store_complement = 2 * deg > n;
    g.degrees_[v] = deg;
    g.complemented_[v] = store_complement ? 1 : 0;
    degree_sum += deg;

    const Vertex* row = entries.data() + offsets[v];
    const auto self = static_cast<Vertex>(v);
    if (store_complement == rows_are_complement) {
      // Same kind; complement rows gain the vertex itself.
      bool self_done = !store_complement;
      for (std::size_t i = 0; i < len; ++i) {
        if (!self_done && self < row[i]) {
          g.entries_.push_back(self);
          self_done = true;
        }
        g.entries_.push_back(row[i]);
      }
      if (!self_done) g.entries_.push_back(self);
    } else {
      // Flip: emit every w not in the row, skipping v when producing a
      // neighbour list and keeping it when producing a complement list.
      std::size_t j = 0;
      for (Vertex w = 0; w < n; ++w) {
        if (j < len && row[j] == w) {
          ++j;
          continue;
        }
        if (w == self && !store_complement) continue;
        g.entries_.push_back(w);
      }
    }
    g.offsets_.push_back(g.entries_.size());
  }
  g.edge_count_ = degree_sum / 2;
  if (n > 0) {
    auto [lo, hi] = std::minmax_element(g.degrees_.begin(), g.degrees_.end());
    g.min_degree_ = *lo;
    g.max_degree_ = *hi;
  }
  g.entries_.shrink_to_fit();
  return g;
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  auto csr = build_csr(n, edges, "edge");
  return from_rows(n, std::move(csr.offsets), std::move(csr.entries), false);
}

Graph Graph::from_non_edges(std::size_t n, std::span<const Edge> non_edges) {
  auto csr = build_csr(n, non_edges, "non-edge");
  return from_rows(n, std::move(csr.offsets), std::move(csr.entries), true);
}

Graph Graph::complete(std::size_t n) { return from_non_edges(n, {}); }

Vertex Graph::neighbor(Vertex v, std::size_t k) const {
  const auto row = stored_row(v);
  if (!complemented_[v]) return row[k];
  // The k-th present value is k + j, where j counts missing values below it;
  // row[i] - i is nondecreasing, so j is found by bisection.
  std::size_t lo = 0;
  std::size_t hi = row.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (row[mid] - mid <= k) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return static_cast<Vertex>(k + lo);
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_ || u == v) return false;
  const auto row = stored_row(u);
  const bool listed = std::binary_search(row.begin(), row.end(), v);
  return complemented_[u] ? !listed : listed;
}

std::vector<Vertex> Graph::neighbors(Vertex v) const {
  std::vector<Vertex> out;
  out.reserve(degrees_[v]);
  for_each_neighbor(v, [&](Vertex w) { out.push_back(w); });
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < n_; ++u) {
    for_each_neighbor(u, [&](Vertex w) {
      if (u < w) out.emplace_back(u, w);
    });
  }
  return out;
}

bool operator==(const Graph& a, const Graph& b) {
  return a.n_ == b.n_ && a.offsets_ == b.offsets_ && a.entries_ == b.entries_ &&
         a.complemented_ == b.complemented_;
}

bool is_connected(const Graph& g) {
  const std::size_t n = g.order();
  if (n <= 1) return true;
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<Vertex> frontier{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const Vertex v = frontier.back();
    frontier.pop_back();
    g.for_each_neighbor(v, [&](Vertex w) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        frontier.push_back(w);
      }
    });
  }
  return reached == n;
}

std::size_t edge_boundary(const Graph& g, std::span<const Vertex> subset) {
  const std::size_t n = g.order();
  std::vector<std::uint8_t> in(n, 0);
  std::size_t size = 0;
  for (Vertex v : subset) {
    if (v >= n) {
      throw Error(ErrorKind::out_of_range,
                  "vertex " + std::to_string(v) + " out of range for n=" + std::to_string(n));
    }
    if (!in[v]) {
      in[v] = 1;
      ++size;
    }
  }
  // e(S, V\S) = sum over v in S of (deg(v) - |N(v) ∩ S|).
  std::size_t boundary = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (!in[v]) continue;
    std::size_t inside = 0;
    const auto row = g.stored_row(v);
    if (g.row_is_complement(v)) {
      std::size_t missing_inside = 0;
      for (Vertex w : row) missing_inside += in[w];
      inside = size - missing_inside;
    } else {
      for (Vertex w : row) inside += in[w];
    }
    boundary += g.degree(v) - inside;
  }
  return boundary;
}

bool validate(const Graph& g) {
  const std::size_t n = g.order();
  std::size_t degree_sum = 0;
  for (Vertex v = 0; v < n; ++v) {
    const auto nb = g.neighbors(v);
    if (nb.size() != g.degree(v)) return false;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] >= n || nb[i] == v) return false;
      if (i > 0 && nb[i - 1] >= nb[i]) return false;
      if (!g.adjacent(nb[i], v)) return false;
      if (g.neighbor(v, i) != nb[i]) return false;
    }
    degree_sum += nb.size();
  }
  return degree_sum % 2 == 0 && degree_sum / 2 == g.edge_count();
}

}  // namespace rumor
