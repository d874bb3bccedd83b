#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>

#include "rumor/graph.hpp"

namespace rumor {

// On-disk graph format:
//   {"n": <int>, "edges": [[u, v], ...], "meta": {...}}
// with u < v and pairs in strictly increasing lexicographic order. "meta" is
// optional and carries provenance (resolved config, tool version); it is
// ignored by the loader. Any other key, or any ordering violation, is rejected.

nlohmann::json graph_to_json(const Graph& g, const nlohmann::json& meta = nullptr);

/// Throws Error(parse_error) on any schema or ordering violation.
Graph graph_from_json(const nlohmann::json& doc);

void save_graph(const std::filesystem::path& path, const Graph& g,
                const nlohmann::json& meta = nullptr);

Graph load_graph(const std::filesystem::path& path);

}  // namespace rumor
