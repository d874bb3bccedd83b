#include "rumor/graph_io.hpp"

#include <fstream>
#include <string>

#include "rumor/error.hpp"

namespace rumor {
namespace {

[[noreturn]] void reject(const std::string& msg) {
  throw Error(ErrorKind::parse_error, "graph file: " + msg);
}

}  // namespace

nlohmann::json graph_to_json(const Graph& g, const nlohmann::json& meta) {
  nlohmann::json doc;
  doc["n"] = g.order();
  auto edges = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  doc["edges"] = std::move(edges);
  if (!meta.is_null()) doc["meta"] = meta;
  return doc;
}

Graph graph_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) reject("top level must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "n" && key != "edges" && key != "meta") reject("unexpected key '" + key + "'");
  }
  if (!doc.contains("n") || !doc["n"].is_number_unsigned()) {
    reject("'n' must be a non-negative integer");
  }
  if (!doc.contains("edges") || !doc["edges"].is_array()) reject("'edges' must be an array");
  const auto n = doc["n"].get<std::size_t>();

  std::vector<Edge> edges;
  edges.reserve(doc["edges"].size());
  for (const auto& pair : doc["edges"]) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_unsigned() ||
        !pair[1].is_number_unsigned()) {
      reject("each edge must be a pair of non-negative integers");
    }
    const auto u = pair[0].get<std::size_t>();
    const auto v = pair[1].get<std::size_t>();
    if (u >= v) reject("edge [" + std::to_string(u) + "," + std::to_string(v) + "] needs u < v");
    if (v >= n) reject("edge endpoint " + std::to_string(v) + " out of range");
    const Edge e{static_cast<Vertex>(u), static_cast<Vertex>(v)};
    if (!edges.empty() && !(edges.back() < e)) reject("edges must be strictly sorted");
    edges.push_back(e);
  }
  return Graph::from_edges(n, edges);
}

void save_graph(const std::filesystem::path& path, const Graph& g, const nlohmann::json& meta) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::parse_error, "cannot open " + path.string() + " for writing");
  out << graph_to_json(g, meta).dump() << '\n';
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse_error, "cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::parse_error, path.string() + ": " + e.what());
  }
  return graph_from_json(doc);
}

}  // namespace rumor
