#include <gtest/gtest.h>

#include <filesystem>
#include <nlohmann/json.hpp>

#include "rumor/error.hpp"
#include "rumor/generators.hpp"
#include "rumor/graph_io.hpp"

using namespace rumor;
using nlohmann::json;

namespace {

void expect_parse_error(const json& doc) {
  try {
    (void)graph_from_json(doc);
    FAIL() << "accepted " << doc.dump();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse_error) << doc.dump();
  }
}

}  // namespace

TEST(GraphIo, RoundTripThroughFile) {
  FamilySpec s;
  s.family = Family::push_adversary;
  s.n = 40;
  s.eps = 0.3;
  const Graph g = generate(s, 12);
  const auto path = std::filesystem::temp_directory_path() / "rumor_io_roundtrip.json";
  save_graph(path, g, json{{"note", "fixture"}});
  EXPECT_EQ(load_graph(path), g);
  std::filesystem::remove(path);
}

TEST(GraphIo, CanonicalOrdering) {
  const json doc = graph_to_json(Graph::complete(3));
  EXPECT_EQ(doc["n"], 3);
  EXPECT_EQ(doc["edges"], json::parse("[[0,1],[0,2],[1,2]]"));
}

TEST(GraphIo, RejectsMalformedDocuments) {
  expect_parse_error(json::parse(R"({"edges": []})"));
  expect_parse_error(json::parse(R"({"n": 3})"));
  expect_parse_error(json::parse(R"({"n": 3, "edges": [[1,0]]})"));
  expect_parse_error(json::parse(R"({"n": 3, "edges": [[1,1]]})"));
  expect_parse_error(json::parse(R"({"n": 3, "edges": [[1,2],[0,1]]})"));
  expect_parse_error(json::parse(R"({"n": 3, "edges": [[0,1],[0,1]]})"));
  expect_parse_error(json::parse(R"({"n": 3, "edges": [[0,3]]})"));
  expect_parse_error(json::parse(R"({"n": 3, "edges": [[0,1,2]]})"));
  expect_parse_error(json::parse(R"({"n": -1, "edges": []})"));
  expect_parse_error(json::parse(R"({"n": 3, "edges": [], "extra": 1})"));
  expect_parse_error(json::parse(R"([1,2])"));
}
