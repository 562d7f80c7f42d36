#pragma once

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "cactusdom/graph.hpp"

namespace cactusdom {

inline nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  nlohmann::json j{{"n", g.n()}, {"edges", std::move(edges)}};
  if (g.has_labels()) j["labels"] = g.labels();
  return j;
}

// {"n": 3, "edges": [[0,1],[1,2]], "labels": [...]?}
inline Graph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw GraphError("graph object needs \"n\" and \"edges\"");
  if (!j["n"].is_number_integer()) throw GraphError("\"n\" must be an integer");
  const auto n = j["n"].get<long long>();
  if (n < 0 || n > 100'000'000) throw GraphError("vertex count out of range");
  if (!j["edges"].is_array()) throw GraphError("\"edges\" must be an array");
  std::vector<Edge> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw GraphError("each edge must be a pair of integers");
    edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
  }
  std::vector<Vertex> labels;
  if (j.contains("labels")) labels = j["labels"].get<std::vector<Vertex>>();
  return Graph::from_edges(static_cast<Vertex>(n), std::move(edges), std::move(labels));
}

// Edge-list text, or a JSON graph object when the document starts with '{'.
inline Graph parse_graph_document(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && text[i] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw GraphError(std::string("malformed JSON graph: ") + e.what());
    }
    return graph_from_json(j);
  }
  return parse_graph(text);
}

inline std::string read_text(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Graph load_graph(const std::string& path) { return parse_graph_document(read_text(path)); }

}  // namespace cactusdom
