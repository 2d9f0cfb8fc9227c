#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "chipstab/graph.hpp"

namespace chipstab::io {

// One "tail head" pair per line; '#' starts a comment. Vertices are numbered
// in order of first appearance.
Graph parse_edge_list(std::string_view text);

// {"vertices": [...], "edges": [[tail, head], ...]}. Edge endpoints may be
// vertex ids (strings) or indices into the vertex list.
Graph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const Graph& g);

// Dispatches on content: a leading '{' means JSON, otherwise edge list.
Graph parse_graph(std::string_view text);
Graph load_graph(const std::string& path);

std::string graph_to_dot(const Graph& g, std::string_view name = "G");

// The four-vertex, five-edge graph used throughout the examples.
Graph kite_graph();

}  // namespace chipstab::io
