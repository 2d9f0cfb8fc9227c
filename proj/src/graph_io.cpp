#include "chipstab/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "chipstab/error.hpp"

namespace chipstab::io {

using nlohmann::json;

Graph parse_edge_list(std::string_view text) {
  std::vector<std::string> ids;
  std::vector<Edge> edges;
  auto index_of = [&](const std::string& id) {
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (ids[i] == id) return static_cast<int>(i);
    ids.push_back(id);
    return static_cast<int>(ids.size() - 1);
  };
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string tail, head, extra;
    if (!(fields >> tail)) continue;
    if (!(fields >> head) || (fields >> extra))
      throw Error("parse_error", "line " + std::to_string(lineno) + ": expected 'tail head'");
    int t = index_of(tail);
    int h = index_of(head);
    edges.push_back({t, h});
  }
  return Graph(std::move(ids), std::move(edges));
}

Graph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges") ||
      !j["vertices"].is_array() || !j["edges"].is_array())
    throw Error("parse_error", "graph JSON needs 'vertices' and 'edges' arrays");
  std::vector<std::string> ids;
  for (const auto& v : j["vertices"]) {
    if (v.is_string()) ids.push_back(v.get<std::string>());
    else if (v.is_number_integer()) ids.push_back(std::to_string(v.get<long long>()));
    else throw Error("parse_error", "vertex ids must be strings or integers");
  }
  auto resolve = [&](const json& end) -> int {
    if (end.is_string()) {
      for (std::size_t i = 0; i < ids.size(); ++i)
        if (ids[i] == end.get<std::string>()) return static_cast<int>(i);
      throw Error("parse_error", "edge endpoint '" + end.get<std::string>() + "' is not a vertex");
    }
    if (end.is_number_integer()) {
      long long idx = end.get<long long>();
      if (idx < 0 || idx >= static_cast<long long>(ids.size()))
        throw Error("parse_error", "edge endpoint index out of range");
      return static_cast<int>(idx);
    }
    throw Error("parse_error", "edge endpoints must be vertex ids or indices");
  };
  std::vector<Edge> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2) throw Error("parse_error", "each edge must be a [tail, head] pair");
    edges.push_back({resolve(e[0]), resolve(e[1])});
  }
  return Graph(std::move(ids), std::move(edges));
}

json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({g.vertex_id(e.tail), g.vertex_id(e.head)});
  return {{"vertices", g.vertex_ids()}, {"edges", edges}};
}

Graph parse_graph(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error("parse_error", std::string("malformed graph JSON: ") + e.what());
    }
    return graph_from_json(j);
  }
  return parse_edge_list(text);
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io_error", "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string graph_to_dot(const Graph& g, std::string_view name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  for (const auto& id : g.vertex_ids()) out << "  \"" << id << "\";\n";
  for (int e = 0; e < g.num_edges(); ++e)
    out << "  \"" << g.vertex_id(g.edge(e).tail) << "\" -> \"" << g.vertex_id(g.edge(e).head)
        << "\" [label=\"e" << e << "\"];\n";
  out << "}\n";
  return out.str();
}

Graph kite_graph() {
  return Graph({"t", "r", "b", "l"}, {{0, 1}, {0, 3}, {1, 3}, {1, 2}, {3, 2}});
}

}  // namespace chipstab::io
