#include "chipstab/graph.hpp"

#include <set>

#include "chipstab/error.hpp"

namespace chipstab {

std::vector<std::pair<int, int>> SignedEdgeSet::entries() const {
  std::vector<std::pair<int, int>> out;
  for (EdgeMask m = support(); m; m &= m - 1) {
    int e = std::countr_zero(m);
    out.emplace_back(e, sign(e));
  }
  return out;
}

Graph::Graph(std::vector<std::string> vertex_ids, std::vector<Edge> edges)
    : ids_(std::move(vertex_ids)), edges_(std::move(edges)) {
  if (ids_.empty()) throw Error("empty_graph", "graph has no vertices");
  if (num_vertices() > kMaxVertices)
    throw Error("graph_too_large", "at most " + std::to_string(kMaxVertices) + " vertices supported");
  if (num_edges() > kMaxEdges)
    throw Error("graph_too_large", "at most " + std::to_string(kMaxEdges) + " edges supported");
  std::set<std::string> seen;
  for (const auto& id : ids_)
    if (!seen.insert(id).second) throw Error("duplicate_vertex", "duplicate vertex id '" + id + "'");
  incident_.resize(ids_.size());
  for (int e = 0; e < num_edges(); ++e) {
    const Edge& ed = edges_[static_cast<std::size_t>(e)];
    if (ed.tail < 0 || ed.head < 0 || ed.tail >= num_vertices() || ed.head >= num_vertices())
      throw Error("bad_edge", "edge " + std::to_string(e) + " has an endpoint outside the vertex list");
    if (ed.tail == ed.head)
      throw Error("loop_edge", "edge " + std::to_string(e) + " is a loop at '" + vertex_id(ed.tail) + "'");
    incident_[static_cast<std::size_t>(ed.tail)].push_back(e);
    incident_[static_cast<std::size_t>(ed.head)].push_back(e);
  }
  if (component_of(*this, all_edges(), 0) != all_vertices())
    throw Error("disconnected_graph", "graph is not connected");
}

std::optional<int> Graph::find_vertex(std::string_view id) const {
  for (int v = 0; v < num_vertices(); ++v)
    if (ids_[static_cast<std::size_t>(v)] == id) return v;
  return std::nullopt;
}

int Graph::vertex_index(std::string_view id) const {
  auto v = find_vertex(id);
  if (!v) throw Error("unknown_vertex", "unknown vertex '" + std::string(id) + "'");
  return *v;
}

int Graph::multiplicity(int u, int v) const {
  int count = 0;
  for (int e : incident_edges(u))
    if (other_end(e, u) == v) ++count;
  return count;
}

int genus(const Graph& g) { return g.num_edges() - g.num_vertices() + 1; }

VertexMask component_of(const Graph& g, EdgeMask edges, int start) {
  VertexMask seen = VertexMask{1} << start;
  std::vector<int> stack{start};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int e : g.incident_edges(v)) {
      if (!has_bit(edges, e)) continue;
      int u = g.other_end(e, v);
      if (!has_bit(seen, u)) {
        seen |= VertexMask{1} << u;
        stack.push_back(u);
      }
    }
  }
  return seen;
}

bool is_spanning_tree(const Graph& g, EdgeMask edges) {
  return popcount(edges) == g.num_vertices() - 1 &&
         component_of(g, edges, 0) == g.all_vertices();
}

SpanningTree bfs_spanning_tree(const Graph& g) {
  SpanningTree tree;
  VertexMask seen = 1;
  std::vector<int> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int v = queue[i];
    for (int e : g.incident_edges(v)) {
      int u = g.other_end(e, v);
      if (has_bit(seen, u)) continue;
      seen |= VertexMask{1} << u;
      tree.edges |= EdgeMask{1} << e;
      queue.push_back(u);
    }
  }
  return tree;
}

namespace {

void check_edge_budget(const Graph& g, const EnumerationLimits& limits) {
  if (g.num_edges() > limits.max_edges)
    throw Error("enumeration_too_large", "graph has " + std::to_string(g.num_edges()) +
                                             " edges; enumeration bound is " +
                                             std::to_string(limits.max_edges));
}

int find_root(std::vector<int>& parent, int v) {
  while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
  return v;
}

// Edge `e` is either contracted into the forest (chosen) or deleted; a
// deletion is only taken when chosen + undecided edges still connect G.
void enumerate_trees(const Graph& g, int e, EdgeMask chosen, int chosen_count,
                     std::vector<int> parent, std::vector<SpanningTree>& out) {
  if (chosen_count == g.num_vertices() - 1) {
    out.push_back({chosen});
    return;
  }
  if (e == g.num_edges()) return;
  const Edge& ed = g.edge(e);
  int a = find_root(parent, ed.tail);
  int b = find_root(parent, ed.head);
  if (a != b) {
    std::vector<int> merged = parent;
    merged[static_cast<std::size_t>(b)] = a;
    enumerate_trees(g, e + 1, chosen | (EdgeMask{1} << e), chosen_count + 1, std::move(merged), out);
  }
  EdgeMask remaining = chosen | (g.all_edges() & ~((EdgeMask{2} << e) - 1));
  if (component_of(g, remaining, 0) == g.all_vertices())
    enumerate_trees(g, e + 1, chosen, chosen_count, std::move(parent), out);
}

}  // namespace

std::vector<SpanningTree> spanning_trees(const Graph& g, const EnumerationLimits& limits) {
  check_edge_budget(g, limits);
  std::vector<int> parent(static_cast<std::size_t>(g.num_vertices()));
  for (int v = 0; v < g.num_vertices(); ++v) parent[static_cast<std::size_t>(v)] = v;
  std::vector<SpanningTree> out;
  enumerate_trees(g, 0, 0, 0, std::move(parent), out);
  return out;
}

SignedEdgeSet fundamental_cycle(const Graph& g, const SpanningTree& t, int e) {
  if (e < 0 || e >= g.num_edges()) throw Error("bad_edge", "edge index out of range");
  if (t.contains(e)) throw Error("edge_is_internal", "edge is internal");
  // Walk the tree path head(e) -> tail(e); together with e it closes a cycle
  // traversed tail -> head along e.
  const Edge& ed = g.edge(e);
  std::vector<int> via(static_cast<std::size_t>(g.num_vertices()), -1);
  std::vector<bool> seen(static_cast<std::size_t>(g.num_vertices()), false);
  std::vector<int> stack{ed.head};
  seen[static_cast<std::size_t>(ed.head)] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int f : g.incident_edges(v)) {
      if (!t.contains(f)) continue;
      int u = g.other_end(f, v);
      if (seen[static_cast<std::size_t>(u)]) continue;
      seen[static_cast<std::size_t>(u)] = true;
      via[static_cast<std::size_t>(u)] = f;
      stack.push_back(u);
    }
  }
  SignedEdgeSet out;
  out.positive |= EdgeMask{1} << e;
  // Follow back from tail(e) to head(e); the traversal direction on the cycle
  // is then head(e) -> ... -> tail(e), i.e. from the parent side to v.
  int v = ed.tail;
  while (v != ed.head) {
    int f = via[static_cast<std::size_t>(v)];
    int parent = g.other_end(f, v);
    if (g.edge(f).tail == parent) out.positive |= EdgeMask{1} << f;
    else out.negative |= EdgeMask{1} << f;
    v = parent;
  }
  return out;
}

SignedEdgeSet signed_cut(const Graph& g, VertexMask w) {
  SignedEdgeSet out;
  for (int e = 0; e < g.num_edges(); ++e) {
    bool tail_in = has_bit(w, g.edge(e).tail);
    bool head_in = has_bit(w, g.edge(e).head);
    if (tail_in == head_in) continue;
    if (head_in) out.positive |= EdgeMask{1} << e;
    else out.negative |= EdgeMask{1} << e;
  }
  return out;
}

Cocycle fundamental_cocycle(const Graph& g, const SpanningTree& t, int e) {
  if (e < 0 || e >= g.num_edges()) throw Error("bad_edge", "edge index out of range");
  if (!t.contains(e)) throw Error("edge_is_external", "edge is external");
  VertexMask side = component_of(g, t.edges & ~(EdgeMask{1} << e), g.edge(e).head);
  return {signed_cut(g, side), side};
}

bool induces_connected(const Graph& g, VertexMask w) {
  if (w == 0) return false;
  EdgeMask inside = 0;
  for (int e = 0; e < g.num_edges(); ++e)
    if (has_bit(w, g.edge(e).tail) && has_bit(w, g.edge(e).head)) inside |= EdgeMask{1} << e;
  return component_of(g, inside, std::countr_zero(w)) == w;
}

std::vector<VertexMask> biconnected_subsets(const Graph& g, const EnumerationLimits& limits) {
  if (g.num_vertices() > limits.max_vertices)
    throw Error("enumeration_too_large", "graph has " + std::to_string(g.num_vertices()) +
                                             " vertices; enumeration bound is " +
                                             std::to_string(limits.max_vertices));
  std::vector<VertexMask> out;
  const VertexMask all = g.all_vertices();
  for (VertexMask w = 1; w < all; ++w)
    if (induces_connected(g, w) && induces_connected(g, all & ~w)) out.push_back(w);
  return out;
}

int cut_size(const Graph& g, VertexMask w) {
  if (w == 0 || w == g.all_vertices()) throw Error("trivial_subset", "cut of a trivial vertex subset");
  return popcount(signed_cut(g, w).support());
}

int induced_edge_count(const Graph& g, VertexMask w) {
  int count = 0;
  for (const Edge& ed : g.edges())
    if (has_bit(w, ed.tail) && has_bit(w, ed.head)) ++count;
  return count;
}

int induced_genus(const Graph& g, VertexMask w) {
  return induced_edge_count(g, w) - popcount(w) + 1;
}

int edges_between(const Graph& g, VertexMask w1, VertexMask w2) {
  int count = 0;
  for (const Edge& ed : g.edges())
    if ((has_bit(w1, ed.tail) && has_bit(w2, ed.head)) || (has_bit(w2, ed.tail) && has_bit(w1, ed.head)))
      ++count;
  return count;
}

}  // namespace chipstab
