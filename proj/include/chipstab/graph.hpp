#pragma once

// Loopless connected multigraphs with a fixed reference orientation, plus
// the tree, cut and cycle combinatorics every other module builds on.

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chipstab {

using VertexMask = std::uint32_t;
using EdgeMask = std::uint64_t;

constexpr int kMaxVertices = 32;
constexpr int kMaxEdges = 64;

inline bool has_bit(std::uint64_t mask, int i) { return (mask >> i) & 1u; }
inline int popcount(std::uint64_t mask) { return std::popcount(mask); }

// Exponential enumerations are gated by these. They are configuration, not
// representational limits (those are kMaxVertices / kMaxEdges).
struct EnumerationLimits {
  int max_vertices = 14;
  int max_edges = 20;
  std::size_t max_flip_nodes = std::size_t{1} << 14;
  int max_geometry_edges = 6;
};

struct Edge {
  int tail = 0;
  int head = 0;
};

struct SpanningTree {
  EdgeMask edges = 0;

  bool contains(int e) const { return has_bit(edges, e); }
  friend auto operator<=>(const SpanningTree&, const SpanningTree&) = default;
};

// Edge subset with a sign per edge relative to the reference orientation.
struct SignedEdgeSet {
  EdgeMask positive = 0;
  EdgeMask negative = 0;

  EdgeMask support() const { return positive | negative; }
  bool empty() const { return support() == 0; }
  // +1, -1, or 0 when e is not in the support.
  int sign(int e) const { return has_bit(positive, e) ? 1 : has_bit(negative, e) ? -1 : 0; }
  SignedEdgeSet negated() const { return {negative, positive}; }
  std::vector<std::pair<int, int>> entries() const;

  friend auto operator<=>(const SignedEdgeSet&, const SignedEdgeSet&) = default;
};

class Graph {
 public:
  // Throws chipstab::Error on loops, dangling endpoints, duplicate vertex
  // ids, disconnected input, or sizes beyond kMaxVertices / kMaxEdges.
  Graph(std::vector<std::string> vertex_ids, std::vector<Edge> edges);

  int num_vertices() const { return static_cast<int>(ids_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
  const std::vector<std::string>& vertex_ids() const { return ids_; }
  const std::string& vertex_id(int v) const { return ids_[static_cast<std::size_t>(v)]; }
  std::optional<int> find_vertex(std::string_view id) const;
  // Like find_vertex but throws "unknown_vertex".
  int vertex_index(std::string_view id) const;

  int degree(int v) const { return static_cast<int>(incident_[static_cast<std::size_t>(v)].size()); }
  const std::vector<int>& incident_edges(int v) const { return incident_[static_cast<std::size_t>(v)]; }
  int other_end(int e, int v) const { return edge(e).tail == v ? edge(e).head : edge(e).tail; }
  int multiplicity(int u, int v) const;
  VertexMask all_vertices() const { return mask_of(num_vertices()); }
  EdgeMask all_edges() const { return static_cast<EdgeMask>(mask_of(num_edges())); }

 private:
  static std::uint64_t mask_of(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

  std::vector<std::string> ids_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
};

// |E| - |V| + 1.
int genus(const Graph& g);

// Contraction/deletion recursion in edge order. Throws
// "enumeration_too_large" past limits.max_edges.
std::vector<SpanningTree> spanning_trees(const Graph& g, const EnumerationLimits& limits = {});

bool is_spanning_tree(const Graph& g, EdgeMask edges);
// Breadth-first tree from vertex 0, lowest edge index first.
SpanningTree bfs_spanning_tree(const Graph& g);

// Unique cycle of T + e, oriented so that e carries sign +1. Throws
// "edge_is_internal" when e is in T.
SignedEdgeSet fundamental_cycle(const Graph& g, const SpanningTree& t, int e);

struct Cocycle {
  SignedEdgeSet edges;  // +1 where the reference orientation points into side
  VertexMask side = 0;
};

// The cut separating the two components of T - e. `side` is the component
// holding head(e), so e itself has sign +1. Throws "edge_is_external".
Cocycle fundamental_cocycle(const Graph& g, const SpanningTree& t, int e);

// All nonempty proper W with G[W] and G[W^c] connected, in increasing mask
// order. Throws "enumeration_too_large" past limits.max_vertices.
std::vector<VertexMask> biconnected_subsets(const Graph& g, const EnumerationLimits& limits = {});

// Edges crossing (W, W^c), signed +1 when pointing into W.
SignedEdgeSet signed_cut(const Graph& g, VertexMask w);
// Throws "trivial_subset" for W empty or W = V.
int cut_size(const Graph& g, VertexMask w);
int induced_edge_count(const Graph& g, VertexMask w);
// g(G[W]) = |E(G[W])| - |W| + 1.
int induced_genus(const Graph& g, VertexMask w);
bool induces_connected(const Graph& g, VertexMask w);
// Edges between W1 and W2 (disjoint).
int edges_between(const Graph& g, VertexMask w1, VertexMask w2);

// Vertex set reachable from `start` using only edges in `edges`.
VertexMask component_of(const Graph& g, EdgeMask edges, int start);

}  // namespace chipstab
