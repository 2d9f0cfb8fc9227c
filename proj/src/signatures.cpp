#include "chipstab/signatures.hpp"

#include <set>

#include "chipstab/error.hpp"
#include "chipstab/lp.hpp"

namespace chipstab {

namespace {

SignedEdgeSet normalized(SignedEdgeSet s) {
  if (s.empty()) return s;
  int low = std::countr_zero(s.support());
  return s.sign(low) > 0 ? s : s.negated();
}

EdgeMask bit(int e) { return EdgeMask{1} << e; }

// Walks an edge set in which every touched vertex has degree 2 in one piece.
std::optional<SignedEdgeSet> as_simple_cycle(const Graph& g, EdgeMask mask) {
  std::vector<int> deg(static_cast<std::size_t>(g.num_vertices()), 0);
  for (EdgeMask m = mask; m; m &= m - 1) {
    const Edge& ed = g.edge(std::countr_zero(m));
    ++deg[static_cast<std::size_t>(ed.tail)];
    ++deg[static_cast<std::size_t>(ed.head)];
  }
  for (int d : deg)
    if (d != 0 && d != 2) return std::nullopt;
  int first = std::countr_zero(mask);
  SignedEdgeSet out;
  out.positive = bit(first);
  int start = g.edge(first).tail;
  int v = g.edge(first).head;
  int prev = first;
  EdgeMask walked = bit(first);
  while (v != start) {
    int next = -1;
    for (int e : g.incident_edges(v))
      if (e != prev && has_bit(mask, e)) {
        next = e;
        break;
      }
    if (g.edge(next).tail == v) out.positive |= bit(next);
    else out.negative |= bit(next);
    walked |= bit(next);
    v = g.other_end(next, v);
    prev = next;
  }
  if (walked != mask) return std::nullopt;
  return out;
}

std::string describe(const SignedEdgeSet& s) {
  std::string out = "{";
  for (auto [e, sign] : s.entries()) {
    if (out.size() > 1) out += ", ";
    out += std::to_string(e) + (sign > 0 ? ":+1" : ":-1");
  }
  return out + "}";
}

}  // namespace

std::vector<SignedEdgeSet> simple_cycles(const Graph& g, const EnumerationLimits& limits) {
  if (g.num_edges() > limits.max_edges)
    throw Error("enumeration_too_large", "graph has " + std::to_string(g.num_edges()) +
                                             " edges; enumeration bound is " + std::to_string(limits.max_edges));
  SpanningTree t = bfs_spanning_tree(g);
  std::vector<EdgeMask> basis;
  for (int e = 0; e < g.num_edges(); ++e)
    if (!t.contains(e)) basis.push_back(fundamental_cycle(g, t, e).support());
  std::vector<SignedEdgeSet> out;
  // Gray-code walk through the cycle space.
  EdgeMask current = 0;
  const std::uint64_t total = std::uint64_t{1} << basis.size();
  for (std::uint64_t i = 1; i < total; ++i) {
    current ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
    if (auto c = as_simple_cycle(g, current)) out.push_back(*c);
  }
  std::sort(out.begin(), out.end(),
            [](const SignedEdgeSet& a, const SignedEdgeSet& b) { return a.support() < b.support(); });
  return out;
}

std::vector<SignedEdgeSet> bonds(const Graph& g, const EnumerationLimits& limits) {
  std::vector<SignedEdgeSet> out;
  for (VertexMask w : biconnected_subsets(g, limits))
    if (!has_bit(w, 0)) out.push_back(normalized(signed_cut(g, w)));
  std::sort(out.begin(), out.end(),
            [](const SignedEdgeSet& a, const SignedEdgeSet& b) { return a.support() < b.support(); });
  return out;
}

std::vector<SignedEdgeSet> circuits_of(const Graph& g, SignatureFlavor flavor, const EnumerationLimits& limits) {
  return flavor == SignatureFlavor::circuit ? simple_cycles(g, limits) : bonds(g, limits);
}

Signature::Signature(const Graph& g, SignatureFlavor flavor, const std::vector<SignedEdgeSet>& values)
    : flavor_(flavor) {
  for (const auto& v : values) {
    if (v.positive & v.negative) throw Error("invalid_signature", "edge signed both ways");
    if (!values_.emplace(v.support(), v).second)
      throw Error("invalid_signature", "support " + describe(v) + " given twice");
  }
  auto expected = circuits_of(g, flavor);
  if (expected.size() != values_.size())
    throw Error("invalid_signature", "expected " + std::to_string(expected.size()) + " signed sets, got " +
                                         std::to_string(values_.size()));
  for (const auto& c : expected) {
    auto it = values_.find(c.support());
    if (it == values_.end()) throw Error("invalid_signature", "no direction chosen for " + describe(c));
    if (it->second != c && it->second != c.negated())
      throw Error("invalid_signature", "signs of " + describe(it->second) + " are not a direction of " + describe(c));
  }
}

const SignedEdgeSet& Signature::at(EdgeMask support) const {
  auto it = values_.find(support);
  if (it == values_.end()) {
    if (flavor_ == SignatureFlavor::cocircuit) throw Error("not_a_bond", "edge set is not a bond");
    throw Error("not_a_circuit", "edge set is not a simple cycle");
  }
  return it->second;
}

Signature Signature::flipped(EdgeMask support) const {
  auto values = values_;
  auto it = values.find(support);
  if (it == values.end()) at(support);
  it->second = it->second.negated();
  return Signature(flavor_, std::move(values));
}

Signature signature_from_weights(const Graph& g, SignatureFlavor flavor, const std::vector<Rational>& w,
                                 const EnumerationLimits& limits) {
  if (w.size() != static_cast<std::size_t>(g.num_edges()))
    throw Error("mismatched_graph", "weight vector length does not match the graph");
  std::vector<SignedEdgeSet> values;
  for (const auto& c : circuits_of(g, flavor, limits)) {
    Rational dot = 0;
    for (auto [e, sign] : c.entries()) dot += sign * w[static_cast<std::size_t>(e)];
    if (dot == 0) throw Error("non_generic_weights", "weights are orthogonal to " + describe(c));
    values.push_back(dot > 0 ? c : c.negated());
  }
  return Signature(g, flavor, values);
}

std::optional<std::vector<Rational>> acyclicity_witness(const Signature& s) {
  if (s.size() == 0) return std::vector<Rational>{};
  int n = 0;
  for (const auto& [support, value] : s.values()) n = std::max(n, 64 - std::countl_zero(support));
  const std::size_t nv = static_cast<std::size_t>(n) + 1;
  lp::LpProblem p(nv);
  for (std::size_t e = 0; e < static_cast<std::size_t>(n); ++e) p.bounds[e] = lp::Bound::between(-1, 1);
  p.bounds[nv - 1] = lp::Bound{std::nullopt, Rational(1)};
  p.objective[nv - 1] = 1;
  for (const auto& [support, value] : s.values()) {
    std::vector<Rational> row(nv);
    for (auto [e, sign] : value.entries()) row[static_cast<std::size_t>(e)] = sign;
    row[nv - 1] = -1;
    p.add_row(std::move(row), lp::Relation::greater_equal, 0);
  }
  auto r = lp::solve_lp(p);
  if (r.status != lp::LpStatus::optimal || r.value <= 0) return std::nullopt;
  r.point.pop_back();
  return r.point;
}

bool is_acyclic(const Signature& s) { return acyclicity_witness(s).has_value(); }

Atlas atlas_from_signature(const Graph& g, const Signature& s, const EnumerationLimits& limits) {
  Atlas atlas;
  const bool internal = s.flavor() == SignatureFlavor::cocircuit;
  atlas.flavor = internal ? BaseFlavor::internal : BaseFlavor::external;
  const std::size_t n = static_cast<std::size_t>(g.num_edges());
  for (const SpanningTree& t : spanning_trees(g, limits)) {
    Fourientation f(n, EdgeState::bioriented);
    for (int e = 0; e < g.num_edges(); ++e) {
      if (t.contains(e) != internal) continue;
      SignedEdgeSet c = internal ? fundamental_cocycle(g, t, e).edges : fundamental_cycle(g, t, e);
      f[static_cast<std::size_t>(e)] = s.at(c.support()).sign(e) > 0 ? EdgeState::forward : EdgeState::backward;
    }
    atlas.bases.emplace(t, OrientedBase(g, t, std::move(f), atlas.flavor));
  }
  return atlas;
}

bool atlas_is_triangulating(const Graph& g, const Atlas& a, const Signature& s) {
  (void)g;
  for (const auto& [tree, base] : a.bases)
    for (const auto& [support, value] : s.values())
      if (contains(base.arcs(), value.negated())) return false;
  return true;
}

bool is_triangulating_signature(const Graph& g, const Signature& s, const EnumerationLimits& limits) {
  return atlas_is_triangulating(g, atlas_from_signature(g, s, limits), s);
}

Signature reference_signature(const Graph& g, int q, const EnumerationLimits& limits) {
  if (q < 0 || q >= g.num_vertices()) throw Error("unknown_vertex", "base vertex out of range");
  std::vector<SignedEdgeSet> values;
  for (VertexMask w : biconnected_subsets(g, limits))
    if (!has_bit(w, q)) values.push_back(signed_cut(g, w));
  return Signature(g, SignatureFlavor::cocircuit, values);
}

std::optional<Signature> signature_of_atlas(const Graph& g, const Atlas& a, const EnumerationLimits& limits) {
  const bool internal = a.flavor == BaseFlavor::internal;
  std::map<EdgeMask, SignedEdgeSet> seen;
  for (const auto& [tree, base] : a.bases)
    for (int e = 0; e < g.num_edges(); ++e) {
      if (tree.contains(e) != internal) continue;
      SignedEdgeSet c = internal ? fundamental_cocycle(g, tree, e).edges : fundamental_cycle(g, tree, e);
      EdgeState st = base.arcs()[static_cast<std::size_t>(e)];
      if (!is_one_way(st)) return std::nullopt;
      int want = st == EdgeState::forward ? 1 : -1;
      SignedEdgeSet value = c.sign(e) == want ? c : c.negated();
      auto [it, fresh] = seen.emplace(value.support(), value);
      if (!fresh && it->second != value) return std::nullopt;
    }
  std::vector<SignedEdgeSet> values;
  for (auto& [support, value] : seen) values.push_back(value);
  auto flavor = internal ? SignatureFlavor::cocircuit : SignatureFlavor::circuit;
  if (values.size() != circuits_of(g, flavor, limits).size()) return std::nullopt;
  return Signature(g, flavor, values);
}

std::map<SpanningTree, PicardClass> bby_map(const Graph& g, const Atlas& aext, const Atlas& aint) {
  if (aext.bases.size() != aint.bases.size())
    throw Error("tree_mismatch", "atlases cover different tree sets");
  Reducer reducer(g, 0);
  std::map<SpanningTree, PicardClass> out;
  std::set<Divisor> classes;
  for (const auto& [tree, ext] : aext.bases) {
    auto it = aint.bases.find(tree);
    if (it == aint.bases.end()) throw Error("tree_mismatch", "internal atlas misses a tree");
    PicardClass c = reducer.reduce(divisor_of(g, intersect(ext, it->second)));
    if (!classes.insert(c.representative).second)
      throw Error("not_dissecting", "atlas pair is not dissecting");
    out.emplace(tree, std::move(c));
  }
  return out;
}

}  // namespace chipstab
