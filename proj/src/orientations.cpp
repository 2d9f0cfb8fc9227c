#include "chipstab/orientations.hpp"

#include <algorithm>

#include "chipstab/error.hpp"

namespace chipstab {

Fourientation Fourientation::parse(std::string_view text) {
  std::vector<EdgeState> states;
  states.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '>': states.push_back(EdgeState::forward); break;
      case '<': states.push_back(EdgeState::backward); break;
      case '=': states.push_back(EdgeState::bioriented); break;
      case '.': states.push_back(EdgeState::unoriented); break;
      default:
        throw Error("parse_error", std::string("invalid fourientation character '") + c + "'");
    }
  }
  return Fourientation(std::move(states));
}

Fourientation Fourientation::orientation(int num_edges, EdgeMask backward_edges) {
  Fourientation f(static_cast<std::size_t>(num_edges), EdgeState::forward);
  for (int e = 0; e < num_edges; ++e)
    if (has_bit(backward_edges, e)) f[static_cast<std::size_t>(e)] = EdgeState::backward;
  return f;
}

bool Fourientation::is_orientation() const {
  return std::all_of(states_.begin(), states_.end(), is_one_way);
}

std::string Fourientation::str() const {
  std::string s;
  s.reserve(states_.size());
  for (EdgeState st : states_) s.push_back(static_cast<char>(st));
  return s;
}

namespace {

void check_edges(const Graph& g, const Fourientation& f) {
  if (f.size() != static_cast<std::size_t>(g.num_edges()))
    throw Error("mismatched_graph", "fourientation length does not match the graph");
}

}  // namespace

Divisor divisor_of(const Graph& g, const Fourientation& f) {
  check_edges(g, f);
  Divisor d = Divisor::zero(g);
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    switch (f[static_cast<std::size_t>(e)]) {
      case EdgeState::forward: d[static_cast<std::size_t>(ed.head)] += 1; break;
      case EdgeState::backward: d[static_cast<std::size_t>(ed.tail)] += 1; break;
      case EdgeState::bioriented:
        d[static_cast<std::size_t>(ed.head)] += 1;
        d[static_cast<std::size_t>(ed.tail)] += 1;
        break;
      case EdgeState::unoriented: break;
    }
  }
  for (std::size_t v = 0; v < d.size(); ++v) d[v] -= 1;
  return d;
}

namespace {

EdgeState flip(EdgeState s) {
  switch (s) {
    case EdgeState::forward: return EdgeState::backward;
    case EdgeState::backward: return EdgeState::forward;
    default: return s;
  }
}

}  // namespace

Fourientation negate(const Fourientation& f) {
  Fourientation out = f;
  for (std::size_t e = 0; e < out.size(); ++e) out[e] = flip(out[e]);
  return out;
}

Fourientation complement(const Fourientation& f) {
  Fourientation out = f;
  for (std::size_t e = 0; e < out.size(); ++e) {
    switch (out[e]) {
      case EdgeState::bioriented: out[e] = EdgeState::unoriented; break;
      case EdgeState::unoriented: out[e] = EdgeState::bioriented; break;
      default: out[e] = flip(out[e]);
    }
  }
  return out;
}

bool contains(const Fourientation& f, const SignedEdgeSet& s) {
  for (auto [e, sign] : s.entries()) {
    if (static_cast<std::size_t>(e) >= f.size()) return false;
    EdgeState st = f[static_cast<std::size_t>(e)];
    if (st == EdgeState::bioriented) continue;
    if (sign > 0 && st != EdgeState::forward) return false;
    if (sign < 0 && st != EdgeState::backward) return false;
  }
  return true;
}

OrientedBase::OrientedBase(const Graph& g, SpanningTree tree, Fourientation arcs, BaseFlavor flavor)
    : tree_(tree), arcs_(std::move(arcs)), flavor_(flavor) {
  check_edges(g, arcs_);
  if (!is_spanning_tree(g, tree_.edges)) throw Error("malformed_base", "base edges are not a spanning tree");
  for (int e = 0; e < g.num_edges(); ++e) {
    bool internal_edge = tree_.contains(e);
    bool bioriented_here = internal_edge == (flavor_ == BaseFlavor::external);
    EdgeState st = arcs_[static_cast<std::size_t>(e)];
    if (bioriented_here ? st != EdgeState::bioriented : !is_one_way(st))
      throw Error("malformed_base", "edge " + std::to_string(e) + " has the wrong state for this base flavor");
  }
}

Fourientation intersect(const OrientedBase& external, const OrientedBase& internal) {
  if (external.flavor() != BaseFlavor::external || internal.flavor() != BaseFlavor::internal)
    throw Error("flavor_mismatch", "intersect needs an external and an internal base");
  if (external.tree() != internal.tree())
    throw Error("tree_mismatch", "bases decorate different spanning trees");
  Fourientation out = external.arcs();
  for (std::size_t e = 0; e < out.size(); ++e)
    if (internal.tree().contains(static_cast<int>(e))) out[e] = internal.arcs()[e];
  return out;
}

Fourientation reverse(const Fourientation& f, const SignedEdgeSet& s) {
  Fourientation out = f;
  for (auto [e, sign] : s.entries()) {
    EdgeState want = sign > 0 ? EdgeState::forward : EdgeState::backward;
    if (static_cast<std::size_t>(e) >= f.size() || f[static_cast<std::size_t>(e)] != want)
      throw Error("not_directed", "not a directed cycle/cocycle of this orientation");
    out[static_cast<std::size_t>(e)] = flip(want);
  }
  return out;
}

bool same_reversal_class(const Graph& g, const Fourientation& o1, const Fourientation& o2) {
  if (!o1.is_orientation() || !o2.is_orientation())
    throw Error("not_orientation", "reversal classes are defined for full orientations");
  return linearly_equivalent(g, divisor_of(g, o1), divisor_of(g, o2));
}

}  // namespace chipstab
