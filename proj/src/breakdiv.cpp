#include "chipstab/breakdiv.hpp"

#include <algorithm>
#include <set>

#include "chipstab/error.hpp"

namespace chipstab {

Divisor break_divisor(const Graph& g, const SpanningTree& t, const Fourientation& ext) {
  if (ext.size() != static_cast<std::size_t>(g.num_edges()))
    throw Error("malformed_orientation", "orientation length does not match the graph");
  if (!is_spanning_tree(g, t.edges)) throw Error("malformed_orientation", "edge set is not a spanning tree");
  Divisor d = Divisor::zero(g);
  for (int e = 0; e < g.num_edges(); ++e) {
    EdgeState st = ext[static_cast<std::size_t>(e)];
    if (t.contains(e)) {
      if (st != EdgeState::unoriented)
        throw Error("malformed_orientation", "tree edge " + std::to_string(e) + " must be unoriented");
      continue;
    }
    if (!is_one_way(st)) throw Error("malformed_orientation", "external edge " + std::to_string(e) + " must be one-way");
    const Edge& ed = g.edge(e);
    d[static_cast<std::size_t>(st == EdgeState::forward ? ed.head : ed.tail)] += 1;
  }
  return d;
}

void validate_charge(const Graph& g, const TreeCharge& charge, const EnumerationLimits& limits) {
  auto trees = spanning_trees(g, limits);
  if (trees.size() != charge.values.size())
    throw Error("invalid_charge", "charge must assign a divisor to every spanning tree");
  for (const auto& t : trees) {
    auto it = charge.values.find(t);
    if (it == charge.values.end()) throw Error("invalid_charge", "charge misses a spanning tree");
    if (it->second.size() != static_cast<std::size_t>(g.num_vertices()))
      throw Error("invalid_charge", "charge divisor has the wrong length");
    if (it->second.degree() != 0) throw Error("invalid_charge", "charge values must have degree 0");
  }
}

RepresentativeSet generalized_break_divisors(const Graph& g, const TreeCharge& charge, const EnumerationLimits& limits) {
  validate_charge(g, charge, limits);
  std::set<Divisor> found;
  for (const auto& [t, shift] : charge.values) {
    std::vector<int> external;
    for (int e = 0; e < g.num_edges(); ++e)
      if (!t.contains(e)) external.push_back(e);
    // Tree part fixed; walk all 2^g orientations of the externals.
    Divisor base = shift;
    for (int e : external) base[static_cast<std::size_t>(g.edge(e).head)] += 1;
    const std::uint64_t total = std::uint64_t{1} << external.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      Divisor d = base;
      for (std::size_t i = 0; i < external.size(); ++i) {
        if (!((mask >> i) & 1u)) continue;
        const Edge& ed = g.edge(external[i]);
        d[static_cast<std::size_t>(ed.head)] -= 1;
        d[static_cast<std::size_t>(ed.tail)] += 1;
      }
      found.insert(std::move(d));
    }
  }
  RepresentativeSet out;
  out.divisors.assign(found.begin(), found.end());
  return out;
}

CompletenessReport certify_complete(const Graph& g, const RepresentativeSet& r, const EnumerationLimits& limits) {
  CompletenessReport report;
  report.cardinality = r.divisors.size();
  report.expected = spanning_trees(g, limits).size();
  Reducer reducer(g, 0);
  std::map<Divisor, const Divisor*> classes;
  for (const auto& d : r.divisors) {
    auto [it, fresh] = classes.emplace(reducer.reduce(d).representative, &d);
    if (!fresh && !report.equivalent_pair) report.equivalent_pair = std::make_pair(*it->second, d);
  }
  report.complete = !report.equivalent_pair && report.cardinality == report.expected;
  return report;
}

RepresentativeSet all_break_divisors(const Graph& g, const EnumerationLimits& limits) {
  TreeCharge zero;
  for (const auto& t : spanning_trees(g, limits)) zero.values.emplace(t, Divisor::zero(g));
  RepresentativeSet out = generalized_break_divisors(g, zero, limits);
  out.provenance = {{"charge", "zero"}};
  auto report = certify_complete(g, out, limits);
  if (!report.complete)
    throw TheoremViolation("integral break divisors are not a complete set of representatives on this graph");
  return out;
}

TreeCharge charge_from_signature(const Graph& g, const Signature& s, int q, const EnumerationLimits& limits) {
  if (q < 0 || q >= g.num_vertices()) throw Error("unknown_vertex", "base vertex out of range");
  if (s.flavor() != SignatureFlavor::cocircuit)
    throw Error("flavor_mismatch", "charge needs a cocircuit signature");
  Atlas atlas = atlas_from_signature(g, s, limits);
  if (!atlas_is_triangulating(g, atlas, s)) throw Error("not_triangulating", "signature is not triangulating");
  TreeCharge out;
  for (const auto& [t, base] : atlas.bases) {
    Divisor d = divisor_of(g, negate(complement(base.arcs())));
    d[static_cast<std::size_t>(q)] += 1;
    out.values.emplace(t, std::move(d));
  }
  return out;
}

}  // namespace chipstab
