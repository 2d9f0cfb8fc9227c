#include "chipstab/stability.hpp"

#include <deque>
#include <set>

#include "chipstab/error.hpp"
#include "chipstab/lp.hpp"

namespace chipstab {

namespace {

std::string subset_name(const Graph& g, VertexMask w) {
  std::string out = "{";
  for (int v = 0; v < g.num_vertices(); ++v)
    if (has_bit(w, v)) {
      if (out.size() > 1) out += ",";
      out += g.vertex_id(v);
    }
  return out + "}";
}

}  // namespace

std::optional<std::string> vstability_violation(const Graph& g, const VStability& n, const EnumerationLimits& limits) {
  auto subsets = biconnected_subsets(g, limits);
  if (subsets.size() != n.values.size()) return "values must be given on exactly the biconnected subsets";
  for (VertexMask w : subsets)
    if (!n.values.count(w)) return "no value for " + subset_name(g, w);
  const VertexMask all = g.all_vertices();
  for (VertexMask w : subsets) {
    BigInt lhs = n.values.at(w) + n.values.at(all & ~w);
    if (lhs != n.degree + 1 - cut_size(g, w))
      return "complement identity fails at " + subset_name(g, w);
  }
  for (std::size_t i = 0; i < subsets.size(); ++i)
    for (std::size_t j = i + 1; j < subsets.size(); ++j) {
      VertexMask w1 = subsets[i], w2 = subsets[j];
      if (w1 & w2) continue;
      auto it = n.values.find(w1 | w2);
      if (it == n.values.end()) continue;
      BigInt gap = it->second - n.values.at(w1) - n.values.at(w2) - edges_between(g, w1, w2);
      if (gap < -1 || gap > 0)
        return "gluing window fails for " + subset_name(g, w1) + " and " + subset_name(g, w2);
    }
  return std::nullopt;
}

Polarization::Polarization(std::vector<Rational> values) : values_(std::move(values)) {
  Rational total = 0;
  for (const auto& x : values_) total += x;
  if (!is_integer(total)) throw Error("non_integral_degree", "polarization degree " + to_string(total) + " is not an integer");
}

BigInt Polarization::degree() const {
  Rational total = 0;
  for (const auto& x : values_) total += x;
  return total.get_num();
}

Rational Polarization::sum_over(VertexMask w) const {
  Rational total = 0;
  for (std::size_t v = 0; v < values_.size(); ++v)
    if (has_bit(w, static_cast<int>(v))) total += values_[v];
  return total;
}

namespace {

void check_size(const Graph& g, const Polarization& p) {
  if (p.size() != static_cast<std::size_t>(g.num_vertices()))
    throw Error("mismatched_graph", "polarization length does not match the graph");
}

Rational wall_value(const Graph& g, const Polarization& p, VertexMask w) {
  return p.sum_over(w) - make_rational(cut_size(g, w), 2);
}

}  // namespace

bool is_generic(const Graph& g, const Polarization& p, const EnumerationLimits& limits) {
  check_size(g, p);
  for (VertexMask w : biconnected_subsets(g, limits))
    if (is_integer(wall_value(g, p, w))) return false;
  return true;
}

VStability vstability_from_polarization(const Graph& g, const Polarization& p, const EnumerationLimits& limits) {
  check_size(g, p);
  VStability n;
  n.degree = p.degree();
  for (VertexMask w : biconnected_subsets(g, limits)) {
    Rational x = wall_value(g, p, w);
    if (is_integer(x))
      throw Error("non_generic_polarization",
                  "polarization lies on the wall of " + subset_name(g, w) + " at level " + to_string(x));
    n.values.emplace(w, ceil_of(x));
  }
  if (auto bad = vstability_violation(g, n, limits))
    throw Error("internal_error", "polarization produced an invalid V-stability: " + *bad);
  return n;
}

Polarization phi_pcan(const Graph& g) {
  if (g.num_edges() == 0) throw Error("degenerate_polarization", "canonical polarization needs at least one edge");
  Rational c = make_rational(g.num_edges() + 1, 2 * g.num_edges());
  std::vector<Rational> values;
  for (int v = 0; v < g.num_vertices(); ++v) values.push_back(c * g.degree(v) - 1);
  return Polarization(std::move(values));
}

TreeCharge charge_from_vstability(const Graph& g, const VStability& n, const EnumerationLimits& limits) {
  if (n.degree != genus(g)) throw Error("not_vstability", "not a V-stability of degree g");
  if (auto bad = vstability_violation(g, n, limits)) throw Error("not_vstability", "not a V-stability: " + *bad);
  const std::size_t nv = static_cast<std::size_t>(g.num_vertices());
  TreeCharge out;
  for (const SpanningTree& t : spanning_trees(g, limits)) {
    // Root at vertex 0; the far side of v's parent edge is v's subtree.
    std::vector<int> parent(nv, -1), order{0};
    std::vector<VertexMask> subtree(nv, 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
      int v = order[i];
      for (int e : g.incident_edges(v)) {
        if (!t.contains(e)) continue;
        int u = g.other_end(e, v);
        if (u == 0 || parent[static_cast<std::size_t>(u)] != -1) continue;
        parent[static_cast<std::size_t>(u)] = v;
        order.push_back(u);
      }
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      int v = order[i];
      subtree[static_cast<std::size_t>(v)] |= VertexMask{1} << v;
      if (v != 0) subtree[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])] |= subtree[static_cast<std::size_t>(v)];
    }
    std::vector<BigInt> side_sum(nv);
    for (int v = 1; v < g.num_vertices(); ++v) {
      VertexMask s = subtree[static_cast<std::size_t>(v)];
      side_sum[static_cast<std::size_t>(v)] = n.values.at(s) - induced_genus(g, s);
    }
    Divisor d = Divisor::zero(g);
    for (int v = 1; v < g.num_vertices(); ++v) {
      d[static_cast<std::size_t>(v)] += side_sum[static_cast<std::size_t>(v)];
      int p = parent[static_cast<std::size_t>(v)];
      if (p != 0) d[static_cast<std::size_t>(p)] -= side_sum[static_cast<std::size_t>(v)];
    }
    BigInt rest = d.degree();
    d[0] -= rest;
    out.values.emplace(t, std::move(d));
  }
  return out;
}

VStability vstability_from_charge(const Graph& g, const TreeCharge& i, const EnumerationLimits& limits) {
  validate_charge(g, i, limits);
  VStability n;
  n.degree = genus(g);
  for (VertexMask w : biconnected_subsets(g, limits)) {
    EdgeMask cut = signed_cut(g, w).support();
    std::optional<BigInt> value;
    for (const auto& [t, d] : i.values) {
      if (popcount(t.edges & cut) != 1) continue;
      BigInt x = induced_genus(g, w);
      for (int v = 0; v < g.num_vertices(); ++v)
        if (has_bit(w, v)) x += d[static_cast<std::size_t>(v)];
      if (!value) value = x;
      else if (*value != x)
        throw Error("not_stability_induced", "charge is not stability-induced: trees disagree on " + subset_name(g, w));
    }
    if (!value) throw Error("internal_error", "no spanning tree cuts " + subset_name(g, w) + " once");
    n.values.emplace(w, *value);
  }
  if (auto bad = vstability_violation(g, n, limits))
    throw Error("not_stability_induced", "charge is not stability-induced: " + *bad);
  return n;
}

Signature cocycle_flip(const Graph& g, const Signature& s, EdgeMask bond) {
  (void)g;
  if (s.flavor() != SignatureFlavor::cocircuit) throw Error("flavor_mismatch", "cocycle flips act on cocircuit signatures");
  return s.flipped(bond);
}

std::optional<std::vector<EdgeMask>> flip_path(const Graph& g, const Signature& from, const Signature& to,
                                               bool acyclic_only, const EnumerationLimits& limits) {
  if (from.flavor() != SignatureFlavor::cocircuit || to.flavor() != SignatureFlavor::cocircuit)
    throw Error("flavor_mismatch", "flip paths connect cocircuit signatures");
  if (!is_triangulating_signature(g, from, limits) || !is_triangulating_signature(g, to, limits))
    throw Error("not_triangulating", "flip path endpoints must be triangulating");
  if (from == to) return std::vector<EdgeMask>{};

  std::vector<EdgeMask> supports;
  for (const auto& [support, value] : from.values()) supports.push_back(support);
  if (supports.size() > 64) throw Error("enumeration_too_large", "too many bonds for the flip search");
  std::uint64_t target = 0;
  for (std::size_t k = 0; k < supports.size(); ++k)
    if (from.at(supports[k]) != to.at(supports[k])) target |= std::uint64_t{1} << k;

  auto signature_at = [&](std::uint64_t mask) {
    Signature s = from;
    for (std::size_t k = 0; k < supports.size(); ++k)
      if ((mask >> k) & 1u) s = s.flipped(supports[k]);
    return s;
  };
  auto admissible = [&](std::uint64_t mask) {
    Signature s = signature_at(mask);
    return acyclic_only ? is_acyclic(s) : is_triangulating_signature(g, s, limits);
  };
  if (acyclic_only && (!is_acyclic(from) || !is_acyclic(to))) return std::nullopt;

  std::map<std::uint64_t, std::pair<std::uint64_t, std::size_t>> parent;  // node -> (prev, flipped bond)
  std::set<std::uint64_t> rejected;
  std::deque<std::uint64_t> frontier{0};
  parent.emplace(0, std::make_pair(0, supports.size()));
  while (!frontier.empty()) {
    std::uint64_t node = frontier.front();
    frontier.pop_front();
    for (std::size_t k = 0; k < supports.size(); ++k) {
      std::uint64_t next = node ^ (std::uint64_t{1} << k);
      if (parent.count(next) || rejected.count(next)) continue;
      if (next != target && !admissible(next)) {
        rejected.insert(next);
        continue;
      }
      parent.emplace(next, std::make_pair(node, k));
      if (parent.size() > limits.max_flip_nodes)
        throw Error("enumeration_too_large", "flip search exceeded " + std::to_string(limits.max_flip_nodes) + " nodes");
      if (next == target) {
        std::vector<EdgeMask> path;
        for (std::uint64_t cur = target; cur != 0; cur = parent.at(cur).first)
          path.push_back(supports[parent.at(cur).second]);
        std::reverse(path.begin(), path.end());
        return path;
      }
      frontier.push_back(next);
    }
  }
  return std::nullopt;
}

ClassicalReport certify_classical(const Graph& g, const Signature& s, int q, const EnumerationLimits& limits) {
  ClassicalReport report;
  report.acyclic = is_acyclic(s);
  report.stability = vstability_from_charge(g, charge_from_signature(g, s, q, limits), limits);

  const std::size_t nv = static_cast<std::size_t>(g.num_vertices());
  lp::LpProblem p(nv + 1);
  for (std::size_t v = 0; v < nv; ++v) p.bounds[v] = lp::Bound::free();
  p.bounds[nv] = lp::Bound{std::nullopt, Rational(1, 2)};
  p.objective[nv] = 1;
  std::vector<Rational> total(nv + 1, Rational(1));
  total[nv] = 0;
  p.add_row(std::move(total), lp::Relation::equal, Rational(genus(g)));
  for (const auto& [w, value] : report.stability.values) {
    std::vector<Rational> row(nv + 1);
    for (std::size_t v = 0; v < nv; ++v)
      if (has_bit(w, static_cast<int>(v))) row[v] = 1;
    Rational half_cut = make_rational(cut_size(g, w), 2);
    row[nv] = -1;
    p.add_row(row, lp::Relation::greater_equal, Rational(value) - 1 + half_cut);
    row[nv] = 1;
    p.add_row(row, lp::Relation::less_equal, Rational(value) + half_cut);
  }
  auto r = lp::solve_lp(p);
  if (r.status != lp::LpStatus::optimal) {
    report.finding = "chamber system is infeasible";
    return report;
  }
  report.slack = r.value;
  if (r.value <= 0) {
    report.finding = "best chamber slack is " + to_string(r.value) + ", no open chamber realizes this V-stability";
    return report;
  }
  r.point.pop_back();
  Polarization phi(std::move(r.point));
  if (!is_generic(g, phi, limits) || vstability_from_polarization(g, phi, limits) != report.stability)
    throw Error("internal_error", "chamber point does not reproduce the V-stability");
  report.phi = std::move(phi);
  report.classical = true;
  return report;
}

}  // namespace chipstab
