#include "chipstab/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <set>
#include <sstream>

#include "chipstab/error.hpp"

namespace chipstab::io {

json to_json(const BigInt& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json to_json(const Rational& x) { return to_string(x); }

json to_json(const Divisor& d) {
  json out = json::array();
  for (const auto& x : d.chips()) out.push_back(to_json(x));
  return out;
}

json edge_list_json(EdgeMask edges) {
  json out = json::array();
  for (EdgeMask m = edges; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

json to_json(const SignedEdgeSet& s) {
  json support = json::array(), signs = json::array();
  for (auto [e, sign] : s.entries()) {
    support.push_back(e);
    signs.push_back(sign);
  }
  return {{"support", support}, {"signs", signs}};
}

json to_json(const Signature& s) {
  json out = json::array();
  for (const auto& [support, value] : s.values()) out.push_back(to_json(value));
  return out;
}

json to_json(const Atlas& a) {
  json out = json::object();
  for (const auto& [tree, base] : a.bases) out[std::to_string(tree.edges)] = base.arcs().str();
  return out;
}

json to_json(const TreeCharge& c) {
  json out = json::object();
  for (const auto& [tree, d] : c.values) out[std::to_string(tree.edges)] = to_json(d);
  return out;
}

json to_json(const RepresentativeSet& r) {
  json divisors = json::array();
  for (const auto& d : r.divisors) divisors.push_back(to_json(d));
  json provenance = json::object();
  for (const auto& [key, value] : r.provenance) provenance[key] = value;
  return {{"divisors", divisors}, {"size", r.divisors.size()}, {"provenance", provenance}};
}

json to_json(const CompletenessReport& r) {
  json out = {{"complete", r.complete}, {"cardinality", r.cardinality}, {"expected", r.expected}};
  if (r.equivalent_pair) out["equivalent_pair"] = {to_json(r.equivalent_pair->first), to_json(r.equivalent_pair->second)};
  return out;
}

json to_json(const Polarization& p) {
  json out = json::array();
  for (const auto& x : p.values()) out.push_back(to_string(x));
  return out;
}

std::string subset_key(const Graph& g, VertexMask w) {
  std::string out;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (has_bit(w, v)) {
      if (!out.empty()) out += ",";
      out += g.vertex_id(v);
    }
  return out;
}

json to_json(const Graph& g, const VStability& n) {
  json out = json::object();
  for (const auto& [w, value] : n.values) out[subset_key(g, w)] = to_json(value);
  return out;
}

json to_json(const MatroidMatrix& m) {
  json rows = json::array();
  for (const auto& row : m.entries) {
    json r = json::array();
    for (const auto& x : row) r.push_back(to_json(x));
    rows.push_back(r);
  }
  return {{"kind", m.kind == MatroidKind::graphic ? "graphic" : "cographic"},
          {"rows", rows},
          {"columns", m.num_columns},
          {"basis_columns", m.basis_columns}};
}

json to_json(const SimplexSet& s) {
  json out = json::array();
  for (const auto& simplex : s.simplices) out.push_back(simplex);
  return out;
}

json to_json(const TriangulationReport& r) {
  json out = {{"verdict", to_string(r.verdict)},
              {"volume_sum", to_json(r.volume_sum)},
              {"polytope_volume", to_json(r.polytope_volume)},
              {"signature_triangulating", r.signature_triangulating}};
  if (r.brute_force_volume) out["brute_force_volume"] = to_json(*r.brute_force_volume);
  if (r.overlapping_pair) out["overlapping_pair"] = {r.overlapping_pair->first, r.overlapping_pair->second};
  if (r.improper_pair) out["improper_pair"] = {r.improper_pair->first, r.improper_pair->second};
  return out;
}

namespace {

BigInt integer_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Rational x = parse_rational(j.get<std::string>());
    if (!is_integer(x)) throw Error("parse_error", "expected an integer, got " + j.dump());
    return x.get_num();
  }
  throw Error("parse_error", "expected an integer, got " + j.dump());
}

int small_int_from_json(const json& j) {
  if (!j.is_number_integer()) throw Error("parse_error", "expected an integer, got " + j.dump());
  return j.get<int>();
}

std::string string_from_json(const json& j) {
  if (!j.is_string()) throw Error("parse_error", "expected a string, got " + j.dump());
  return j.get<std::string>();
}

}  // namespace

Divisor divisor_from_json(const Graph& g, const json& j) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(g.num_vertices()))
    throw Error("parse_error", "divisor must be an array with one entry per vertex");
  Divisor d(static_cast<std::size_t>(g.num_vertices()));
  for (std::size_t v = 0; v < j.size(); ++v) d[v] = integer_from_json(j[v]);
  return d;
}

Signature signature_from_json(const Graph& g, const json& j) {
  if (!j.is_array()) throw Error("parse_error", "signature must be a list of signed sets");
  std::vector<SignedEdgeSet> values;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("support") || !item.contains("signs") ||
        item["support"].size() != item["signs"].size())
      throw Error("parse_error", "signed set needs matching support and signs arrays");
    SignedEdgeSet s;
    for (std::size_t k = 0; k < item["support"].size(); ++k) {
      int e = small_int_from_json(item["support"][k]);
      int sign = small_int_from_json(item["signs"][k]);
      if (e < 0 || e >= g.num_edges() || (sign != 1 && sign != -1))
        throw Error("parse_error", "bad signed entry in " + item.dump());
      (sign > 0 ? s.positive : s.negative) |= EdgeMask{1} << e;
    }
    values.push_back(s);
  }
  // A support can be both a cycle and a bond (the 4-cycle of K4), so the
  // flavor is read off the signed vectors as a whole.
  std::set<SignedEdgeSet> cycles;
  for (const auto& c : simple_cycles(g)) {
    cycles.insert(c);
    cycles.insert(c.negated());
  }
  bool all_cycles = values.size() * 2 == cycles.size() &&
                    std::all_of(values.begin(), values.end(), [&](const SignedEdgeSet& v) { return cycles.count(v); });
  return Signature(g, all_cycles ? SignatureFlavor::circuit : SignatureFlavor::cocircuit, values);
}

Atlas atlas_from_json(const Graph& g, const json& j) {
  if (!j.is_object()) throw Error("parse_error", "atlas must map tree masks to fourientations");
  Atlas a;
  bool first = true;
  for (const auto& [key, value] : j.items()) {
    EdgeMask mask = 0;
    try {
      mask = std::stoull(key);
    } catch (const std::exception&) {
      throw Error("parse_error", "bad tree mask '" + key + "'");
    }
    SpanningTree t{mask};
    Fourientation f = Fourientation::parse(string_from_json(value));
    if (f.size() != static_cast<std::size_t>(g.num_edges())) throw Error("parse_error", "fourientation length mismatch");
    // Bioriented tree edges mean an external base.
    BaseFlavor flavor = BaseFlavor::internal;
    for (int e = 0; e < g.num_edges(); ++e)
      if (t.contains(e) && f[static_cast<std::size_t>(e)] == EdgeState::bioriented) flavor = BaseFlavor::external;
    if (first) a.flavor = flavor;
    else if (flavor != a.flavor) throw Error("flavor_mismatch", "atlas mixes external and internal bases");
    first = false;
    a.bases.emplace(t, OrientedBase(g, t, std::move(f), flavor));
  }
  return a;
}

std::vector<Rational> rationals_from_json(const json& j) {
  if (!j.is_array()) throw Error("parse_error", "expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) {
    if (x.is_number_integer()) out.emplace_back(BigInt(std::to_string(x.get<long long>())));
    else if (x.is_string()) out.push_back(parse_rational(x.get<std::string>()));
    else throw Error("parse_error", "expected an exact rational, got " + x.dump());
  }
  return out;
}

Polarization polarization_from_json(const Graph& g, const json& j) {
  auto values = rationals_from_json(j);
  if (values.size() != static_cast<std::size_t>(g.num_vertices()))
    throw Error("parse_error", "polarization needs one value per vertex");
  return Polarization(std::move(values));
}

SimplexSet simplex_set_from_json(const json& j) {
  if (!j.is_array()) throw Error("parse_error", "simplex set must be an array of point lists");
  SimplexSet out;
  for (const auto& s : j) {
    if (!s.is_array()) throw Error("parse_error", "simplex must be an array of point indices");
    Simplex simplex;
    for (const auto& x : s) simplex.push_back(small_int_from_json(x));
    std::sort(simplex.begin(), simplex.end());
    out.simplices.push_back(std::move(simplex));
  }
  std::sort(out.simplices.begin(), out.simplices.end());
  return out;
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string fixed(double x) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << (std::abs(x) < 5e-4 ? 0.0 : x);
  return out.str();
}

}  // namespace

std::string figure_dot(const Graph& g, const std::string& name, const std::vector<Panel>& panels, int per_row) {
  const int nv = g.num_vertices();
  std::ostringstream out;
  out << "digraph " << quoted(name) << " {\n"
      << "  graph [layout=neato, splines=true];\n"
      << "  node [shape=circle, width=0.3, fixedsize=true, fontsize=10];\n"
      << "  edge [arrowsize=0.6];\n";
  for (std::size_t k = 0; k < panels.size(); ++k) {
    const Panel& panel = panels[k];
    double ox = 2.5 * static_cast<double>(static_cast<int>(k) % per_row);
    double oy = -2.5 * static_cast<double>(static_cast<int>(k) / per_row);
    std::string prefix = "p" + std::to_string(k) + "_";
    out << "  subgraph " << quoted("cluster_" + std::to_string(k)) << " {\n"
        << "    label=" << quoted(panel.caption) << ";\n";
    for (int v = 0; v < nv; ++v) {
      double angle = std::numbers::pi / 2 - 2 * std::numbers::pi * v / nv;
      double x = ox + 0.75 * std::cos(angle), y = oy + 0.75 * std::sin(angle);
      std::string label = g.vertex_id(v);
      if (panel.chips) label += "\\n" + (*panel.chips)[static_cast<std::size_t>(v)].get_str();
      out << "    " << quoted(prefix + g.vertex_id(v)) << " [label=" << quoted(label) << ", pos=\"" << fixed(x)
          << "," << fixed(y) << "!\"];\n";
    }
    for (int e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      std::string a = quoted(prefix + g.vertex_id(ed.tail)), b = quoted(prefix + g.vertex_id(ed.head));
      if (has_bit(panel.hidden, e)) {
        out << "    " << a << " -> " << b << " [dir=none, style=dotted, color=gray];\n";
        continue;
      }
      switch (panel.arcs[static_cast<std::size_t>(e)]) {
        case EdgeState::forward: out << "    " << a << " -> " << b << ";\n"; break;
        case EdgeState::backward: out << "    " << b << " -> " << a << ";\n"; break;
        case EdgeState::bioriented: out << "    " << a << " -> " << b << " [dir=both];\n"; break;
        case EdgeState::unoriented: out << "    " << a << " -> " << b << " [dir=none, penwidth=2];\n"; break;
      }
    }
    out << "  }\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace chipstab::io
