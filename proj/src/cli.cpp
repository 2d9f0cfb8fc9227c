#include "chipstab/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "chipstab/error.hpp"
#include "chipstab/graph_io.hpp"
#include "chipstab/serialize.hpp"

namespace chipstab::cli {

namespace {

using io::json;

#ifndef CHIPSTAB_DATA_DIR
#define CHIPSTAB_DATA_DIR "data"
#endif

struct Options {
  std::string graph_path;
  std::string q;
  std::string weights;
  std::string heights;
  std::string signature;
  std::string flavor = "cocircuit";
  std::string kind = "cographic";
  std::string format = "json";
  std::string out_dir = "figures";
  std::string phi;
  std::string from;
  std::string to;
  std::string simplices;
  std::string flip = "t";
  bool acyclic_only = false;
  int budget_edges = EnumerationLimits{}.max_edges;
  int geometry_edges = EnumerationLimits{}.max_geometry_edges;
};

struct Context {
  Graph g;
  EnumerationLimits limits;
  json provenance = json::object();
};

Graph load(const Options& o) {
  if (o.graph_path.empty()) {
    std::string bundled = std::string(CHIPSTAB_DATA_DIR) + "/kite.json";
    if (std::filesystem::exists(bundled)) return io::load_graph(bundled);
    return io::kite_graph();
  }
  return io::load_graph(o.graph_path);
}

Context make_context(const Options& o) {
  if (o.budget_edges <= 0 || o.geometry_edges <= 0) throw Error("bad_budget", "budgets must be positive");
  Context c{load(o), {}, json::object()};
  c.limits.max_edges = o.budget_edges;
  c.limits.max_geometry_edges = o.geometry_edges;
  return c;
}

int base_vertex(const Context& c, const Options& o) {
  if (o.q.empty()) return 0;
  return c.g.vertex_index(o.q);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io_error", "cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error("parse_error", what + ": " + e.what());
  }
}

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    auto seed = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing");
    return seed;
  } catch (const std::exception&) {
    throw Error("bad_option", "bad seed '" + text + "'");
  }
}

// Signed integer draws in [-2^19, 2^19) from mt19937_64, redrawn until
// `generic` accepts them.
template <class Accept>
std::vector<Rational> seeded_vector(std::uint64_t seed, std::size_t length, json& provenance, const std::string& key,
                                    Accept generic) {
  std::mt19937_64 rng(seed);
  for (int attempt = 1; attempt <= 1000; ++attempt) {
    std::vector<Rational> v;
    for (std::size_t i = 0; i < length; ++i) {
      long long draw = static_cast<long long>(rng() >> 44) - (1LL << 19);
      v.emplace_back(BigInt(std::to_string(draw)));
    }
    if (generic(v)) {
      json values = json::array();
      for (const auto& x : v) values.push_back(to_string(x));
      provenance[key] = {{"source", "seed:" + std::to_string(seed)},
                         {"generator", "mt19937_64"},
                         {"draws", attempt},
                         {"values", values}};
      return v;
    }
  }
  throw Error("non_generic_weights", "no generic draw found for seed " + std::to_string(seed));
}

bool weights_generic(const Context& c, SignatureFlavor flavor, const std::vector<Rational>& w) {
  try {
    signature_from_weights(c.g, flavor, w, c.limits);
    return true;
  } catch (const Error& e) {
    if (e.code() == "non_generic_weights") return false;
    throw;
  }
}

std::vector<Rational> resolve_weights(Context& c, const std::string& spec, SignatureFlavor flavor,
                                      const std::string& key = "weights") {
  const std::size_t n = static_cast<std::size_t>(c.g.num_edges());
  if (spec.rfind("seed:", 0) == 0)
    return seeded_vector(parse_seed(spec.substr(5)), n, c.provenance, key,
                         [&](const std::vector<Rational>& w) { return weights_generic(c, flavor, w); });
  if (spec.rfind("file:", 0) == 0) {
    std::string path = spec.substr(5);
    auto w = io::rationals_from_json(parse_json_text(read_file(path), path));
    if (w.size() != n) throw Error("parse_error", "weight file needs one value per edge");
    c.provenance[key] = {{"source", spec}};
    return w;
  }
  throw Error("bad_option", "weights must be seed:<n> or file:<path>, got '" + spec + "'");
}

SignatureFlavor parse_flavor(const std::string& s) {
  if (s == "cocircuit") return SignatureFlavor::cocircuit;
  if (s == "circuit") return SignatureFlavor::circuit;
  throw Error("bad_option", "flavor must be circuit or cocircuit");
}

// "reference", "seed:<n>", or "file:<path>" holding either a signature or a
// weight vector.
Signature resolve_signature(Context& c, const std::string& spec, int q, SignatureFlavor flavor,
                            const std::string& key = "signature") {
  if (spec.empty() || spec == "reference") {
    if (flavor != SignatureFlavor::cocircuit) throw Error("bad_option", "reference signatures are cocircuit signatures");
    c.provenance[key] = {{"source", "reference"}, {"q", c.g.vertex_id(q)}};
    return reference_signature(c.g, q, c.limits);
  }
  if (spec.rfind("file:", 0) == 0) {
    std::string path = spec.substr(5);
    json j = parse_json_text(read_file(path), path);
    if (j.is_array() && !j.empty() && j[0].is_object()) {
      c.provenance[key] = {{"source", spec}};
      return io::signature_from_json(c.g, j);
    }
  }
  auto w = resolve_weights(c, spec, flavor, key);
  return signature_from_weights(c.g, flavor, w, c.limits);
}

Signature signature_option(Context& c, const Options& o, int q, SignatureFlavor flavor) {
  if (!o.signature.empty() && !o.weights.empty()) throw Error("bad_option", "give --weights or --signature, not both");
  return resolve_signature(c, o.weights.empty() ? o.signature : o.weights, q, flavor);
}

json graph_summary(const Context& c) {
  return {{"vertices", c.g.num_vertices()},
          {"edges", c.g.num_edges()},
          {"genus", genus(c.g)},
          {"trees", spanning_trees(c.g, c.limits).size()}};
}

json tree_json(const Graph& g, const SpanningTree& t) {
  json edges = json::array();
  for (EdgeMask m = t.edges; m; m &= m - 1) {
    const Edge& ed = g.edge(std::countr_zero(m));
    edges.push_back(g.vertex_id(ed.tail) + g.vertex_id(ed.head));
  }
  return {{"mask", t.edges}, {"edges", edges}};
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

// Externals of each tree oriented by the circuit signature of weights 2^e;
// its BBY pairing with any triangulating internal atlas is bijective.
Atlas panel_external_atlas(const Context& c) {
  std::vector<Rational> w;
  BigInt x = 1;
  for (int e = 0; e < c.g.num_edges(); ++e, x *= 2) w.emplace_back(x);
  return atlas_from_signature(c.g, signature_from_weights(c.g, SignatureFlavor::circuit, w, c.limits), c.limits);
}

std::vector<io::Panel> break_divisor_panels(const Context& c, const TreeCharge& charge, bool show_charge) {
  Atlas ext = panel_external_atlas(c);
  std::vector<io::Panel> panels;
  for (const auto& [t, base] : ext.bases) {
    Fourientation f = base.arcs();
    for (std::size_t e = 0; e < f.size(); ++e)
      if (t.contains(static_cast<int>(e))) f[e] = EdgeState::unoriented;
    Divisor d = break_divisor(c.g, t, f);
    if (show_charge) d += charge.values.at(t);
    std::string caption;
    for (std::size_t v = 0; v < d.size(); ++v) caption += (v ? "," : "(") + d[v].get_str();
    panels.push_back({caption + ")", f, d, 0});
  }
  return panels;
}

std::vector<io::Panel> atlas_panels(const Context& c, const Atlas& a) {
  std::vector<io::Panel> panels;
  for (const auto& [t, base] : a.bases) panels.push_back({"T=" + std::to_string(t.edges), base.arcs(), std::nullopt, 0});
  (void)c;
  return panels;
}

std::vector<io::Panel> charge_panels(const Context& c, const Atlas& internal, const TreeCharge& charge) {
  std::vector<io::Panel> panels;
  for (const auto& [t, base] : internal.bases) {
    const Divisor& d = charge.values.at(t);
    std::string caption;
    for (std::size_t v = 0; v < d.size(); ++v) caption += (v ? "," : "I=(") + d[v].get_str();
    panels.push_back({caption + ")", base.arcs(), d, c.g.all_edges() & ~t.edges});
  }
  return panels;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("io_error", "cannot write '" + path.string() + "'");
  out << text;
}

void check_format(const Options& o) {
  if (o.format != "json" && o.format != "dot") throw Error("bad_option", "format must be json or dot");
}

int cmd_info(const Options& o, std::ostream& out) {
  Context c = make_context(o);
  json j = graph_summary(c);
  j["picard_classes"] = io::to_json(picard_class_count(c.g));
  j["biconnected_subsets"] = biconnected_subsets(c.g, c.limits).size();
  j["bonds"] = bonds(c.g, c.limits).size();
  j["cycles"] = simple_cycles(c.g, c.limits).size();
  j["vertex_ids"] = c.g.vertex_ids();
  emit(out, j);
  return 0;
}

int cmd_trees(const Options& o, std::ostream& out) {
  Context c = make_context(o);
  json trees = json::array();
  for (const auto& t : spanning_trees(c.g, c.limits)) trees.push_back(tree_json(c.g, t));
  emit(out, {{"trees", trees}, {"count", trees.size()}});
  return 0;
}

TreeCharge zero_charge(const Context& c) {
  TreeCharge zero;
  for (const auto& t : spanning_trees(c.g, c.limits)) zero.values.emplace(t, Divisor::zero(c.g));
  return zero;
}

int cmd_breakdiv(const Options& o, std::ostream& out) {
  check_format(o);
  Context c = make_context(o);
  if (o.format == "dot") {
    out << io::figure_dot(c.g, "break_divisors", break_divisor_panels(c, zero_charge(c), false));
    return 0;
  }
  RepresentativeSet r = all_break_divisors(c.g, c.limits);
  emit(out, {{"break_divisors", io::to_json(r)}, {"certificate", io::to_json(certify_complete(c.g, r, c.limits))}});
  return 0;
}

int cmd_signature(const Options& o, std::ostream& out) {
  Context c = make_context(o);
  int q = base_vertex(c, o);
  Signature s = signature_option(c, o, q, parse_flavor(o.flavor));
  emit(out, {{"flavor", o.flavor},
             {"signature", io::to_json(s)},
             {"acyclic", is_acyclic(s)},
             {"triangulating", is_triangulating_signature(c.g, s, c.limits)},
             {"provenance", c.provenance}});
  return 0;
}

int cmd_atlas(const Options& o, std::ostream& out) {
  check_format(o);
  Context c = make_context(o);
  int q = base_vertex(c, o);
  Signature s = signature_option(c, o, q, parse_flavor(o.flavor));
  Atlas a = atlas_from_signature(c.g, s, c.limits);
  if (o.format == "dot") {
    out << io::figure_dot(c.g, "atlas", atlas_panels(c, a));
    return 0;
  }
  emit(out, {{"flavor", a.flavor == BaseFlavor::internal ? "internal" : "external"},
             {"atlas", io::to_json(a)},
             {"provenance", c.provenance}});
  return 0;
}

int cmd_charge(const Options& o, std::ostream& out) {
  Context c = make_context(o);
  int q = base_vertex(c, o);
  Signature s = signature_option(c, o, q, SignatureFlavor::cocircuit);
  TreeCharge charge = charge_from_signature(c.g, s, q, c.limits);
  emit(out, {{"q", c.g.vertex_id(q)}, {"charge", io::to_json(charge)}, {"provenance", c.provenance}});
  return 0;
}

int cmd_gbd(const Options& o, std::ostream& out) {
  check_format(o);
  Context c = make_context(o);
  int q = base_vertex(c, o);
  Signature s = signature_option(c, o, q, SignatureFlavor::cocircuit);
  TreeCharge charge = charge_from_signature(c.g, s, q, c.limits);
  if (o.format == "dot") {
    auto panels = charge_panels(c, atlas_from_signature(c.g, s, c.limits), charge);
    for (auto& p : break_divisor_panels(c, charge, true)) panels.push_back(std::move(p));
    out << io::figure_dot(c.g, "generalized_break_divisors", panels, static_cast<int>(charge.values.size()));
    return 0;
  }
  RepresentativeSet r = generalized_break_divisors(c.g, charge, c.limits);
  r.provenance = {{"charge", "signature"}, {"q", c.g.vertex_id(q)}};
  emit(out, {{"representatives", io::to_json(r)},
             {"certificate", io::to_json(certify_complete(c.g, r, c.limits))},
             {"provenance", c.provenance}});
  return 0;
}

json classical_json(const Context& c, const ClassicalReport& r) {
  json j = {{"acyclic", r.acyclic}, {"classical", r.classical}, {"vstability", io::to_json(c.g, r.stability)}};
  if (r.phi) {
    j["phi"] = io::to_json(*r.phi);
    j["slack"] = to_string(r.slack);
  }
  if (!r.finding.empty()) j["finding"] = r.finding;
  return j;
}

int cmd_certify(const Options& o, std::ostream& out) {
  Context c = make_context(o);
  int q = base_vertex(c, o);
  Signature s = signature_option(c, o, q, SignatureFlavor::cocircuit);
  bool triangulating = is_triangulating_signature(c.g, s, c.limits);
  json j = {{"graph", graph_summary(c)}, {"q", c.g.vertex_id(q)}, {"signature", io::to_json(s)},
            {"triangulating", triangulating}};
  int code = 0;
  if (!triangulating) throw Error("not_triangulating", "signature is not triangulating");
  TreeCharge charge = charge_from_signature(c.g, s, q, c.limits);
  RepresentativeSet r = generalized_break_divisors(c.g, charge, c.limits);
  r.provenance = {{"charge", "signature"}, {"q", c.g.vertex_id(q)}};
  CompletenessReport a = certify_complete(c.g, r, c.limits);
  j["completeness"] = {{"charge", io::to_json(charge)}, {"representatives", io::to_json(r)}, {"certificate", io::to_json(a)}};
  if (!a.complete) code = 2;
  ClassicalReport b = certify_classical(c.g, s, q, c.limits);
  j["classical"] = classical_json(c, b);
  if (b.violation()) code = 2;
  j["provenance"] = c.provenance;
  if (code == 2) j["theorem_violation"] = true;
  emit(out, j);
  return code;
}

int cmd_stability_from_phi(const Options& o, std::ostream& out) {
  Context c = make_context(o);
  json phi_json;
  if (o.phi.rfind("file:", 0) == 0) phi_json = parse_json_text(read_file(o.phi.substr(5)), o.phi);
  else {
    phi_json = json::array();
    std::stringstream ss(o.phi);
    for (std::string item; std::getline(ss, item, ',');) phi_json.push_back(item);
  }
  Polarization p = io::polarization_from_json(c.g, phi_json);
  VStability n = vstability_from_polarization(c.g, p, c.limits);
  emit(out, {{"phi", io::to_json(p)}, {"degree", io::to_json(n.degree)}, {"vstability", io::to_json(c.g, n)}});
  return 0;
}

int cmd_stability_pcan(const Options& o, std::ostream& out) {
  Context c = make_context(o);
  Polarization p = phi_pcan(c.g);
  VStability n = vstability_from_polarization(c.g, p, c.limits);
  bool matches = true;
  for (const auto& [w, value] : n.values) matches = matches && value == induced_genus(c.g, w);
  emit(out, {{"phi", io::to_json(p)},
             {"generic", is_generic(c.g, p, c.limits)},
             {"vstability", io::to_json(c.g, n)},
             {"equals_induced_genus", matches}});
  return matches ? 0 : 2;
}

int cmd_stability_certify(const Options& o, std::ostream& out) {
  Context c = make_context(o);
  int q = base_vertex(c, o);
  Signature s = signature_option(c, o, q, SignatureFlavor::cocircuit);
  ClassicalReport r = certify_classical(c.g, s, q, c.limits);
  json j = classical_json(c, r);
  j["provenance"] = c.provenance;
  emit(out, j);
  return r.violation() ? 2 : 0;
}

int cmd_stability_flip(const Options& o, std::ostream& out) {
  Context c = make_context(o);
  int q = base_vertex(c, o);
  Signature from = resolve_signature(c, o.from, q, SignatureFlavor::cocircuit, "from");
  Signature to = resolve_signature(c, o.to, q, SignatureFlavor::cocircuit, "to");
  auto path = flip_path(c.g, from, to, o.acyclic_only, c.limits);
  json j = {{"acyclic_only", o.acyclic_only}, {"reachable", path.has_value()}, {"provenance", c.provenance}};
  if (path) {
    json steps = json::array();
    for (EdgeMask b : *path) steps.push_back(io::edge_list_json(b));
    j["path"] = steps;
    j["length"] = path->size();
  }
  emit(out, j);
  return 0;
}

LawrencePolytope polytope_for(const Context& c, const Options& o) {
  if (o.kind == "graphic") return lawrence_polytope(graphic_matrix(c.g));
  if (o.kind == "cographic") return lawrence_polytope(cographic_matrix(c.g));
  throw Error("bad_option", "kind must be graphic or cographic");
}

SignatureFlavor flavor_for_kind(const Options& o) {
  return o.kind == "graphic" ? SignatureFlavor::circuit : SignatureFlavor::cocircuit;
}

int cmd_lawrence_matrix(const Options& o, std::ostream& out) {
  Context c = make_context(o);
  LawrencePolytope p = polytope_for(c, o);
  json points = json::array();
  for (const auto& pt : p.points) {
    json col = json::array();
    for (const auto& x : pt) col.push_back(io::to_json(x));
    points.push_back(col);
  }
  json j = {{"matrix", io::to_json(p.matroid)}, {"lawrence_points", points}, {"dimension", p.dimension()}};
  if (c.g.num_edges() <= c.limits.max_geometry_edges)
    j["totally_unimodular"] = is_totally_unimodular(p.matroid.entries);
  emit(out, j);
  return 0;
}

std::vector<Rational> resolve_heights(Context& c, const Options& o, const LawrencePolytope& p) {
  if (!o.heights.empty() && !o.weights.empty()) throw Error("bad_option", "give --heights or --weights, not both");
  if (!o.weights.empty()) {
    auto w = resolve_weights(c, o.weights, flavor_for_kind(o));
    return heights_from_weights(w);
  }
  if (o.heights.rfind("seed:", 0) == 0)
    return seeded_vector(parse_seed(o.heights.substr(5)), static_cast<std::size_t>(p.num_points()), c.provenance,
                         "heights", [&](const std::vector<Rational>& h) {
                           try {
                             regular_triangulation(c.g, p, h, c.limits);
                             return true;
                           } catch (const Error& e) {
                             if (e.code() == "non_generic_heights") return false;
                             throw;
                           }
                         });
  if (o.heights.rfind("file:", 0) == 0) {
    c.provenance["heights"] = {{"source", o.heights}};
    return io::rationals_from_json(parse_json_text(read_file(o.heights.substr(5)), o.heights));
  }
  throw Error("bad_option", "heights must be seed:<n> or file:<path>");
}

void check_geometry_budget(const Context& c) {
  if (c.g.num_edges() > c.limits.max_geometry_edges)
    throw Error("budget_exceeded", "geometry is limited to " + std::to_string(c.limits.max_geometry_edges) +
                                       " edges; pass --geometry-edges to raise it");
}

int cmd_lawrence_triangulate(const Options& o, std::ostream& out) {
  Context c = make_context(o);
  check_geometry_budget(c);
  LawrencePolytope p = polytope_for(c, o);
  auto heights = resolve_heights(c, o, p);
  SimplexSet s = regular_triangulation(c.g, p, heights, c.limits);
  json j = {{"simplices", io::to_json(s)}, {"count", s.simplices.size()}};
  try {
    Atlas a = atlas_of_triangulation(c.g, p, s, c.limits);
    j["atlas"] = io::to_json(a);
    if (auto sig = signature_of_atlas(c.g, a, c.limits)) {
      j["signature"] = io::to_json(*sig);
      j["acyclic"] = is_acyclic(*sig);
    }
  } catch (const Error& e) {
    j["atlas_error"] = e.what();
  }
  j["provenance"] = c.provenance;
  emit(out, j);
  return 0;
}

int cmd_lawrence_verify(const Options& o, std::ostream& out) {
  Context c = make_context(o);
  check_geometry_budget(c);
  LawrencePolytope p = polytope_for(c, o);
  SimplexSet s;
  if (!o.simplices.empty()) {
    s = io::simplex_set_from_json(parse_json_text(read_file(o.simplices), o.simplices));
  } else {
    int q = base_vertex(c, o);
    Signature sig = signature_option(c, o, q, flavor_for_kind(o));
    s = triangulation_of_atlas(p, atlas_from_signature(c.g, sig, c.limits));
  }
  TriangulationReport r = verify_triangulation(c.g, p, s, c.limits);
  emit(out, {{"report", io::to_json(r)}, {"simplices", io::to_json(s)}, {"provenance", c.provenance}});
  return 0;
}

int cmd_reproduce(const Options& o, std::ostream& out) {
  Context c = make_context(o);
  int q = o.q.empty() ? c.g.vertex_index("b") : base_vertex(c, o);
  std::filesystem::path dir(o.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("io_error", "cannot create '" + dir.string() + "'");

  write_file(dir / "break_divisors.dot",
             io::figure_dot(c.g, "break_divisors", break_divisor_panels(c, zero_charge(c), false)));

  // Reference signature at q with the star of --flip reversed.
  Signature s = reference_signature(c.g, q, c.limits);
  VertexMask star = VertexMask{1} << c.g.vertex_index(o.flip);
  s = cocycle_flip(c.g, s, signed_cut(c.g, star).support());
  Atlas internal = atlas_from_signature(c.g, s, c.limits);
  write_file(dir / "atlas.dot", io::figure_dot(c.g, "atlas", atlas_panels(c, internal)));

  TreeCharge charge = charge_from_signature(c.g, s, q, c.limits);
  auto panels = charge_panels(c, internal, charge);
  for (auto& p : break_divisor_panels(c, charge, true)) panels.push_back(std::move(p));
  write_file(dir / "generalized_break_divisors.dot",
             io::figure_dot(c.g, "generalized_break_divisors", panels, static_cast<int>(charge.values.size())));

  RepresentativeSet r = generalized_break_divisors(c.g, charge, c.limits);
  CompletenessReport cert = certify_complete(c.g, r, c.limits);
  emit(out, {{"files",
              {(dir / "break_divisors.dot").string(), (dir / "atlas.dot").string(),
               (dir / "generalized_break_divisors.dot").string()}},
             {"atlas", io::to_json(internal)},
             {"representatives", io::to_json(r)},
             {"certificate", io::to_json(cert)}});
  return cert.complete ? 0 : 2;
}

void error_json(std::ostream& out, const std::string& code, const std::string& message) {
  emit(out, {{"error", {{"code", code}, {"message", message}}}});
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Chip-firing representatives, stability conditions and Lawrence triangulations", "chipstab"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Print help for every subcommand");

  auto common = [&](CLI::App* sub) {
    sub->add_option("graph", o.graph_path, "Graph file (JSON or edge list); defaults to the bundled kite");
    sub->add_option("--budget-edges", o.budget_edges, "Edge bound for exponential enumerations");
    sub->add_option("--geometry-edges", o.geometry_edges, "Edge bound for polytope computations");
  };
  auto with_q = [&](CLI::App* sub) { sub->add_option("--q", o.q, "Base vertex id"); };
  auto with_signature = [&](CLI::App* sub) {
    sub->add_option("--weights", o.weights, "seed:<n> or file:<path>");
    sub->add_option("--signature", o.signature, "reference, seed:<n>, or file:<path> (signature or weights JSON)");
  };
  auto with_format = [&](CLI::App* sub) { sub->add_option("--format", o.format, "json or dot"); };

  std::map<CLI::App*, int (*)(const Options&, std::ostream&)> handlers;
  auto add = [&](CLI::App* parent, const std::string& name, const std::string& help,
                 int (*handler)(const Options&, std::ostream&)) {
    CLI::App* sub = parent->add_subcommand(name, help);
    common(sub);
    handlers[sub] = handler;
    return sub;
  };

  add(&app, "info", "Vertex, edge, genus and tree counts", cmd_info);
  add(&app, "trees", "List spanning trees", cmd_trees);
  with_format(add(&app, "breakdiv", "Integral break divisors", cmd_breakdiv));
  {
    auto* sub = add(&app, "signature", "Build a signature and test it", cmd_signature);
    with_q(sub);
    with_signature(sub);
    sub->add_option("--flavor", o.flavor, "circuit or cocircuit");
  }
  {
    auto* sub = add(&app, "atlas", "Atlas induced by a signature", cmd_atlas);
    with_q(sub);
    with_signature(sub);
    with_format(sub);
    sub->add_option("--flavor", o.flavor, "circuit or cocircuit");
  }
  {
    auto* sub = add(&app, "charge", "Tree charge of a cocircuit signature", cmd_charge);
    with_q(sub);
    with_signature(sub);
  }
  {
    auto* sub = add(&app, "gbd", "Generalized break divisors of a signature's charge", cmd_gbd);
    with_q(sub);
    with_signature(sub);
    with_format(sub);
  }
  {
    auto* sub = add(&app, "certify", "Complete representative set and classical stability certificates", cmd_certify);
    with_q(sub);
    with_signature(sub);
  }
  CLI::App* stability = app.add_subcommand("stability", "V-stability conditions");
  stability->require_subcommand(1);
  add(stability, "from-phi", "V-stability of a polarization", cmd_stability_from_phi)
      ->add_option("--phi", o.phi, "Comma separated rationals or file:<path>")
      ->required();
  add(stability, "pcan", "Canonical polarization and its V-stability", cmd_stability_pcan);
  {
    auto* sub = add(stability, "certify-classical", "Find a polarization realizing a signature's stability",
                    cmd_stability_certify);
    with_q(sub);
    with_signature(sub);
  }
  {
    auto* sub = add(stability, "flip-path", "Shortest cocycle-flip path between signatures", cmd_stability_flip);
    with_q(sub);
    sub->add_option("--from", o.from, "reference, seed:<n> or file:<path>")->required();
    sub->add_option("--to", o.to, "reference, seed:<n> or file:<path>")->required();
    sub->add_flag("--acyclic-only", o.acyclic_only, "Stay among acyclic signatures");
  }
  CLI::App* lawrence = app.add_subcommand("lawrence", "Lawrence polytopes");
  lawrence->require_subcommand(1);
  add(lawrence, "matrix", "Matroid matrix and Lawrence points", cmd_lawrence_matrix)
      ->add_option("--kind", o.kind, "graphic or cographic");
  {
    auto* sub = add(lawrence, "triangulate", "Regular triangulation from heights", cmd_lawrence_triangulate);
    sub->add_option("--kind", o.kind, "graphic or cographic");
    sub->add_option("--heights", o.heights, "seed:<n> or file:<path>, one height per Lawrence point");
    sub->add_option("--weights", o.weights, "Edge weights turned into heights");
  }
  {
    auto* sub = add(lawrence, "verify", "Check that simplices triangulate the polytope", cmd_lawrence_verify);
    sub->add_option("--kind", o.kind, "graphic or cographic");
    sub->add_option("--simplices", o.simplices, "JSON file of point lists");
    with_q(sub);
    with_signature(sub);
  }
  {
    auto* sub = add(&app, "reproduce-figures", "Write DOT panels for the bundled kite", cmd_reproduce);
    with_q(sub);
    sub->add_option("--out", o.out_dir, "Output directory");
    sub->add_option("--flip", o.flip, "Vertex whose star is flipped for the internal atlas");
  }

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    error_json(out, "usage", e.what());
    return 1;
  }

  CLI::App* chosen = nullptr;
  for (auto& [sub, handler] : handlers)
    if (sub->parsed()) chosen = sub;
  if (!chosen) {
    error_json(out, "usage", "missing subcommand");
    return 1;
  }
  try {
    return handlers[chosen](o, out);
  } catch (const TheoremViolation& e) {
    error_json(out, e.code(), e.what());
    err << "theorem violation: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    error_json(out, e.code(), e.what());
    return 1;
  } catch (const std::exception& e) {
    error_json(out, "internal_error", e.what());
    return 1;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(std::move(args), out, err);
}

}  // namespace chipstab::cli
