#pragma once

// JSON and DOT forms of the library's values. Vertex subsets are written as
// comma-joined vertex ids in graph order, tree masks as decimal strings.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chipstab/breakdiv.hpp"
#include "chipstab/lawrence.hpp"
#include "chipstab/stability.hpp"

namespace chipstab::io {

using nlohmann::json;

json to_json(const BigInt& x);
json to_json(const Rational& x);  // "p/q" string
json to_json(const Divisor& d);
json edge_list_json(EdgeMask edges);
json to_json(const SignedEdgeSet& s);
json to_json(const Signature& s);
json to_json(const Atlas& a);
json to_json(const TreeCharge& c);
json to_json(const RepresentativeSet& r);
json to_json(const CompletenessReport& r);
json to_json(const Polarization& p);
json to_json(const Graph& g, const VStability& n);
json to_json(const MatroidMatrix& m);
json to_json(const SimplexSet& s);
json to_json(const TriangulationReport& r);

std::string subset_key(const Graph& g, VertexMask w);

Divisor divisor_from_json(const Graph& g, const json& j);
Signature signature_from_json(const Graph& g, const json& j);
Atlas atlas_from_json(const Graph& g, const json& j);
Polarization polarization_from_json(const Graph& g, const json& j);
std::vector<Rational> rationals_from_json(const json& j);
SimplexSet simplex_set_from_json(const json& j);

// One drawing in a figure: a fourientation with optional chip labels.
struct Panel {
  std::string caption;
  Fourientation arcs;
  std::optional<Divisor> chips;
  EdgeMask hidden = 0;  // drawn faint, e.g. edges a charge ignores
};

// A neato-ready digraph laying out the panels on a grid, vertices placed
// clockwise on a circle starting at the top.
std::string figure_dot(const Graph& g, const std::string& name, const std::vector<Panel>& panels, int per_row = 4);

}  // namespace chipstab::io
