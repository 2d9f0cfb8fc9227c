#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chipstab/chipfiring.hpp"
#include "chipstab/graph.hpp"
#include "chipstab/orientations.hpp"
#include "chipstab/signatures.hpp"

namespace chipstab {

// A chip at the head of every arc outside t. Tree edges must be unoriented
// and all others one-way, else throws "malformed_orientation".
Divisor break_divisor(const Graph& g, const SpanningTree& t, const Fourientation& ext);

// Degree-zero divisor per spanning tree.
struct TreeCharge {
  std::map<SpanningTree, Divisor> values;

  friend bool operator==(const TreeCharge&, const TreeCharge&) = default;
};

// Throws "invalid_charge" unless the charge covers exactly ST(G) with
// degree-zero values.
void validate_charge(const Graph& g, const TreeCharge& charge, const EnumerationLimits& limits = {});

struct RepresentativeSet {
  std::vector<Divisor> divisors;  // sorted, distinct
  std::vector<std::pair<std::string, std::string>> provenance;
};

// D(T, O) + charge(T) over every tree and every orientation of its
// external edges.
RepresentativeSet generalized_break_divisors(const Graph& g, const TreeCharge& charge,
                                             const EnumerationLimits& limits = {});

// The zero-charge case, certified complete. Throws TheoremViolation if the
// certification fails.
RepresentativeSet all_break_divisors(const Graph& g, const EnumerationLimits& limits = {});

// T -> divisor_of(-(T*)^c) + (q) for the internal base T* of s's atlas.
// Throws "not_triangulating" when s is not triangulating.
TreeCharge charge_from_signature(const Graph& g, const Signature& s, int q, const EnumerationLimits& limits = {});

struct CompletenessReport {
  bool complete = false;
  std::size_t cardinality = 0;
  std::size_t expected = 0;  // |ST(G)|
  std::optional<std::pair<Divisor, Divisor>> equivalent_pair;
};

CompletenessReport certify_complete(const Graph& g, const RepresentativeSet& r, const EnumerationLimits& limits = {});

}  // namespace chipstab
