#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "chipstab/chipfiring.hpp"
#include "chipstab/exact.hpp"
#include "chipstab/graph.hpp"
#include "chipstab/orientations.hpp"

namespace chipstab {

enum class SignatureFlavor { circuit, cocircuit };

// Simple cycles, each signed so its lowest-index edge carries +1. Sorted by
// support mask. Throws "enumeration_too_large" past limits.max_edges.
std::vector<SignedEdgeSet> simple_cycles(const Graph& g, const EnumerationLimits& limits = {});
// Bonds E(W, W^c), same sign normalization and ordering.
std::vector<SignedEdgeSet> bonds(const Graph& g, const EnumerationLimits& limits = {});
std::vector<SignedEdgeSet> circuits_of(const Graph& g, SignatureFlavor flavor,
                                       const EnumerationLimits& limits = {});

// One chosen direction per circuit (or per bond), keyed by support.
class Signature {
 public:
  // Throws "invalid_signature" unless `values` has exactly one entry per
  // circuit of the requested flavor.
  Signature(const Graph& g, SignatureFlavor flavor, const std::vector<SignedEdgeSet>& values);

  SignatureFlavor flavor() const { return flavor_; }
  const std::map<EdgeMask, SignedEdgeSet>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  // Throws "not_a_circuit" (or "not_a_bond" for cocircuit signatures).
  const SignedEdgeSet& at(EdgeMask support) const;
  bool has(EdgeMask support) const { return values_.count(support) != 0; }
  Signature flipped(EdgeMask support) const;

  friend bool operator==(const Signature&, const Signature&) = default;
  friend auto operator<=>(const Signature& a, const Signature& b) {
    return std::tie(a.flavor_, a.values_) <=> std::tie(b.flavor_, b.values_);
  }

 private:
  Signature(SignatureFlavor flavor, std::map<EdgeMask, SignedEdgeSet> values)
      : flavor_(flavor), values_(std::move(values)) {}

  SignatureFlavor flavor_;
  std::map<EdgeMask, SignedEdgeSet> values_;
};

// Orients every circuit C so that <w, C> > 0. Throws "non_generic_weights"
// naming a circuit orthogonal to w.
Signature signature_from_weights(const Graph& g, SignatureFlavor flavor, const std::vector<Rational>& w,
                                 const EnumerationLimits& limits = {});

// Decided through the separating functional: maximize t with
// <w, s(C)> >= t, |w_e| <= 1. Acyclic iff the optimum is positive.
bool is_acyclic(const Signature& s);
// The separating functional itself, when one exists.
std::optional<std::vector<Rational>> acyclicity_witness(const Signature& s);

struct Atlas {
  BaseFlavor flavor = BaseFlavor::external;
  std::map<SpanningTree, OrientedBase> bases;

  friend bool operator==(const Atlas&, const Atlas&) = default;
};

// Circuit signatures give external atlases, cocircuit signatures internal.
Atlas atlas_from_signature(const Graph& g, const Signature& s, const EnumerationLimits& limits = {});

// True when no base of the induced atlas contains the reverse of a signed
// circuit (cocircuit) of s.
bool is_triangulating_signature(const Graph& g, const Signature& s, const EnumerationLimits& limits = {});
// Same test against an explicit atlas.
bool atlas_is_triangulating(const Graph& g, const Atlas& a, const Signature& s);

// Every bond oriented into the side that avoids q.
Signature reference_signature(const Graph& g, int q, const EnumerationLimits& limits = {});

// Reads the signature back off an atlas: base at T fixes the sign of every
// fundamental circuit (cocircuit) of T. Nullopt when two bases disagree or
// some circuit is never seen.
std::optional<Signature> signature_of_atlas(const Graph& g, const Atlas& a, const EnumerationLimits& limits = {});

// T -> [divisor of intersect(aext(T), aint(T))]. Throws "not_dissecting"
// ("atlas pair is not dissecting") when two trees land in one class.
std::map<SpanningTree, PicardClass> bby_map(const Graph& g, const Atlas& aext, const Atlas& aint);

}  // namespace chipstab
