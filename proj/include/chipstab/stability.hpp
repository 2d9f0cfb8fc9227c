#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chipstab/breakdiv.hpp"
#include "chipstab/exact.hpp"
#include "chipstab/graph.hpp"
#include "chipstab/signatures.hpp"

namespace chipstab {

// n_W for every nontrivial biconnected W, together with the degree d.
struct VStability {
  BigInt degree;
  std::map<VertexMask, BigInt> values;

  friend bool operator==(const VStability&, const VStability&) = default;
};

// Checks n_W + n_{W^c} = d + 1 - |E(W, W^c)| and, for disjoint W1, W2 with
// W1, W2, W1 u W2 biconnected, -1 <= n_{W1 u W2} - n_{W1} - n_{W2} - |E(W1, W2)| <= 0.
// Returns a description of the first violated axiom.
std::optional<std::string> vstability_violation(const Graph& g, const VStability& n,
                                                const EnumerationLimits& limits = {});

// Real divisor with integer total degree.
class Polarization {
 public:
  // Throws "non_integral_degree".
  explicit Polarization(std::vector<Rational> values);

  const std::vector<Rational>& values() const { return values_; }
  const Rational& operator[](std::size_t v) const { return values_[v]; }
  std::size_t size() const { return values_.size(); }
  BigInt degree() const;
  Rational sum_over(VertexMask w) const;

  friend bool operator==(const Polarization&, const Polarization&) = default;

 private:
  std::vector<Rational> values_;
};

// phi_W - |E(W, W^c)| / 2 is integral for no biconnected W.
bool is_generic(const Graph& g, const Polarization& p, const EnumerationLimits& limits = {});

// n_W = ceil(phi_W - |E(W, W^c)| / 2). Throws "non_generic_polarization"
// naming a wall the polarization lies on.
VStability vstability_from_polarization(const Graph& g, const Polarization& p,
                                        const EnumerationLimits& limits = {});

// (|E| + 1) / (2|E|) deg(v) - 1. Throws "degenerate_polarization" on an
// edgeless graph.
Polarization phi_pcan(const Graph& g);

// Per tree, the unique degree-0 divisor whose sum over the far side S of
// every tree edge equals n_S - g(G[S]). Throws "not_vstability".
TreeCharge charge_from_vstability(const Graph& g, const VStability& n, const EnumerationLimits& limits = {});

// n_W = I(T)_W + g(G[W]) for the first tree cutting (W, W^c) once, all other
// such trees cross-checked. Throws "not_stability_induced".
VStability vstability_from_charge(const Graph& g, const TreeCharge& i, const EnumerationLimits& limits = {});

// s with the direction of one bond reversed. Throws "not_a_bond".
Signature cocycle_flip(const Graph& g, const Signature& s, EdgeMask bond);

// Shortest list of bond supports to flip, one at a time, from `from` to
// `to`, never leaving the acyclic (or, without acyclic_only, triangulating)
// signatures. Nullopt when unreachable. Throws "not_triangulating" for bad
// endpoints and "enumeration_too_large" past limits.max_flip_nodes.
std::optional<std::vector<EdgeMask>> flip_path(const Graph& g, const Signature& from, const Signature& to,
                                               bool acyclic_only, const EnumerationLimits& limits = {});

struct ClassicalReport {
  bool acyclic = false;
  bool classical = false;
  VStability stability;             // recovered from the signature's charge
  std::optional<Polarization> phi;  // set when classical
  Rational slack;                   // optimal chamber slack (meaningless if infeasible)
  std::string finding;              // non-empty when no chamber was found

  // An acyclic signature whose stability is not classical.
  bool violation() const { return acyclic && !classical; }
};

// Recovers n from charge_from_signature(s, q) and searches for phi with
// sum phi = g and n_W - 1 < phi_W - |E(W, W^c)|/2 < n_W by maximizing a
// uniform slack.
ClassicalReport certify_classical(const Graph& g, const Signature& s, int q, const EnumerationLimits& limits = {});

}  // namespace chipstab
