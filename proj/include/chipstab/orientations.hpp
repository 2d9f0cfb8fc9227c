#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "chipstab/chipfiring.hpp"
#include "chipstab/graph.hpp"

namespace chipstab {

// Per-edge state relative to the reference orientation.
enum class EdgeState : char {
  forward = '>',
  backward = '<',
  bioriented = '=',
  unoriented = '.',
};

class Fourientation {
 public:
  Fourientation() = default;
  Fourientation(std::size_t num_edges, EdgeState fill) : states_(num_edges, fill) {}
  explicit Fourientation(std::vector<EdgeState> states) : states_(std::move(states)) {}

  // Parses the ">", "<", "=", "." string form. Throws "parse_error".
  static Fourientation parse(std::string_view text);
  // Orientation with bit e of `backward_edges` reversed, all others forward.
  static Fourientation orientation(int num_edges, EdgeMask backward_edges);

  std::size_t size() const { return states_.size(); }
  EdgeState operator[](std::size_t e) const { return states_[e]; }
  EdgeState& operator[](std::size_t e) { return states_[e]; }
  const std::vector<EdgeState>& states() const { return states_; }

  // No bioriented or unoriented edges.
  bool is_orientation() const;
  std::string str() const;

  friend auto operator<=>(const Fourientation&, const Fourientation&) = default;

 private:
  std::vector<EdgeState> states_;
};

inline bool is_one_way(EdgeState s) { return s == EdgeState::forward || s == EdgeState::backward; }

// One chip at the head of every one-way arc, one at both ends of every
// bioriented edge, then minus one everywhere.
Divisor divisor_of(const Graph& g, const Fourientation& f);

Fourientation negate(const Fourientation& f);
Fourientation complement(const Fourientation& f);

// Every edge of s is bioriented in f or one-way in the direction s gives it.
bool contains(const Fourientation& f, const SignedEdgeSet& s);

enum class BaseFlavor { external, internal };

// A spanning tree decorated by a fourientation. External: tree edges
// bioriented, others one-way. Internal: the reverse.
class OrientedBase {
 public:
  // Throws "malformed_base" when the fourientation does not have the shape
  // the flavor requires.
  OrientedBase(const Graph& g, SpanningTree tree, Fourientation arcs, BaseFlavor flavor);

  const SpanningTree& tree() const { return tree_; }
  const Fourientation& arcs() const { return arcs_; }
  BaseFlavor flavor() const { return flavor_; }

  friend bool operator==(const OrientedBase&, const OrientedBase&) = default;

 private:
  SpanningTree tree_;
  Fourientation arcs_;
  BaseFlavor flavor_;
};

// Tree edges from the internal base, the rest from the external one.
// Throws "tree_mismatch" or "flavor_mismatch".
Fourientation intersect(const OrientedBase& external, const OrientedBase& internal);

// Reverses the arcs of s. Throws "not_directed" unless every edge of s is
// one-way in f in the direction s prescribes.
Fourientation reverse(const Fourientation& f, const SignedEdgeSet& s);

// Cycle-cocycle reversal equivalence, decided through divisor equivalence.
bool same_reversal_class(const Graph& g, const Fourientation& o1, const Fourientation& o2);

}  // namespace chipstab
