#pragma once

#include <compare>
#include <initializer_list>
#include <vector>

#include "chipstab/exact.hpp"
#include "chipstab/graph.hpp"

namespace chipstab {

// Integer chip vector aligned with a graph's vertex order.
class Divisor {
 public:
  Divisor() = default;
  explicit Divisor(std::size_t num_vertices) : chips_(num_vertices) {}
  explicit Divisor(std::vector<BigInt> chips) : chips_(std::move(chips)) {}
  Divisor(std::initializer_list<long> chips);

  static Divisor zero(const Graph& g) { return Divisor(static_cast<std::size_t>(g.num_vertices())); }
  static Divisor point(const Graph& g, int v);

  std::size_t size() const { return chips_.size(); }
  const BigInt& operator[](std::size_t v) const { return chips_[v]; }
  BigInt& operator[](std::size_t v) { return chips_[v]; }
  const std::vector<BigInt>& chips() const { return chips_; }

  BigInt degree() const;

  Divisor& operator+=(const Divisor& other);
  Divisor& operator-=(const Divisor& other);
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend bool operator==(const Divisor& a, const Divisor& b) { return a.chips_ == b.chips_; }
  friend std::strong_ordering operator<=>(const Divisor& a, const Divisor& b);

 private:
  std::vector<BigInt> chips_;
};

enum class FireDirection { fire, borrow };

// Fire: v loses deg(v), each neighbour gains one chip per shared edge.
// Borrow is the inverse move.
Divisor fire(const Graph& g, const Divisor& d, int v, FireDirection direction = FireDirection::fire);
// Fire every vertex of `set` once (simultaneously).
Divisor fire_set(const Graph& g, const Divisor& d, VertexMask set);

struct PicardClass {
  Divisor representative;  // q-reduced
  int base = 0;

  friend bool operator==(const PicardClass&, const PicardClass&) = default;
};

bool is_q_reduced(const Graph& g, const Divisor& d, int q);

// Computes q-reduced normal forms for one (graph, q) pair. Precomputes the
// inverse reduced Laplacian so the nonnegativity step is a single exact
// solve regardless of how large the entries are; Dhar burning finishes.
class Reducer {
 public:
  Reducer(const Graph& g, int q);

  int base() const { return q_; }
  PicardClass reduce(const Divisor& d) const;

 private:
  const Graph* g_;
  int q_;
  std::vector<int> others_;        // V \ {q} in vertex order
  RationalMatrix reduced_inverse_;  // (reduced Laplacian)^{-1}
  std::vector<Rational> shift_;    // max_degree * L_q^{-1} 1
};

PicardClass reduce(const Graph& g, const Divisor& d, int q);

// Uses q = vertex 0. Throws "mismatched_graph" when sizes differ from g.
bool linearly_equivalent(const Graph& g, const Divisor& d1, const Divisor& d2);

// Laplacian with vertex `q` row and column removed.
IntMatrix reduced_laplacian(const Graph& g, int q = 0);

// Order of Pic^k(G) for any k: the product of the Smith invariants of the
// reduced Laplacian.
BigInt picard_class_count(const Graph& g, long degree = 0);

}  // namespace chipstab
