#include "chipstab/chipfiring.hpp"

#include <algorithm>

#include "chipstab/error.hpp"

namespace chipstab {

Divisor::Divisor(std::initializer_list<long> chips) {
  chips_.reserve(chips.size());
  for (long c : chips) chips_.emplace_back(c);
}

Divisor Divisor::point(const Graph& g, int v) {
  Divisor d = zero(g);
  d[static_cast<std::size_t>(v)] = 1;
  return d;
}

BigInt Divisor::degree() const {
  BigInt total = 0;
  for (const auto& c : chips_) total += c;
  return total;
}

Divisor& Divisor::operator+=(const Divisor& other) {
  if (other.size() != size()) throw Error("mismatched_graph", "divisors of different length");
  for (std::size_t i = 0; i < size(); ++i) chips_[i] += other.chips_[i];
  return *this;
}

Divisor& Divisor::operator-=(const Divisor& other) {
  if (other.size() != size()) throw Error("mismatched_graph", "divisors of different length");
  for (std::size_t i = 0; i < size(); ++i) chips_[i] -= other.chips_[i];
  return *this;
}

std::strong_ordering operator<=>(const Divisor& a, const Divisor& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(a.chips_[i], b.chips_[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.size() <=> b.size();
}

namespace {

void check_size(const Graph& g, const Divisor& d) {
  if (d.size() != static_cast<std::size_t>(g.num_vertices()))
    throw Error("mismatched_graph", "divisor length does not match the graph");
}

}  // namespace

Divisor fire(const Graph& g, const Divisor& d, int v, FireDirection direction) {
  check_size(g, d);
  Divisor out = d;
  const long s = direction == FireDirection::fire ? 1 : -1;
  for (int e : g.incident_edges(v)) {
    out[static_cast<std::size_t>(v)] -= s;
    out[static_cast<std::size_t>(g.other_end(e, v))] += s;
  }
  return out;
}

Divisor fire_set(const Graph& g, const Divisor& d, VertexMask set) {
  check_size(g, d);
  Divisor out = d;
  for (const Edge& e : g.edges()) {
    bool t = has_bit(set, e.tail), h = has_bit(set, e.head);
    if (t == h) continue;
    int from = t ? e.tail : e.head;
    int to = t ? e.head : e.tail;
    out[static_cast<std::size_t>(from)] -= 1;
    out[static_cast<std::size_t>(to)] += 1;
  }
  return out;
}

namespace {

// Dhar's burning from q; returns the unburnt set (empty iff d is q-reduced,
// given d >= 0 away from q).
VertexMask unburnt_set(const Graph& g, const Divisor& d, int q) {
  VertexMask burnt = VertexMask{1} << q;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (has_bit(burnt, v)) continue;
      long into_fire = 0;
      for (int e : g.incident_edges(v))
        if (has_bit(burnt, g.other_end(e, v))) ++into_fire;
      if (d[static_cast<std::size_t>(v)] < into_fire) {
        burnt |= VertexMask{1} << v;
        changed = true;
      }
    }
  }
  return g.all_vertices() & ~burnt;
}

}  // namespace

bool is_q_reduced(const Graph& g, const Divisor& d, int q) {
  check_size(g, d);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (v != q && d[static_cast<std::size_t>(v)] < 0) return false;
  return unburnt_set(g, d, q) == 0;
}

IntMatrix reduced_laplacian(const Graph& g, int q) {
  std::vector<int> others;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (v != q) others.push_back(v);
  IntMatrix m(others.size(), std::vector<BigInt>(others.size()));
  for (std::size_t i = 0; i < others.size(); ++i)
    for (std::size_t j = 0; j < others.size(); ++j)
      m[i][j] = i == j ? g.degree(others[i]) : -g.multiplicity(others[i], others[j]);
  return m;
}

Reducer::Reducer(const Graph& g, int q) : g_(&g), q_(q) {
  if (q < 0 || q >= g.num_vertices()) throw Error("unknown_vertex", "base vertex out of range");
  for (int v = 0; v < g.num_vertices(); ++v)
    if (v != q) others_.push_back(v);
  if (others_.empty()) return;
  auto inv = inverse(to_rational(reduced_laplacian(g, q)));
  if (!inv) throw Error("internal", "reduced Laplacian of a connected graph is singular");
  reduced_inverse_ = std::move(*inv);
  int max_degree = 0;
  for (int v = 0; v < g.num_vertices(); ++v) max_degree = std::max(max_degree, g.degree(v));
  shift_.assign(others_.size(), Rational(0));
  for (std::size_t i = 0; i < others_.size(); ++i)
    for (std::size_t j = 0; j < others_.size(); ++j) shift_[i] += reduced_inverse_[i][j];
  for (auto& s : shift_) s *= max_degree;
}

PicardClass Reducer::reduce(const Divisor& input) const {
  const Graph& g = *g_;
  check_size(g, input);
  Divisor d = input;
  if (!others_.empty()) {
    // Firing x = floor(L_q^{-1} d' - K L_q^{-1} 1) leaves K + L_q(frac) >= 0
    // on every v != q, since |(L_q f)_v| <= deg(v) <= K for f in [0,1)^n.
    std::vector<BigInt> firing(static_cast<std::size_t>(g.num_vertices()));
    for (std::size_t i = 0; i < others_.size(); ++i) {
      Rational y = 0;
      for (std::size_t j = 0; j < others_.size(); ++j)
        y += reduced_inverse_[i][j] * d[static_cast<std::size_t>(others_[j])];
      firing[static_cast<std::size_t>(others_[i])] = floor_of(y - shift_[i]);
    }
    Divisor moved = d;
    for (const Edge& e : g.edges()) {
      // Net chips carried from tail to head.
      BigInt flow = firing[static_cast<std::size_t>(e.tail)] - firing[static_cast<std::size_t>(e.head)];
      moved[static_cast<std::size_t>(e.tail)] -= flow;
      moved[static_cast<std::size_t>(e.head)] += flow;
    }
    d = std::move(moved);
    while (true) {
      VertexMask s = unburnt_set(g, d, q_);
      if (s == 0) break;
      d = fire_set(g, d, s);
    }
  }
  return {std::move(d), q_};
}

PicardClass reduce(const Graph& g, const Divisor& d, int q) { return Reducer(g, q).reduce(d); }

bool linearly_equivalent(const Graph& g, const Divisor& d1, const Divisor& d2) {
  check_size(g, d1);
  check_size(g, d2);
  if (d1.degree() != d2.degree()) return false;
  Reducer r(g, 0);
  return r.reduce(d1) == r.reduce(d2);
}

BigInt picard_class_count(const Graph& g, long /*degree*/) {
  BigInt product = 1;
  for (const auto& d : smith_normal_form(reduced_laplacian(g, 0))) product *= d;
  return product;
}

}  // namespace chipstab
