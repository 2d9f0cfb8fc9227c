#include <doctest.h>

#include <set>

#include "chipstab/error.hpp"
#include "chipstab/graph_io.hpp"
#include "chipstab/stability.hpp"
#include "oracles.hpp"

using namespace chipstab;

namespace {

constexpr int kT = 0, kB = 2;

std::string error_code(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

Polarization rationals(std::initializer_list<std::pair<long, long>> entries) {
  std::vector<Rational> v;
  for (auto [p, q] : entries) v.push_back(make_rational(p, q));
  return Polarization(v);
}

VStability induced_genus_stability(const Graph& g) {
  VStability n;
  n.degree = genus(g);
  for (VertexMask w : biconnected_subsets(g)) n.values[w] = induced_genus(g, w);
  return n;
}

std::vector<Signature> acyclic_kite_signatures(const Graph& kite, int samples) {
  std::set<Signature> seen;
  for (int seed = 0; seed < samples; ++seed)
    seen.insert(signature_from_weights(kite, SignatureFlavor::cocircuit,
                                       testing::seeded_weights(kite, static_cast<std::uint64_t>(seed),
                                                               SignatureFlavor::cocircuit)));
  return {seen.begin(), seen.end()};
}

}  // namespace

TEST_CASE("canonical polarization") {
  Graph kite = io::kite_graph();
  Polarization p = phi_pcan(kite);
  CHECK(p == rationals({{1, 5}, {4, 5}, {1, 5}, {4, 5}}));
  CHECK(p.degree() == 2);
  CHECK(is_generic(kite, p));
  Graph triangle({"a", "b", "c"}, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(phi_pcan(triangle) == rationals({{1, 3}, {1, 3}, {1, 3}}));
  CHECK(error_code([] { phi_pcan(Graph({"a"}, {})); }) == "degenerate_polarization");
  CHECK(error_code([] { Polarization({make_rational(1, 2), Rational(0)}); }) == "non_integral_degree");
}

TEST_CASE("genericity") {
  Graph triangle({"a", "b", "c"}, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(is_generic(triangle, rationals({{1, 3}, {1, 3}, {1, 3}})));
  Graph kite = io::kite_graph();
  CHECK_FALSE(is_generic(kite, rationals({{1, 2}, {1, 2}, {1, 2}, {1, 2}})));
  // phi_{t} = 1 equals half the cut at t.
  Polarization wall = rationals({{1, 1}, {1, 3}, {1, 3}, {1, 3}});
  CHECK_FALSE(is_generic(kite, wall));
  CHECK(error_code([&] { vstability_from_polarization(kite, wall); }) == "non_generic_polarization");
}

TEST_CASE("canonical polarization induces the induced genus") {
  Graph kite = io::kite_graph();
  VStability n = vstability_from_polarization(kite, phi_pcan(kite));
  CHECK(n.values.at(0b1011) == 1);  // {t, r, l}
  CHECK(n.values.at(0b0001) == 0);
  CHECK(n == induced_genus_stability(kite));
  for (const auto& g : testing::graph_catalog(6)) {
    if (g.num_edges() == 0) continue;
    VStability m = vstability_from_polarization(g, phi_pcan(g));
    CHECK(m == induced_genus_stability(g));
    CHECK_FALSE(vstability_violation(g, m));
  }
}

TEST_CASE("one more chip at a vertex raises exactly the subsets holding it") {
  Graph kite = io::kite_graph();
  Polarization p = phi_pcan(kite);
  std::vector<Rational> shifted = p.values();
  shifted[kT] += 1;
  VStability a = vstability_from_polarization(kite, p);
  VStability b = vstability_from_polarization(kite, Polarization(shifted));
  CHECK(b.degree == a.degree + 1);
  for (const auto& [w, value] : a.values) CHECK(b.values.at(w) == value + (has_bit(w, kT) ? 1 : 0));
  CHECK_FALSE(vstability_violation(kite, b));
}

TEST_CASE("axiom violations are reported") {
  Graph kite = io::kite_graph();
  VStability n = induced_genus_stability(kite);
  n.values.at(0b0001) += 1;
  CHECK(vstability_violation(kite, n));
  VStability missing = induced_genus_stability(kite);
  missing.values.erase(0b0001);
  CHECK(vstability_violation(kite, missing));
}

TEST_CASE("charges and stabilities round trip") {
  Graph kite = io::kite_graph();
  TreeCharge zero = charge_from_vstability(kite, induced_genus_stability(kite));
  for (const auto& [tree, d] : zero.values) CHECK(d == Divisor::zero(kite));
  for (const auto& s : acyclic_kite_signatures(kite, 40)) {
    TreeCharge c = charge_from_signature(kite, s, kB);
    VStability n = vstability_from_charge(kite, c);
    CHECK_FALSE(vstability_violation(kite, n));
    CHECK(charge_from_vstability(kite, n) == c);
  }
  VStability wrong = induced_genus_stability(kite);
  wrong.degree += 1;
  CHECK(error_code([&] { charge_from_vstability(kite, wrong); }) == "not_vstability");
}

TEST_CASE("moving one unit across a cut moves one chip on the trees it separates") {
  Graph kite = io::kite_graph();
  VStability n = induced_genus_stability(kite);
  const VertexMask w1 = 0b0001;
  n.values.at(w1) -= 1;
  n.values.at(kite.all_vertices() & ~w1) += 1;
  REQUIRE_FALSE(vstability_violation(kite, n));
  TreeCharge c = charge_from_vstability(kite, n);
  for (const auto& [tree, d] : c.values) {
    CHECK(d.degree() == 0);
    Rational inside = 0;
    for (int v = 0; v < 4; ++v)
      if (has_bit(w1, v)) inside += Rational(d[static_cast<std::size_t>(v)]);
    // Trees cutting (W1, W1^c) once carry the shift on W1.
    if (popcount(signed_cut(kite, w1).support() & tree.edges) == 1) CHECK(inside == -1);
  }
}

TEST_CASE("charges that no stability induces") {
  Graph kite = io::kite_graph();
  TreeCharge c = charge_from_vstability(kite, induced_genus_stability(kite));
  c.values.begin()->second = Divisor{1, -1, 0, 0};
  CHECK(error_code([&] { vstability_from_charge(kite, c); }) == "not_stability_induced");
}

TEST_CASE("cocycle flips") {
  Graph kite = io::kite_graph();
  Signature s = reference_signature(kite, kB);
  const EdgeMask star_t = signed_cut(kite, VertexMask{1} << kT).support();
  Signature f = cocycle_flip(kite, s, star_t);
  CHECK(f.at(star_t) == s.at(star_t).negated());
  CHECK(cocycle_flip(kite, f, star_t) == s);
  CHECK(is_acyclic(f));
  CHECK(error_code([&] { cocycle_flip(kite, s, 0b00101); }) == "not_a_bond");
  auto path = flip_path(kite, s, f, true);
  REQUIRE(path);
  CHECK(*path == std::vector<EdgeMask>{star_t});
  auto still = flip_path(kite, s, s, true);
  REQUIRE(still);
  CHECK(still->empty());
}

TEST_CASE("flips out of the acyclic family on theta") {
  Graph theta({"a", "b"}, {{0, 1}, {0, 1}, {0, 1}});
  // One bond only: both signatures are acyclic.
  Signature s = reference_signature(theta, 0);
  CHECK(is_acyclic(cocycle_flip(theta, s, 0b111)));
  int preserved = 0, broken = 0;
  Graph k4({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}, {1, 3}});
  Signature r = reference_signature(k4, 0);
  for (const auto& b : bonds(k4)) (is_acyclic(cocycle_flip(k4, r, b.support())) ? preserved : broken)++;
  CHECK(preserved > 0);
  CHECK(broken > 0);
}

TEST_CASE("flip paths connect acyclic kite signatures") {
  Graph kite = io::kite_graph();
  auto sigs = acyclic_kite_signatures(kite, 60);
  CHECK(sigs.size() >= 10);
  for (const auto& a : sigs)
    for (const auto& b : sigs) {
      auto p = flip_path(kite, a, b, true);
      REQUIRE(p);
      Signature walk = a;
      for (EdgeMask bond : *p) {
        walk = cocycle_flip(kite, walk, bond);
        CHECK(is_acyclic(walk));
      }
      CHECK(walk == b);
    }
}

TEST_CASE("flip_path rejects non-triangulating endpoints") {
  Graph k4({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}, {1, 3}});
  for (std::uint64_t mask = 0; mask < 128; ++mask) {
    auto values = bonds(k4);
    for (std::size_t i = 0; i < values.size(); ++i)
      if (has_bit(mask, static_cast<int>(i))) values[i] = values[i].negated();
    Signature s(k4, SignatureFlavor::cocircuit, values);
    if (is_triangulating_signature(k4, s)) continue;
    CHECK(error_code([&] { flip_path(k4, s, reference_signature(k4, 0), false); }) == "not_triangulating");
    break;
  }
}

TEST_CASE("a flip toward W1 lowers n at W1 and raises its complement") {
  Graph kite = io::kite_graph();
  const auto subsets = biconnected_subsets(kite);
  for (const auto& s : acyclic_kite_signatures(kite, 40)) {
    VStability before = vstability_from_charge(kite, charge_from_signature(kite, s, kB));
    for (const auto& bond : bonds(kite)) {
      Signature f = cocycle_flip(kite, s, bond.support());
      if (!is_acyclic(f)) continue;
      // The side W1 the original arrow points into.
      VertexMask w1 = 0;
      for (VertexMask w : subsets)
        if (signed_cut(kite, w) == s.at(bond.support())) w1 = w;
      REQUIRE(w1 != 0);
      VStability after = vstability_from_charge(kite, charge_from_signature(kite, f, kB));
      for (const auto& [w, value] : before.values) {
        BigInt expected = value;
        if (w == w1) expected -= 1;
        if (w == (kite.all_vertices() & ~w1)) expected += 1;
        CHECK(after.values.at(w) == expected);
      }
    }
  }
}

TEST_CASE("classical certificates") {
  Graph kite = io::kite_graph();
  ClassicalReport ref = certify_classical(kite, reference_signature(kite, kB), kB);
  REQUIRE(ref.classical);
  CHECK(ref.stability == induced_genus_stability(kite));
  CHECK(vstability_from_polarization(kite, *ref.phi) == ref.stability);
  CHECK(ref.slack > 0);
  ClassicalReport flipped =
      certify_classical(kite, reference_signature(kite, kB).flipped(signed_cut(kite, 1).support()), kB);
  REQUIRE(flipped.classical);
  CHECK(flipped.slack == make_rational(1, 4));
  CHECK(flipped.phi->degree() == 2);
  CHECK(is_generic(kite, *flipped.phi));
  for (const auto& s : acyclic_kite_signatures(kite, 60)) {
    ClassicalReport r = certify_classical(kite, s, kB);
    CHECK(r.classical);
    CHECK_FALSE(r.violation());
    CHECK(vstability_from_polarization(kite, *r.phi) == r.stability);
  }
}
