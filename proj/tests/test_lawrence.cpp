#include <doctest.h>

#include <algorithm>
#include <random>

#include "chipstab/error.hpp"
#include "chipstab/graph_io.hpp"
#include "chipstab/lawrence.hpp"
#include "chipstab/stability.hpp"
#include "oracles.hpp"

using namespace chipstab;

namespace {

Graph triangle() { return Graph({"a", "b", "c"}, {{0, 1}, {1, 2}, {2, 0}}); }

std::string error_code(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

std::vector<BigInt> apply(const MatroidMatrix& m, const SignedEdgeSet& x) {
  std::vector<BigInt> out(static_cast<std::size_t>(m.rank()));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (auto [e, sign] : x.entries()) out[i] += sign * m.entries[i][static_cast<std::size_t>(e)];
  return out;
}

bool is_zero(const std::vector<BigInt>& v) {
  return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
}

Simplex points_of(const SignedEdgeSet& s, int n) {
  Simplex out;
  for (auto [e, sign] : s.entries()) out.push_back(sign > 0 ? e : n + e);
  std::sort(out.begin(), out.end());
  return out;
}

bool includes(const Simplex& big, const Simplex& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<Simplex> minus(const SimplexSet& a, const SimplexSet& b) {
  std::vector<Simplex> out;
  std::set_difference(a.simplices.begin(), a.simplices.end(), b.simplices.begin(), b.simplices.end(),
                      std::back_inserter(out));
  return out;
}

std::vector<Rational> random_heights(std::mt19937_64& rng, int count) {
  std::vector<Rational> h;
  for (int i = 0; i < count; ++i) h.emplace_back(static_cast<long>(rng() % 20001) - 10000);
  return h;
}

}  // namespace

TEST_CASE("graphic matrices") {
  Graph t = triangle();
  MatroidMatrix m = graphic_matrix(t);
  CHECK(m.kind == MatroidKind::graphic);
  CHECK(m.rank() == 2);
  CHECK(m.num_columns == 3);
  CHECK(is_zero(apply(m, simple_cycles(t).front())));
  CHECK(rank(to_rational(m.entries)) == 2);
  Graph path({"x", "y", "z"}, {{0, 1}, {1, 2}});
  CHECK(graphic_matrix(path).entries == IntMatrix{{1, 0}, {0, 1}});
  Graph kite = io::kite_graph();
  MatroidMatrix k = graphic_matrix(kite);
  CHECK(k.rank() == 3);
  CHECK(k.num_columns - static_cast<int>(rank(to_rational(k.entries))) == genus(kite));
  for (const auto& c : simple_cycles(kite)) CHECK(is_zero(apply(k, c)));
  for (std::size_t i = 0; i < k.basis_columns.size(); ++i)
    for (int r = 0; r < k.rank(); ++r)
      CHECK(k.entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(k.basis_columns[i])] ==
            (static_cast<std::size_t>(r) == i ? 1 : 0));
}

TEST_CASE("cographic matrices and duality") {
  Graph kite = io::kite_graph();
  MatroidMatrix m = graphic_matrix(kite);
  MatroidMatrix d = dual_matrix(m);
  CHECK(d.kind == MatroidKind::cographic);
  CHECK(d.rank() == 2);
  CHECK(d.num_columns == 5);
  CHECK(d == cographic_matrix(kite));
  for (int i = 0; i < d.rank(); ++i)
    for (int j = 0; j < m.rank(); ++j) {
      BigInt dot = 0;
      for (int e = 0; e < 5; ++e)
        dot += d.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)] *
               m.entries[static_cast<std::size_t>(j)][static_cast<std::size_t>(e)];
      CHECK(dot == 0);
    }
  for (const auto& b : bonds(kite)) CHECK(is_zero(apply(d, b)));
  MatroidMatrix dd = dual_matrix(d);
  RationalMatrix stacked = to_rational(m.entries);
  for (const auto& row : to_rational(dd.entries)) stacked.push_back(row);
  CHECK(rank(stacked) == 3);
  MatroidMatrix broken = m;
  broken.entries[0][static_cast<std::size_t>(broken.basis_columns[0])] = 2;
  CHECK(error_code([&] { dual_matrix(broken); }) == "non_standard_form");
}

TEST_CASE("total unimodularity") {
  for (const auto& g : testing::graph_catalog(5)) {
    if (g.num_edges() == 0) continue;
    CHECK(is_totally_unimodular(graphic_matrix(g).entries));
    if (genus(g) > 0) CHECK(is_totally_unimodular(cographic_matrix(g).entries));
  }
  CHECK_FALSE(is_totally_unimodular(IntMatrix{{1, 1}, {-1, 1}}));
}

TEST_CASE("polytope shapes") {
  LawrencePolytope tri = lawrence_polytope(graphic_matrix(triangle()));
  CHECK(tri.num_points() == 6);
  CHECK(tri.dimension() == 5);
  LawrencePolytope star = lawrence_polytope(cographic_matrix(io::kite_graph()));
  CHECK(star.num_points() == 10);
  CHECK(star.dimension() == 7);
  for (int e = 0; e < 5; ++e)
    for (int i = 2; i < 7; ++i)
      CHECK(star.points[static_cast<std::size_t>(e)][static_cast<std::size_t>(i)] ==
            star.points[static_cast<std::size_t>(5 + e)][static_cast<std::size_t>(i)]);
}

TEST_CASE("base simplices are unimodular and invert") {
  Graph kite = io::kite_graph();
  LawrencePolytope pg = lawrence_polytope(graphic_matrix(kite));
  LawrencePolytope pc = lawrence_polytope(cographic_matrix(kite));
  Atlas ext = atlas_from_signature(kite, signature_from_weights(kite, SignatureFlavor::circuit, {1, 2, 4, 8, 16}));
  Atlas in = atlas_from_signature(kite, reference_signature(kite, 2));
  for (const auto& [tree, base] : ext.bases) {
    Simplex s = simplex_of_base(pg, base);
    CHECK(s.size() == 8);
    CHECK(abs(simplex_determinant(pg, s)) == 1);
    CHECK(base_of_simplex(kite, pg, s) == base);
    // Flipping one external arc swaps one point.
    Fourientation f = base.arcs();
    int e = std::countr_zero(kite.all_edges() & ~tree.edges);
    f[static_cast<std::size_t>(e)] = f[static_cast<std::size_t>(e)] == EdgeState::forward ? EdgeState::backward
                                                                                         : EdgeState::forward;
    Simplex other = simplex_of_base(pg, OrientedBase(kite, tree, f, BaseFlavor::external));
    Simplex common;
    std::set_intersection(s.begin(), s.end(), other.begin(), other.end(), std::back_inserter(common));
    CHECK(common.size() == 7);
  }
  for (const auto& [tree, base] : in.bases) {
    Simplex s = simplex_of_base(pc, base);
    CHECK(s.size() == 7);
    CHECK(abs(simplex_determinant(pc, s)) == 1);
  }
  CHECK(error_code([&] { simplex_of_base(pg, in.bases.begin()->second); }) == "flavor_mismatch");
}

TEST_CASE("flipped reference atlas triangulates the cographic polytope") {
  Graph kite = io::kite_graph();
  LawrencePolytope pc = lawrence_polytope(cographic_matrix(kite));
  Atlas a = atlas_from_signature(kite, reference_signature(kite, 2).flipped(0b00011));
  SimplexSet s = triangulation_of_atlas(pc, a);
  CHECK(s.simplices.size() == 8);
  TriangulationReport r = verify_triangulation(kite, pc, s);
  CHECK(r.verdict == Verdict::triangulation);
  CHECK(r.volume_sum == 8);
  CHECK(r.polytope_volume == 8);
  REQUIRE(r.brute_force_volume);
  CHECK(*r.brute_force_volume == 8);
  CHECK(r.signature_triangulating);
  CHECK(atlas_of_triangulation(kite, pc, s) == a);
}

TEST_CASE("duplicated simplex overlaps") {
  Graph kite = io::kite_graph();
  LawrencePolytope pc = lawrence_polytope(cographic_matrix(kite));
  SimplexSet s = triangulation_of_atlas(pc, atlas_from_signature(kite, reference_signature(kite, 2)));
  SimplexSet doubled{{s.simplices.front(), s.simplices.front()}};
  CHECK(verify_triangulation(kite, pc, doubled).verdict == Verdict::overlap);
  SimplexSet partial{{s.simplices.front()}};
  CHECK(verify_triangulation(kite, pc, partial).verdict == Verdict::not_covering);
  CHECK(error_code([&] { atlas_of_triangulation(kite, pc, partial); }) == "not_an_atlas");
  EnumerationLimits tight;
  tight.max_geometry_edges = 4;
  CHECK(error_code([&] { verify_triangulation(kite, pc, s, tight); }) == "budget_exceeded");
}

TEST_CASE("tree graph polytope is one simplex") {
  Graph path({"x", "y", "z"}, {{0, 1}, {1, 2}});
  LawrencePolytope p = lawrence_polytope(graphic_matrix(path));
  SimplexSet s = regular_triangulation(path, p, std::vector<Rational>(4));
  REQUIRE(s.simplices.size() == 1);
  CHECK(s.simplices.front() == Simplex{0, 1, 2, 3});
  Atlas a = atlas_from_signature(path, signature_from_weights(path, SignatureFlavor::circuit, {1, 1}));
  CHECK(triangulation_of_atlas(p, a) == s);
  CHECK(verify_triangulation(path, p, s).verdict == Verdict::triangulation);
}

TEST_CASE("base search and raw search find the same regular triangulation") {
  std::mt19937_64 rng(3);
  Graph t = triangle();
  for (auto kind : {MatroidKind::graphic, MatroidKind::cographic}) {
    LawrencePolytope p = lawrence_polytope(kind == MatroidKind::graphic ? graphic_matrix(t) : cographic_matrix(t));
    for (int trial = 0; trial < 10; ++trial) {
      auto h = random_heights(rng, p.num_points());
      CHECK(regular_triangulation(t, p, h) == regular_triangulation_raw(p, h));
    }
  }
}

TEST_CASE("weights and heights give the same triangulation") {
  std::mt19937_64 rng(17);
  Graph kite = io::kite_graph();
  for (auto flavor : {SignatureFlavor::circuit, SignatureFlavor::cocircuit}) {
    LawrencePolytope p =
        lawrence_polytope(flavor == SignatureFlavor::circuit ? graphic_matrix(kite) : cographic_matrix(kite));
    for (int trial = 0; trial < 5; ++trial) {
      auto w = testing::seeded_weights(kite, rng(), flavor);
      Signature s = signature_from_weights(kite, flavor, w);
      SimplexSet regular = regular_triangulation(kite, p, heights_from_weights(w));
      CHECK(regular == triangulation_of_atlas(p, atlas_from_signature(kite, s)));
      // A small perturbation stays in the same cone.
      auto h = heights_from_weights(w);
      for (auto& x : h) x += make_rational(static_cast<long>(rng() % 201) - 100, 1000000);
      CHECK(regular_triangulation(kite, p, h) == regular);
    }
  }
}

TEST_CASE("non-generic heights are rejected") {
  Graph t = triangle();
  LawrencePolytope p = lawrence_polytope(graphic_matrix(t));
  CHECK(error_code([&] { regular_triangulation(t, p, std::vector<Rational>(6)); }) == "non_generic_heights");
}

TEST_CASE("distinct atlases give distinct simplex sets") {
  Graph kite = io::kite_graph();
  LawrencePolytope pc = lawrence_polytope(cographic_matrix(kite));
  auto bs = bonds(kite);
  std::vector<SimplexSet> seen;
  for (std::uint64_t mask = 0; mask < 64; ++mask) {
    auto values = bs;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (has_bit(mask, static_cast<int>(i))) values[i] = values[i].negated();
    Signature s(kite, SignatureFlavor::cocircuit, values);
    if (!is_triangulating_signature(kite, s)) continue;
    SimplexSet t = triangulation_of_atlas(pc, atlas_from_signature(kite, s));
    CHECK(std::find(seen.begin(), seen.end(), t) == seen.end());
    seen.push_back(t);
  }
  CHECK(seen.size() > 1);
}

TEST_CASE("verdicts over every kite cocircuit signature") {
  Graph kite = io::kite_graph();
  LawrencePolytope pc = lawrence_polytope(cographic_matrix(kite));
  auto bs = bonds(kite);
  int triangulations = 0, dissections = 0, overlaps = 0;
  for (std::uint64_t mask = 0; mask < 64; ++mask) {
    auto values = bs;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (has_bit(mask, static_cast<int>(i))) values[i] = values[i].negated();
    Signature s(kite, SignatureFlavor::cocircuit, values);
    TriangulationReport r = verify_triangulation(kite, pc, triangulation_of_atlas(pc, atlas_from_signature(kite, s)));
    bool tri = is_triangulating_signature(kite, s);
    CHECK((r.verdict == Verdict::triangulation) == tri);
    CHECK(r.signature_triangulating == tri);
    if (r.verdict == Verdict::triangulation) CHECK(r.volume_sum == 8);
    triangulations += r.verdict == Verdict::triangulation;
    dissections += r.verdict == Verdict::dissection_only;
    overlaps += r.verdict == Verdict::overlap;
  }
  MESSAGE("kite cocircuit atlases: triangulation " << triangulations << ", dissection only " << dissections
                                                   << ", overlap " << overlaps);
}

TEST_CASE("a single flip changes exactly the simplices holding the flipped cocircuit") {
  Graph kite = io::kite_graph();
  LawrencePolytope pc = lawrence_polytope(cographic_matrix(kite));
  Signature s = reference_signature(kite, 2);
  SimplexSet before = triangulation_of_atlas(pc, atlas_from_signature(kite, s));
  int checked = 0;
  for (const auto& b : bonds(kite)) {
    Signature f = cocycle_flip(kite, s, b.support());
    if (!is_acyclic(f)) continue;
    ++checked;
    SimplexSet after = triangulation_of_atlas(pc, atlas_from_signature(kite, f));
    Simplex old_points = points_of(s.at(b.support()), 5);
    Simplex new_points = points_of(f.at(b.support()), 5);
    std::vector<Simplex> holding_old, holding_new;
    for (const auto& x : before.simplices)
      if (includes(x, old_points)) holding_old.push_back(x);
    for (const auto& x : after.simplices)
      if (includes(x, new_points)) holding_new.push_back(x);
    CHECK(minus(before, after) == holding_old);
    CHECK(minus(after, before) == holding_new);
    CHECK(link(before, old_points).size() == holding_old.size());
  }
  CHECK(checked > 0);
}
