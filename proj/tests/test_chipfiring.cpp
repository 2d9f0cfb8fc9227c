#include <doctest.h>

#include <random>

#include "chipstab/chipfiring.hpp"
#include "chipstab/error.hpp"
#include "chipstab/graph_io.hpp"
#include "oracles.hpp"

using namespace chipstab;

TEST_CASE("firing and borrowing are inverse") {
  Graph kite = io::kite_graph();
  Divisor d{0, 0, 0, 2};
  Divisor fired = fire(kite, d, 3);
  CHECK(fired == Divisor{1, 1, 1, -1});
  CHECK(fire(kite, fired, 3, FireDirection::borrow) == d);
  CHECK(fired.degree() == 2);
  CHECK(fire_set(kite, d, kite.all_vertices()) == d);
  // Firing {t, r} moves one chip over each of tl, rl, rb.
  CHECK(fire_set(kite, Divisor::zero(kite), 0b0011) == Divisor{-1, -2, 1, 2});
}

TEST_CASE("reduced divisors on the kite") {
  Graph kite = io::kite_graph();
  PicardClass c = reduce(kite, Divisor{0, 0, 0, 2}, 2);
  CHECK(c.base == 2);
  CHECK(is_q_reduced(kite, c.representative, 2));
  CHECK(c.representative[0] >= 0);
  CHECK(c.representative.degree() == 2);
  CHECK_FALSE(is_q_reduced(kite, Divisor{0, 0, -1, 3}, 0));
  CHECK(is_q_reduced(kite, Divisor{2, 0, 0, 0}, 0));
  CHECK(reduce(kite, Divisor{-5, 3, 0, 2}, 0) == reduce(kite, fire(kite, Divisor{-5, 3, 0, 2}, 1), 0));
}

TEST_CASE("huge entries reduce without iterating firings") {
  Graph kite = io::kite_graph();
  Divisor d{0, 0, 0, 0};
  d[1] = BigInt("1000000000000000000000");
  d[3] = BigInt("-1000000000000000000000");
  PicardClass c = reduce(kite, d, 0);
  CHECK(is_q_reduced(kite, c.representative, 0));
  CHECK(c.representative.degree() == 0);
}

TEST_CASE("linear equivalence agrees with the adjugate oracle") {
  std::mt19937_64 rng(11);
  for (const auto& g : testing::graph_catalog(5)) {
    if (g.num_vertices() < 2) continue;
    for (int trial = 0; trial < 20; ++trial) {
      Divisor a(static_cast<std::size_t>(g.num_vertices())), b(a.size());
      for (std::size_t v = 0; v < a.size(); ++v) {
        a[v] = static_cast<long>(rng() % 7) - 3;
        b[v] = static_cast<long>(rng() % 7) - 3;
      }
      b[0] += a.degree() - b.degree();
      CHECK(linearly_equivalent(g, a, b) == testing::adjugate_equivalent(g, a, b));
      Divisor moved = fire_set(g, a, static_cast<VertexMask>(rng() % (g.all_vertices() + 1)));
      CHECK(linearly_equivalent(g, a, moved));
    }
  }
}

TEST_CASE("different degrees are never equivalent") {
  Graph kite = io::kite_graph();
  CHECK_FALSE(linearly_equivalent(kite, Divisor{1, 0, 0, 0}, Divisor{0, 0, 0, 0}));
  CHECK_THROWS_AS(linearly_equivalent(kite, Divisor{1, 0, 0}, Divisor{1, 0, 0, 0}), Error);
}

TEST_CASE("picard group order is the tree count") {
  CHECK(picard_class_count(io::kite_graph()) == 8);
  CHECK(picard_class_count(io::kite_graph(), 5) == 8);
  for (const auto& g : testing::graph_catalog(6))
    CHECK(picard_class_count(g) == BigInt(static_cast<long>(testing::kirchhoff_count(g))));
  CHECK(reduced_laplacian(io::kite_graph(), 2) == IntMatrix{{2, -1, -1}, {-1, 3, -1}, {-1, -1, 3}});
}
