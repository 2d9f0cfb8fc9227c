#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "chipstab/error.hpp"

namespace chipstab::testing {

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

bool connected(int n, const EdgeList& edges) {
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
    return v;
  };
  int comps = n;
  for (auto [a, b] : edges) {
    int x = find(a), y = find(b);
    if (x != y) {
      parent[static_cast<std::size_t>(x)] = y;
      --comps;
    }
  }
  return comps == 1;
}

EdgeList relabeled(const EdgeList& edges, const std::vector<int>& perm) {
  EdgeList out;
  for (auto [a, b] : edges) {
    int x = perm[static_cast<std::size_t>(a)], y = perm[static_cast<std::size_t>(b)];
    out.emplace_back(std::min(x, y), std::max(x, y));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Minimum edge list over labelings that list vertices by decreasing degree;
// only permutations inside equal-degree blocks are tried.
EdgeList canonical(int n, const EdgeList& edges) {
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (auto [a, b] : edges) {
    ++deg[static_cast<std::size_t>(a)];
    ++deg[static_cast<std::size_t>(b)];
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return deg[static_cast<std::size_t>(a)] > deg[static_cast<std::size_t>(b)]; });
  std::vector<std::pair<int, int>> blocks;  // [begin, end) in `order`
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && deg[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] ==
                        deg[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])])
      ++j;
    blocks.emplace_back(i, j);
    i = j;
  }
  EdgeList best;
  bool have = false;
  std::vector<int> current = order;
  // Odometer over the permutations of every block.
  std::function<void(std::size_t)> walk = [&](std::size_t k) {
    if (k == blocks.size()) {
      std::vector<int> perm(static_cast<std::size_t>(n));
      for (int pos = 0; pos < n; ++pos) perm[static_cast<std::size_t>(current[static_cast<std::size_t>(pos)])] = pos;
      EdgeList cand = relabeled(edges, perm);
      if (!have || cand < best) {
        best = std::move(cand);
        have = true;
      }
      return;
    }
    auto [b, e] = blocks[k];
    std::sort(current.begin() + b, current.begin() + e);
    do {
      walk(k + 1);
    } while (std::next_permutation(current.begin() + b, current.begin() + e));
  };
  walk(0);
  return best;
}

}  // namespace

std::vector<Graph> graph_catalog(int max_edges) {
  using Key = std::pair<int, EdgeList>;
  std::set<Key> seen{{1, {}}};
  std::vector<Key> layer{{1, {}}};
  std::vector<Key> all{{1, {}}};
  for (int m = 1; m <= max_edges; ++m) {
    std::vector<Key> next;
    for (const auto& [n, edges] : layer) {
      std::vector<Key> grown;
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          EdgeList e = edges;
          e.emplace_back(a, b);
          grown.push_back({n, e});
        }
        EdgeList e = edges;
        e.emplace_back(a, n);
        grown.push_back({n + 1, e});
      }
      for (auto& [gn, ge] : grown) {
        if (!connected(gn, ge)) continue;
        Key key{gn, canonical(gn, ge)};
        if (seen.insert(key).second) next.push_back(key);
      }
    }
    std::sort(next.begin(), next.end());
    for (const auto& k : next) all.push_back(k);
    layer = std::move(next);
  }
  std::vector<Graph> out;
  for (const auto& [n, edges] : all) {
    std::vector<std::string> ids;
    for (int v = 0; v < n; ++v) ids.push_back("v" + std::to_string(v));
    std::vector<Edge> list;
    for (auto [a, b] : edges) list.push_back({a, b});
    out.emplace_back(std::move(ids), std::move(list));
  }
  return out;
}

namespace {

long long det_ll(std::vector<std::vector<long long>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long long total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    std::vector<std::vector<long long>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<long long> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    long long term = m[0][j] * det_ll(std::move(minor));
    total += (j % 2 == 0) ? term : -term;
  }
  return total;
}

std::vector<std::vector<long long>> reduced_laplacian_ll(const Graph& g) {
  const std::size_t n = static_cast<std::size_t>(g.num_vertices());
  std::vector<std::vector<long long>> full(n, std::vector<long long>(n, 0));
  for (const Edge& e : g.edges()) {
    auto a = static_cast<std::size_t>(e.tail), b = static_cast<std::size_t>(e.head);
    ++full[a][a];
    ++full[b][b];
    --full[a][b];
    --full[b][a];
  }
  std::vector<std::vector<long long>> out;
  for (std::size_t i = 1; i < n; ++i) out.emplace_back(full[i].begin() + 1, full[i].end());
  return out;
}

}  // namespace

long long kirchhoff_count(const Graph& g) { return det_ll(reduced_laplacian_ll(g)); }

bool adjugate_equivalent(const Graph& g, const Divisor& d1, const Divisor& d2) {
  if ((d1 - d2).degree() != 0) return false;
  auto l = reduced_laplacian_ll(g);
  const std::size_t n = l.size();
  long long det = det_ll(l);
  std::vector<long long> delta(n);
  for (std::size_t i = 0; i < n; ++i) delta[i] = BigInt(d1[i + 1] - d2[i + 1]).get_si();
  // (adj L) delta, entry i = sum_j C_ji delta_j with C the cofactor matrix.
  for (std::size_t i = 0; i < n; ++i) {
    long long acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::vector<long long>> minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<long long> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(l[r][c]);
        minor.push_back(std::move(row));
      }
      long long cof = det_ll(std::move(minor)) * (((i + j) % 2 == 0) ? 1 : -1);
      acc += cof * delta[j];
    }
    if (acc % det != 0) return false;
  }
  return true;
}

std::vector<int> reversal_class_ids(const Graph& g, int* num_classes) {
  const int m = g.num_edges();
  const int n = g.num_vertices();
  const std::uint32_t total = std::uint32_t{1} << m;
  auto tail_of = [&](std::uint32_t o, int e) { return ((o >> e) & 1u) ? g.edge(e).head : g.edge(e).tail; };
  auto head_of = [&](std::uint32_t o, int e) { return ((o >> e) & 1u) ? g.edge(e).tail : g.edge(e).head; };
  std::vector<int> id(total, -1);
  int classes = 0;
  for (std::uint32_t start = 0; start < total; ++start) {
    if (id[start] != -1) continue;
    std::vector<std::uint32_t> queue{start};
    id[start] = classes;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::uint32_t o = queue[qi];
      std::vector<std::uint32_t> moves;
      for (std::uint32_t s = 1; s < total; ++s) {
        std::vector<int> balance(static_cast<std::size_t>(n), 0);
        for (int e = 0; e < m; ++e)
          if ((s >> e) & 1u) {
            ++balance[static_cast<std::size_t>(head_of(o, e))];
            --balance[static_cast<std::size_t>(tail_of(o, e))];
          }
        if (std::all_of(balance.begin(), balance.end(), [](int b) { return b == 0; })) moves.push_back(s);
      }
      for (std::uint32_t w = 1; w + 1 < (std::uint32_t{1} << n); ++w) {
        std::uint32_t cut = 0;
        bool directed = true;
        for (int e = 0; e < m && directed; ++e) {
          bool t_in = (w >> tail_of(o, e)) & 1u, h_in = (w >> head_of(o, e)) & 1u;
          if (t_in == h_in) continue;
          if (!t_in) directed = false;  // must all leave W
          cut |= std::uint32_t{1} << e;
        }
        if (directed && cut) moves.push_back(cut);
      }
      for (std::uint32_t s : moves) {
        std::uint32_t next = o ^ s;
        if (id[next] == -1) {
          id[next] = classes;
          queue.push_back(next);
        }
      }
    }
    ++classes;
  }
  if (num_classes) *num_classes = classes;
  return id;
}

bool brute_force_cyclic(const Signature& s, int num_edges, int bound) {
  std::vector<std::vector<int>> vectors;
  for (const auto& [support, value] : s.values()) {
    std::vector<int> v(static_cast<std::size_t>(num_edges), 0);
    for (auto [e, sign] : value.entries()) v[static_cast<std::size_t>(e)] = sign;
    vectors.push_back(std::move(v));
  }
  std::vector<int> a(vectors.size(), 0);
  while (true) {
    std::size_t k = 0;
    while (k < a.size() && a[k] == bound) a[k++] = 0;
    if (k == a.size()) return false;
    ++a[k];
    bool zero = true;
    for (int e = 0; e < num_edges && zero; ++e) {
      int sum = 0;
      for (std::size_t c = 0; c < vectors.size(); ++c) sum += a[c] * vectors[c][static_cast<std::size_t>(e)];
      zero = sum == 0;
    }
    if (zero) return true;
  }
}

std::vector<Rational> seeded_weights(const Graph& g, std::uint64_t seed, SignatureFlavor flavor) {
  std::mt19937_64 rng(seed);
  while (true) {
    std::vector<Rational> w;
    for (int e = 0; e < g.num_edges(); ++e) w.emplace_back(static_cast<long>(rng() % 2001) - 1000);
    try {
      signature_from_weights(g, flavor, w);
      return w;
    } catch (const Error& e) {
      if (e.code() != "non_generic_weights") throw;
    }
  }
}

}  // namespace chipstab::testing
