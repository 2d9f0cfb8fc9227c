#include "chipstab/lawrence.hpp"

#include <algorithm>
#include <set>

#include "chipstab/error.hpp"
#include "chipstab/lp.hpp"

namespace chipstab {

namespace {

// Advances a sorted k-subset of {0..n-1}; false after the last one.
bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++c[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

std::vector<int> first_combination(int k) {
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
  return c;
}

std::string describe(const Simplex& s) {
  std::string out = "[";
  for (int i : s) out += (out.size() > 1 ? "," : "") + std::to_string(i);
  return out + "]";
}

}  // namespace

MatroidMatrix graphic_matrix(const Graph& g) {
  const int n = g.num_edges();
  const int r = g.num_vertices() - 1;
  MatroidMatrix out;
  out.kind = MatroidKind::graphic;
  out.num_columns = n;
  SpanningTree t = bfs_spanning_tree(g);
  for (int e = 0; e < n; ++e)
    if (t.contains(e)) out.basis_columns.push_back(e);
  RationalMatrix incidence(static_cast<std::size_t>(r), std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int e = 0; e < n; ++e) {
    const Edge& ed = g.edge(e);
    if (ed.head > 0) incidence[static_cast<std::size_t>(ed.head - 1)][static_cast<std::size_t>(e)] += 1;
    if (ed.tail > 0) incidence[static_cast<std::size_t>(ed.tail - 1)][static_cast<std::size_t>(e)] -= 1;
  }
  RationalMatrix b(static_cast<std::size_t>(r), std::vector<Rational>(static_cast<std::size_t>(r)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          incidence[static_cast<std::size_t>(i)][static_cast<std::size_t>(out.basis_columns[static_cast<std::size_t>(j)])];
  auto binv = inverse(b);
  if (!binv) throw Error("internal_error", "tree columns of the incidence matrix are singular");
  out.entries.assign(static_cast<std::size_t>(r), std::vector<BigInt>(static_cast<std::size_t>(n)));
  for (int i = 0; i < r; ++i)
    for (int e = 0; e < n; ++e) {
      Rational x = 0;
      for (int k = 0; k < r; ++k)
        x += (*binv)[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
             incidence[static_cast<std::size_t>(k)][static_cast<std::size_t>(e)];
      if (!is_integer(x)) throw Error("internal_error", "graphic matrix entry is not integral");
      out.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)] = x.get_num();
    }
  return out;
}

MatroidMatrix dual_matrix(const MatroidMatrix& m) {
  const int r = m.rank();
  const int n = m.num_columns;
  if (static_cast<int>(m.basis_columns.size()) != r)
    throw Error("non_standard_form", "basis column list does not match the rank");
  std::vector<bool> in_basis(static_cast<std::size_t>(n), false);
  for (int i = 0; i < r; ++i) {
    int c = m.basis_columns[static_cast<std::size_t>(i)];
    if (c < 0 || c >= n || in_basis[static_cast<std::size_t>(c)])
      throw Error("non_standard_form", "bad basis column list");
    in_basis[static_cast<std::size_t>(c)] = true;
    for (int k = 0; k < r; ++k)
      if (m.entries[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] != (k == i ? 1 : 0))
        throw Error("non_standard_form", "basis columns do not hold the identity");
  }
  MatroidMatrix out;
  out.kind = m.kind == MatroidKind::graphic ? MatroidKind::cographic : MatroidKind::graphic;
  out.num_columns = n;
  for (int j = 0; j < n; ++j)
    if (!in_basis[static_cast<std::size_t>(j)]) out.basis_columns.push_back(j);
  const std::size_t rows = out.basis_columns.size();
  out.entries.assign(rows, std::vector<BigInt>(static_cast<std::size_t>(n)));
  for (std::size_t k = 0; k < rows; ++k) {
    int j = out.basis_columns[k];
    out.entries[k][static_cast<std::size_t>(j)] = 1;
    for (int i = 0; i < r; ++i)
      out.entries[k][static_cast<std::size_t>(m.basis_columns[static_cast<std::size_t>(i)])] =
          -m.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return out;
}

MatroidMatrix cographic_matrix(const Graph& g) { return dual_matrix(graphic_matrix(g)); }

bool is_totally_unimodular(const IntMatrix& m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  for (int k = 1; k <= std::min(rows, cols); ++k) {
    auto rs = first_combination(k);
    do {
      auto cs = first_combination(k);
      do {
        IntMatrix minor(static_cast<std::size_t>(k), std::vector<BigInt>(static_cast<std::size_t>(k)));
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j)
            minor[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                m[static_cast<std::size_t>(rs[static_cast<std::size_t>(i)])][static_cast<std::size_t>(cs[static_cast<std::size_t>(j)])];
        if (abs(determinant(std::move(minor))) > 1) return false;
      } while (next_combination(cs, cols));
    } while (next_combination(rs, rows));
  }
  return true;
}

LawrencePolytope lawrence_polytope(const MatroidMatrix& m) {
  LawrencePolytope p;
  p.matroid = m;
  const int r = m.rank();
  const int n = m.num_columns;
  for (int side = 0; side < 2; ++side)
    for (int e = 0; e < n; ++e) {
      std::vector<BigInt> point(static_cast<std::size_t>(r + n));
      if (side == 0)
        for (int i = 0; i < r; ++i) point[static_cast<std::size_t>(i)] = m.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)];
      point[static_cast<std::size_t>(r + e)] = 1;
      p.points.push_back(std::move(point));
    }
  return p;
}

BigInt simplex_determinant(const LawrencePolytope& p, const Simplex& s) {
  const std::size_t d = static_cast<std::size_t>(p.dimension());
  if (s.size() != d) return 0;
  IntMatrix m(d, std::vector<BigInt>(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) m[i][j] = p.points[static_cast<std::size_t>(s[j])][i];
  return determinant(std::move(m));
}

Simplex simplex_of_base(const LawrencePolytope& p, const OrientedBase& b) {
  bool graphic = p.matroid.kind == MatroidKind::graphic;
  if (graphic != (b.flavor() == BaseFlavor::external))
    throw Error("flavor_mismatch", "external bases live on the graphic polytope, internal on the cographic one");
  const int n = p.num_edges();
  if (b.arcs().size() != static_cast<std::size_t>(n)) throw Error("mismatched_graph", "base does not fit the polytope");
  Simplex s;
  for (int e = 0; e < n; ++e) {
    switch (b.arcs()[static_cast<std::size_t>(e)]) {
      case EdgeState::forward: s.push_back(e); break;
      case EdgeState::backward: s.push_back(n + e); break;
      case EdgeState::bioriented:
        s.push_back(e);
        s.push_back(n + e);
        break;
      case EdgeState::unoriented: throw Error("malformed_base", "oriented bases have no unoriented edges");
    }
  }
  std::sort(s.begin(), s.end());
  if (simplex_determinant(p, s) == 0) throw Error("degenerate_simplex", "points of " + describe(s) + " are affinely dependent");
  return s;
}

OrientedBase base_of_simplex(const Graph& g, const LawrencePolytope& p, const Simplex& s) {
  const int n = p.num_edges();
  if (n != g.num_edges()) throw Error("mismatched_graph", "polytope does not belong to this graph");
  Fourientation f(static_cast<std::size_t>(n), EdgeState::unoriented);
  std::vector<int> seen(static_cast<std::size_t>(2 * n), 0);
  for (int i : s) {
    if (i < 0 || i >= 2 * n || seen[static_cast<std::size_t>(i)]++)
      throw Error("not_a_base_simplex", "bad point list " + describe(s));
  }
  EdgeMask tree = 0;
  const bool graphic = p.matroid.kind == MatroidKind::graphic;
  for (int e = 0; e < n; ++e) {
    bool pos = seen[static_cast<std::size_t>(e)], neg = seen[static_cast<std::size_t>(n + e)];
    EdgeState st = pos && neg ? EdgeState::bioriented : pos ? EdgeState::forward : neg ? EdgeState::backward
                                                                                      : EdgeState::unoriented;
    if (st == EdgeState::unoriented) throw Error("not_a_base_simplex", describe(s) + " misses both points of an edge");
    f[static_cast<std::size_t>(e)] = st;
    if ((st == EdgeState::bioriented) == graphic) tree |= EdgeMask{1} << e;
  }
  if (!is_spanning_tree(g, tree)) throw Error("not_a_base_simplex", describe(s) + " does not decode to a spanning tree");
  return OrientedBase(g, SpanningTree{tree}, std::move(f), graphic ? BaseFlavor::external : BaseFlavor::internal);
}

SimplexSet triangulation_of_atlas(const LawrencePolytope& p, const Atlas& a) {
  SimplexSet out;
  for (const auto& [tree, base] : a.bases) out.simplices.push_back(simplex_of_base(p, base));
  std::sort(out.simplices.begin(), out.simplices.end());
  return out;
}

Atlas atlas_of_triangulation(const Graph& g, const LawrencePolytope& p, const SimplexSet& s,
                             const EnumerationLimits& limits) {
  Atlas a;
  a.flavor = p.matroid.kind == MatroidKind::graphic ? BaseFlavor::external : BaseFlavor::internal;
  for (const auto& simplex : s.simplices) {
    OrientedBase b = base_of_simplex(g, p, simplex);
    SpanningTree t = b.tree();
    if (!a.bases.emplace(t, std::move(b)).second) throw Error("not_an_atlas", "two simplices decode to the same tree");
  }
  if (a.bases.size() != spanning_trees(g, limits).size()) throw Error("not_an_atlas", "some spanning tree has no simplex");
  return a;
}

std::vector<Simplex> link(const SimplexSet& s, const Simplex& tau) {
  std::vector<Simplex> out;
  for (const auto& simplex : s.simplices) {
    if (!std::includes(simplex.begin(), simplex.end(), tau.begin(), tau.end())) continue;
    Simplex rest;
    std::set_difference(simplex.begin(), simplex.end(), tau.begin(), tau.end(), std::back_inserter(rest));
    out.push_back(std::move(rest));
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::triangulation: return "triangulation";
    case Verdict::dissection_only: return "dissection-only";
    case Verdict::overlap: return "overlap";
    case Verdict::not_covering: return "not-covering";
  }
  return "unknown";
}

namespace {

// Point x = sum lambda_i p_i = sum mu_j p_j with sum lambda = 1. Variables
// are lambda, mu, then optionally t.
lp::LpProblem meeting_point_lp(const LawrencePolytope& p, const Simplex& a, const Simplex& b, bool with_slack) {
  const std::size_t na = a.size(), nb = b.size();
  const std::size_t nv = na + nb + (with_slack ? 1 : 0);
  lp::LpProblem problem(nv);
  const std::size_t d = static_cast<std::size_t>(p.dimension());
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Rational> row(nv);
    for (std::size_t i = 0; i < na; ++i) row[i] = p.points[static_cast<std::size_t>(a[i])][k];
    for (std::size_t j = 0; j < nb; ++j) row[na + j] = -p.points[static_cast<std::size_t>(b[j])][k];
    problem.add_row(std::move(row), lp::Relation::equal, 0);
  }
  std::vector<Rational> total(nv);
  for (std::size_t i = 0; i < na; ++i) total[i] = 1;
  problem.add_row(std::move(total), lp::Relation::equal, 1);
  if (with_slack) {
    problem.bounds[nv - 1] = lp::Bound{std::nullopt, Rational(1)};
    problem.objective[nv - 1] = 1;
    for (std::size_t i = 0; i + 1 < nv; ++i) {
      std::vector<Rational> row(nv);
      row[i] = 1;
      row[nv - 1] = -1;
      problem.add_row(std::move(row), lp::Relation::greater_equal, 0);
    }
  }
  return problem;
}

bool interiors_meet(const LawrencePolytope& p, const Simplex& a, const Simplex& b) {
  auto r = lp::solve_lp(meeting_point_lp(p, a, b, true));
  return r.status == lp::LpStatus::optimal && r.value > 0;
}

// conv(a) and conv(b) meet only inside conv(a n b).
bool meet_in_common_face(const LawrencePolytope& p, const Simplex& a, const Simplex& b) {
  auto problem = meeting_point_lp(p, a, b, false);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!std::binary_search(b.begin(), b.end(), a[i])) problem.objective[i] = 1;
  auto r = lp::solve_lp(problem);
  return r.status != lp::LpStatus::optimal || r.value == 0;
}

}  // namespace

TriangulationReport verify_triangulation(const Graph& g, const LawrencePolytope& p, const SimplexSet& s,
                                         const EnumerationLimits& limits) {
  if (g.num_edges() > limits.max_geometry_edges)
    throw Error("budget_exceeded", "geometric verification is limited to " + std::to_string(limits.max_geometry_edges) +
                                       " edges; raise the budget to continue");
  if (p.num_edges() != g.num_edges()) throw Error("mismatched_graph", "polytope does not belong to this graph");
  TriangulationReport report;
  report.polytope_volume = static_cast<unsigned long>(spanning_trees(g, limits).size());
  if (p.num_points() <= 12) report.brute_force_volume = brute_force_volume(p);
  for (const auto& simplex : s.simplices) {
    BigInt det = simplex_determinant(p, simplex);
    if (det == 0) throw Error("degenerate_simplex", "points of " + describe(simplex) + " are affinely dependent");
    report.volume_sum += abs(det);
  }
  for (std::size_t i = 0; i < s.simplices.size() && !report.overlapping_pair; ++i)
    for (std::size_t j = i + 1; j < s.simplices.size(); ++j) {
      if (s.simplices[i] == s.simplices[j] || interiors_meet(p, s.simplices[i], s.simplices[j])) {
        report.overlapping_pair = std::make_pair(i, j);
        break;
      }
      if (!report.improper_pair && !meet_in_common_face(p, s.simplices[i], s.simplices[j]))
        report.improper_pair = std::make_pair(i, j);
    }
  try {
    Atlas a = atlas_of_triangulation(g, p, s, limits);
    if (auto sig = signature_of_atlas(g, a, limits))
      report.signature_triangulating = atlas_from_signature(g, *sig, limits) == a && atlas_is_triangulating(g, a, *sig);
  } catch (const Error&) {
    report.signature_triangulating = false;
  }
  if (report.overlapping_pair || report.volume_sum > report.polytope_volume) report.verdict = Verdict::overlap;
  else if (report.volume_sum < report.polytope_volume) report.verdict = Verdict::not_covering;
  else if (report.improper_pair) report.verdict = Verdict::dissection_only;
  else report.verdict = Verdict::triangulation;
  return report;
}

namespace {

enum class LiftTest { below, degenerate, not_lower };

// Hyperplane through the lifted points of s; every other lifted point must
// lie strictly above it.
LiftTest lower_face(const LawrencePolytope& p, const Simplex& s, const std::vector<Rational>& heights) {
  const std::size_t d = static_cast<std::size_t>(p.dimension());
  RationalMatrix a(d, std::vector<Rational>(d));
  std::vector<Rational> rhs(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) a[i][k] = p.points[static_cast<std::size_t>(s[i])][k];
    rhs[i] = heights[static_cast<std::size_t>(s[i])];
  }
  auto y = solve(std::move(a), std::move(rhs));
  if (!y) return LiftTest::not_lower;
  bool tight = false;
  for (int j = 0; j < p.num_points(); ++j) {
    if (std::binary_search(s.begin(), s.end(), j)) continue;
    Rational value = 0;
    for (std::size_t k = 0; k < d; ++k) value += (*y)[k] * p.points[static_cast<std::size_t>(j)][k];
    if (value > heights[static_cast<std::size_t>(j)]) return LiftTest::not_lower;
    if (value == heights[static_cast<std::size_t>(j)]) tight = true;
  }
  return tight ? LiftTest::degenerate : LiftTest::below;
}

void check_heights(const LawrencePolytope& p, const std::vector<Rational>& heights) {
  if (heights.size() != static_cast<std::size_t>(p.num_points()))
    throw Error("mismatched_graph", "need one height per Lawrence point (" + std::to_string(p.num_points()) + ")");
}

}  // namespace

SimplexSet regular_triangulation(const Graph& g, const LawrencePolytope& p, const std::vector<Rational>& heights,
                                 const EnumerationLimits& limits) {
  check_heights(p, heights);
  if (p.num_edges() != g.num_edges()) throw Error("mismatched_graph", "polytope does not belong to this graph");
  const bool graphic = p.matroid.kind == MatroidKind::graphic;
  const BaseFlavor flavor = graphic ? BaseFlavor::external : BaseFlavor::internal;
  const std::size_t n = static_cast<std::size_t>(g.num_edges());
  SimplexSet out;
  for (const SpanningTree& t : spanning_trees(g, limits)) {
    std::vector<int> one_way;
    for (int e = 0; e < g.num_edges(); ++e)
      if (t.contains(e) != graphic) one_way.push_back(e);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << one_way.size()); ++mask) {
      Fourientation f(n, EdgeState::bioriented);
      for (std::size_t i = 0; i < one_way.size(); ++i)
        f[static_cast<std::size_t>(one_way[i])] = ((mask >> i) & 1u) ? EdgeState::backward : EdgeState::forward;
      Simplex s = simplex_of_base(p, OrientedBase(g, t, std::move(f), flavor));
      LiftTest test = lower_face(p, s, heights);
      if (test == LiftTest::degenerate)
        throw Error("non_generic_heights", "lifted hyperplane of candidate " + describe(s) + " meets another lifted point");
      if (test == LiftTest::below) out.simplices.push_back(std::move(s));
    }
  }
  std::sort(out.simplices.begin(), out.simplices.end());
  return out;
}

SimplexSet regular_triangulation_raw(const LawrencePolytope& p, const std::vector<Rational>& heights) {
  check_heights(p, heights);
  SimplexSet out;
  const int d = p.dimension();
  if (d > p.num_points()) return out;
  auto c = first_combination(d);
  do {
    if (simplex_determinant(p, c) == 0) continue;
    LiftTest test = lower_face(p, c, heights);
    if (test == LiftTest::degenerate)
      throw Error("non_generic_heights", "lifted hyperplane of " + describe(c) + " meets another lifted point");
    if (test == LiftTest::below) out.simplices.push_back(c);
  } while (next_combination(c, p.num_points()));
  return out;
}

BigInt brute_force_volume(const LawrencePolytope& p) {
  if (p.num_points() > 12) throw Error("budget_exceeded", "brute-force volume is limited to 12 points");
  // Try a few fixed height families until one is generic.
  for (int family = 0; family < 8; ++family) {
    std::vector<Rational> heights;
    for (int i = 0; i < p.num_points(); ++i) {
      BigInt x = 1;
      for (int k = 0; k <= i; ++k) x *= (3 + family);
      heights.emplace_back(x + i * i);
    }
    try {
      BigInt total = 0;
      for (const auto& s : regular_triangulation_raw(p, heights).simplices) total += abs(simplex_determinant(p, s));
      return total;
    } catch (const Error& e) {
      if (e.code() != "non_generic_heights") throw;
    }
  }
  throw Error("internal_error", "no generic height family found for the brute-force volume");
}

std::vector<Rational> heights_from_weights(const std::vector<Rational>& w) {
  std::vector<Rational> out(2 * w.size());
  for (std::size_t e = 0; e < w.size(); ++e) out[e] = -w[e];
  return out;
}

}  // namespace chipstab
