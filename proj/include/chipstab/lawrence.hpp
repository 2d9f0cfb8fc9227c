#pragma once

// Lawrence polytopes of the graphic and cographic matroids and the
// correspondence between their triangulations and atlases.

#include <optional>
#include <string>
#include <vector>

#include "chipstab/exact.hpp"
#include "chipstab/graph.hpp"
#include "chipstab/orientations.hpp"
#include "chipstab/signatures.hpp"

namespace chipstab {

enum class MatroidKind { graphic, cographic };

// r x n integer matrix, one column per edge in edge order. The columns
// listed in basis_columns hold the identity, so the matrix is [I_r | L] up to
// that column permutation.
struct MatroidMatrix {
  MatroidKind kind = MatroidKind::graphic;
  IntMatrix entries;
  std::vector<int> basis_columns;
  int num_columns = 0;

  int rank() const { return static_cast<int>(entries.size()); }

  friend bool operator==(const MatroidMatrix&, const MatroidMatrix&) = default;
};

// B^{-1} N for the reduced incidence matrix N (vertex 0 removed, column e =
// head - tail) and B its columns on the breadth-first spanning tree.
MatroidMatrix graphic_matrix(const Graph& g);
// [-L^T | I] in the same column order. Throws "non_standard_form" unless the
// basis columns of m hold the identity.
MatroidMatrix dual_matrix(const MatroidMatrix& m);
MatroidMatrix cographic_matrix(const Graph& g);

// Every r x r minor in {-1, 0, 1}; exhaustive, for small matrices only.
bool is_totally_unimodular(const IntMatrix& m);

// Columns of (M 0; I I): point e is P_e, point n + e is P_{-e}.
struct LawrencePolytope {
  MatroidMatrix matroid;
  std::vector<std::vector<BigInt>> points;

  int num_edges() const { return matroid.num_columns; }
  int dimension() const { return matroid.rank() + matroid.num_columns; }
  int num_points() const { return static_cast<int>(points.size()); }
};

LawrencePolytope lawrence_polytope(const MatroidMatrix& m);

using Simplex = std::vector<int>;  // sorted point indices

struct SimplexSet {
  std::vector<Simplex> simplices;  // sorted

  friend bool operator==(const SimplexSet&, const SimplexSet&) = default;
};

// Determinant of the chosen points as columns (already homogeneous).
BigInt simplex_determinant(const LawrencePolytope& p, const Simplex& s);

// Bioriented e gives P_e and P_{-e}; forward gives P_e; backward P_{-e}.
// External bases go with the graphic polytope, internal with the cographic.
// Throws "flavor_mismatch" or "degenerate_simplex".
Simplex simplex_of_base(const LawrencePolytope& p, const OrientedBase& b);
// Inverse dictionary. Throws "not_a_base_simplex".
OrientedBase base_of_simplex(const Graph& g, const LawrencePolytope& p, const Simplex& s);

SimplexSet triangulation_of_atlas(const LawrencePolytope& p, const Atlas& a);
// Throws "not_an_atlas" unless the simplices decode to one base per tree.
Atlas atlas_of_triangulation(const Graph& g, const LawrencePolytope& p, const SimplexSet& s,
                             const EnumerationLimits& limits = {});

// Simplices containing tau, with tau removed.
std::vector<Simplex> link(const SimplexSet& s, const Simplex& tau);

enum class Verdict { triangulation, dissection_only, overlap, not_covering };
std::string to_string(Verdict v);

struct TriangulationReport {
  Verdict verdict = Verdict::overlap;
  BigInt volume_sum;       // sum of |det|
  BigInt polytope_volume;  // |ST(G)|
  std::optional<BigInt> brute_force_volume;
  std::optional<std::pair<std::size_t, std::size_t>> overlapping_pair;
  std::optional<std::pair<std::size_t, std::size_t>> improper_pair;  // meet outside a common face
  // Atlas read off the simplices is induced by a triangulating signature.
  bool signature_triangulating = false;
};

// Exact LP checks over all pairs plus the volume count. Throws
// "budget_exceeded" when |E| exceeds limits.max_geometry_edges.
TriangulationReport verify_triangulation(const Graph& g, const LawrencePolytope& p, const SimplexSet& s,
                                         const EnumerationLimits& limits = {});

// Lower faces of the lifted configuration, searched over base simplices.
// Throws "non_generic_heights" naming the first degenerate candidate.
SimplexSet regular_triangulation(const Graph& g, const LawrencePolytope& p, const std::vector<Rational>& heights,
                                 const EnumerationLimits& limits = {});
// Same over all raw subsets of the right size; slow, for cross-checks.
SimplexSet regular_triangulation_raw(const LawrencePolytope& p, const std::vector<Rational>& heights);
// Normalized volume from a raw regular triangulation under fixed generic
// heights. Throws "budget_exceeded" past 12 points.
BigInt brute_force_volume(const LawrencePolytope& p);

// Lawrence heights for edge weights: P_e gets -w_e, P_{-e} gets 0. The
// resulting regular triangulation is the one of signature_from_weights(w),
// on either polytope.
std::vector<Rational> heights_from_weights(const std::vector<Rational>& w);

}  // namespace chipstab
