#pragma once

// Exact-pivot simplex over the rationals. Two phases, Bland's rule, and a
// dual certificate checked against the primal objective on every optimum.

#include <optional>
#include <vector>

#include "chipstab/exact.hpp"

namespace chipstab::lp {

enum class Relation { less_equal, equal, greater_equal };

struct Bound {
  std::optional<Rational> lower = Rational(0);
  std::optional<Rational> upper;

  static Bound free() { return Bound{std::nullopt, std::nullopt}; }
  static Bound between(Rational lo, Rational hi) { return Bound{std::move(lo), std::move(hi)}; }
};

// maximize objective . x subject to rows[i] . x (relation) rhs[i] and the
// per-variable bounds (default x >= 0).
struct LpProblem {
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> rows;
  std::vector<Relation> relations;
  std::vector<Rational> rhs;
  std::vector<Bound> bounds;

  explicit LpProblem(std::size_t num_variables = 0)
      : objective(num_variables), bounds(num_variables) {}

  std::size_t num_variables() const { return objective.size(); }
  void add_row(std::vector<Rational> coeffs, Relation rel, Rational value);
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational value;
  std::vector<Rational> point;
  // Multipliers of the constraint rows. For a problem written as
  // max c.x, A x <= b, x >= 0 they satisfy y >= 0, A^T y >= c, b.y = value.
  std::vector<Rational> dual;
  bool dual_verified = false;
};

LpResult solve_lp(const LpProblem& problem);

}  // namespace chipstab::lp
