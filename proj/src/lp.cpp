#include "chipstab/lp.hpp"

#include <string>

#include "chipstab/error.hpp"

namespace chipstab::lp {

void LpProblem::add_row(std::vector<Rational> coeffs, Relation rel, Rational value) {
  if (coeffs.size() != num_variables())
    throw Error("lp_dimension", "constraint row has " + std::to_string(coeffs.size()) +
                                    " coefficients, expected " + std::to_string(num_variables()));
  rows.push_back(std::move(coeffs));
  relations.push_back(rel);
  rhs.push_back(std::move(value));
}

namespace {

// x_j = offset + sum(coef * y_col) over the standard-form structural columns.
struct VariableMap {
  Rational offset;
  std::vector<std::pair<std::size_t, int>> columns;
};

class Tableau {
 public:
  Tableau(RationalMatrix rows, std::vector<std::size_t> basis, std::size_t num_cols)
      : t_(std::move(rows)), basis_(std::move(basis)), cols_(num_cols) {}

  std::size_t num_rows() const { return t_.size(); }
  const Rational& rhs(std::size_t i) const { return t_[i][cols_]; }
  const Rational& at(std::size_t i, std::size_t j) const { return t_[i][j]; }
  std::size_t basic(std::size_t i) const { return basis_[i]; }
  const std::vector<std::size_t>& basis() const { return basis_; }

  void set_costs(const std::vector<Rational>& costs) {
    reduced_ = costs;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      const Rational& cb = costs[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= cb * t_[i][j];
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Rational p = t_[r][c];
    for (auto& x : t_[r]) x /= p;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == r || t_[i][c] == 0) continue;
      Rational f = t_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
    }
    if (!reduced_.empty() && reduced_[c] != 0) {
      Rational f = reduced_[c];
      for (std::size_t j = 0; j < cols_; ++j)
        if (t_[r][j] != 0) reduced_[j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  // Bland's rule. Returns false when unbounded.
  bool run(const std::vector<bool>& allowed) {
    while (true) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j)
        if (allowed[j] && reduced_[j] > 0) {
          enter = j;
          break;
        }
      if (enter == cols_) return true;
      std::size_t leave = t_.size();
      Rational best;
      for (std::size_t i = 0; i < t_.size(); ++i) {
        if (t_[i][enter] <= 0) continue;
        Rational ratio = t_[i][cols_] / t_[i][enter];
        if (leave == t_.size() || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == t_.size()) return false;
      pivot(leave, enter);
    }
  }

 private:
  RationalMatrix t_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
  std::vector<Rational> reduced_;
};

}  // namespace

LpResult solve_lp(const LpProblem& problem) {
  const std::size_t nvars = problem.num_variables();
  const std::size_t m0 = problem.rows.size();
  if (problem.relations.size() != m0 || problem.rhs.size() != m0 ||
      problem.bounds.size() != nvars)
    throw Error("lp_dimension", "inconsistent LP dimensions");
  for (const auto& row : problem.rows)
    if (row.size() != nvars) throw Error("lp_dimension", "inconsistent LP row length");

  // Substitute bounded/free originals by nonnegative structural columns.
  std::vector<VariableMap> vars(nvars);
  std::size_t ny = 0;
  std::vector<std::pair<std::size_t, Rational>> upper_rows;  // y_col <= value
  for (std::size_t j = 0; j < nvars; ++j) {
    const Bound& b = problem.bounds[j];
    if (b.lower) {
      vars[j].offset = *b.lower;
      vars[j].columns.push_back({ny, 1});
      if (b.upper) {
        if (*b.upper < *b.lower) {
          LpResult r;
          r.status = LpStatus::infeasible;
          return r;
        }
        upper_rows.push_back({ny, *b.upper - *b.lower});
      }
      ++ny;
    } else if (b.upper) {
      vars[j].offset = *b.upper;
      vars[j].columns.push_back({ny++, -1});
    } else {
      vars[j].columns.push_back({ny++, 1});
      vars[j].columns.push_back({ny++, -1});
    }
  }

  struct Row {
    std::vector<Rational> coeffs;
    Relation rel;
    Rational rhs;
  };
  std::vector<Row> rows;
  rows.reserve(m0 + upper_rows.size());
  for (std::size_t i = 0; i < m0; ++i) {
    Row r{std::vector<Rational>(ny), problem.relations[i], problem.rhs[i]};
    for (std::size_t j = 0; j < nvars; ++j) {
      const Rational& a = problem.rows[i][j];
      if (a == 0) continue;
      r.rhs -= a * vars[j].offset;
      for (auto [col, coef] : vars[j].columns) r.coeffs[col] += coef * a;
    }
    rows.push_back(std::move(r));
  }
  for (auto& [col, value] : upper_rows) {
    Row r{std::vector<Rational>(ny), Relation::less_equal, value};
    r.coeffs[col] = 1;
    rows.push_back(std::move(r));
  }
  const std::size_t m = rows.size();

  std::size_t nslack = 0;
  for (const auto& r : rows)
    if (r.rel != Relation::equal) ++nslack;
  const std::size_t first_art = ny + nslack;

  // Standard form: A z = b, z >= 0, b >= 0.
  RationalMatrix std_rows(m, std::vector<Rational>(first_art));
  std::vector<Rational> std_rhs(m);
  std::vector<bool> flipped(m, false);
  std::vector<std::size_t> slack_of(m, first_art);
  std::size_t s = ny;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < ny; ++j) std_rows[i][j] = rows[i].coeffs[j];
    if (rows[i].rel == Relation::less_equal) {
      std_rows[i][s] = 1;
      slack_of[i] = s++;
    } else if (rows[i].rel == Relation::greater_equal) {
      std_rows[i][s] = -1;
      slack_of[i] = s++;
    }
    std_rhs[i] = rows[i].rhs;
    if (std_rhs[i] < 0) {
      flipped[i] = true;
      for (auto& x : std_rows[i]) x = -x;
      std_rhs[i] = -std_rhs[i];
    }
  }

  std::vector<std::size_t> basis(m);
  std::size_t nart = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (slack_of[i] < first_art && std_rows[i][slack_of[i]] == 1) {
      basis[i] = slack_of[i];
    } else {
      basis[i] = first_art + nart++;
    }
  }
  const std::size_t ncols = first_art + nart;
  RationalMatrix tab(m, std::vector<Rational>(ncols + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < first_art; ++j) tab[i][j] = std_rows[i][j];
    if (basis[i] >= first_art) tab[i][basis[i]] = 1;
    tab[i][ncols] = std_rhs[i];
  }
  Tableau t(std::move(tab), basis, ncols);
  LpResult result;

  if (nart > 0) {
    std::vector<Rational> phase1(ncols);
    for (std::size_t j = first_art; j < ncols; ++j) phase1[j] = -1;
    t.set_costs(phase1);
    t.run(std::vector<bool>(ncols, true));
    Rational infeas = 0;
    for (std::size_t i = 0; i < t.num_rows(); ++i)
      if (t.basic(i) >= first_art) infeas += t.rhs(i);
    if (infeas > 0) {
      result.status = LpStatus::infeasible;
      return result;
    }
    // Artificials still basic sit at zero. Pivot them out where possible; a
    // row with no structural entry is redundant and keeps its artificial.
    for (std::size_t i = 0; i < t.num_rows(); ++i) {
      if (t.basic(i) < first_art) continue;
      for (std::size_t j = 0; j < first_art; ++j)
        if (t.at(i, j) != 0) {
          t.pivot(i, j);
          break;
        }
    }
  }

  std::vector<Rational> costs(ncols);
  for (std::size_t j = 0; j < nvars; ++j)
    for (auto [col, coef] : vars[j].columns) costs[col] += coef * problem.objective[j];
  t.set_costs(costs);
  std::vector<bool> allowed(ncols, false);
  for (std::size_t j = 0; j < first_art; ++j) allowed[j] = true;
  if (!t.run(allowed)) {
    result.status = LpStatus::unbounded;
    return result;
  }

  std::vector<Rational> z(ncols);
  for (std::size_t i = 0; i < t.num_rows(); ++i) z[t.basic(i)] = t.rhs(i);
  result.status = LpStatus::optimal;
  result.point.resize(nvars);
  result.value = 0;
  for (std::size_t j = 0; j < nvars; ++j) {
    result.point[j] = vars[j].offset;
    for (auto [col, coef] : vars[j].columns) result.point[j] += coef * z[col];
    result.value += problem.objective[j] * result.point[j];
  }
  Rational std_value = 0;
  for (std::size_t j = 0; j < first_art; ++j) std_value += costs[j] * z[j];

  // Dual certificate: B^T u = c_B over the full (possibly artificial) basis.
  std::vector<std::size_t> art_row(nart);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= first_art) art_row[basis[i] - first_art] = i;
  auto std_entry = [&](std::size_t row, std::size_t col) -> Rational {
    if (col < first_art) return std_rows[row][col];
    return art_row[col - first_art] == row ? Rational(1) : Rational(0);
  };
  RationalMatrix bt(m, std::vector<Rational>(m));
  std::vector<Rational> cb(m);
  for (std::size_t i = 0; i < m; ++i) {
    cb[i] = costs[t.basic(i)];
    for (std::size_t r = 0; r < m; ++r) bt[i][r] = std_entry(r, t.basic(i));
  }
  auto u = solve(std::move(bt), std::move(cb));
  if (!u) throw Error("lp_internal", "singular final basis");
  bool ok = true;
  for (std::size_t j = 0; j < first_art && ok; ++j) {
    Rational lhs = 0;
    for (std::size_t r = 0; r < m; ++r) lhs += std_rows[r][j] * (*u)[r];
    if (lhs < costs[j]) ok = false;
  }
  Rational dual_value = 0;
  for (std::size_t r = 0; r < m; ++r) dual_value += std_rhs[r] * (*u)[r];
  if (!ok || dual_value != std_value)
    throw Error("lp_internal", "dual certificate failed verification");
  result.dual_verified = true;
  result.dual.assign(m0, Rational(0));
  for (std::size_t r = 0; r < m0; ++r) result.dual[r] = flipped[r] ? -(*u)[r] : (*u)[r];
  return result;
}

}  // namespace chipstab::lp
