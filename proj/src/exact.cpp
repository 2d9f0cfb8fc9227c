#include "chipstab/exact.hpp"

#include <algorithm>
#include <utility>

#include "chipstab/error.hpp"

namespace chipstab {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error("zero_denominator", "rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const BigInt& value) { return value.get_str(); }

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::string s(text);
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start == s.size() ||
      !std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error("bad_rational", "malformed rational '" + std::string(whole) + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  BigInt num = parse_integer(text.substr(0, slash), text);
  BigInt den = parse_integer(text.substr(slash + 1), text);
  return make_rational(num, den);
}

BigInt floor_of(const Rational& value) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

BigInt ceil_of(const Rational& value) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out[i].reserve(m[i].size());
    for (const auto& x : m[i]) out[i].emplace_back(x);
  }
  return out;
}

BigInt determinant(IntMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace {

// Gauss-Jordan on an augmented system; returns rank and leaves `a` in
// reduced row echelon form. Pivot columns are limited to the first
// `pivot_cols` columns.
std::size_t row_reduce(RationalMatrix& a, std::size_t pivot_cols,
                       Rational* det_sign = nullptr) {
  const std::size_t rows = a.size();
  std::size_t r = 0;
  Rational det = 1;
  for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) {
      det = 0;
      continue;
    }
    if (p != r) {
      std::swap(a[p], a[r]);
      det = -det;
    }
    Rational pivot = a[r][c];
    det *= pivot;
    for (auto& x : a[r]) x /= pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < a[i].size(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  if (det_sign) *det_sign = (r == rows && rows == pivot_cols) ? det : Rational(0);
  return r;
}

}  // namespace

Rational determinant(RationalMatrix m) {
  if (m.empty()) return 1;
  Rational det;
  row_reduce(m, m.size(), &det);
  return det;
}

std::size_t rank(RationalMatrix m) {
  if (m.empty()) return 0;
  return row_reduce(m, m[0].size());
}

std::optional<std::vector<Rational>> solve(RationalMatrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  if (row_reduce(a, n) < n) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

std::optional<RationalMatrix> inverse(RationalMatrix a) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    a[i].resize(2 * n);
    a[i][n + i] = 1;
  }
  if (row_reduce(a, n) < n) return std::nullopt;
  RationalMatrix inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

std::vector<BigInt> smith_normal_form(IntMatrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  const std::size_t diag = std::min(rows, cols);
  std::vector<BigInt> out;
  for (std::size_t t = 0; t < diag; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) {
            pr = i;
            pc = j;
          }
      if (pr == rows) {
        out.resize(diag, 0);
        return out;
      }
      std::swap(m[t], m[pr]);
      for (auto& row : m) std::swap(row[t], row[pc]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), m[t][t].get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), m[t][t].get_mpz_t());
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold any offending row into row t and retry.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    out.push_back(abs(m[t][t]));
  }
  return out;
}

}  // namespace chipstab
