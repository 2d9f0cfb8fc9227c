#pragma once

// Exact integer and rational arithmetic plus the dense linear algebra the
// rest of the library relies on. Everything is arbitrary precision.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chipstab {

using BigInt = mpz_class;
using Rational = mpq_class;
using IntMatrix = std::vector<std::vector<BigInt>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

Rational make_rational(const BigInt& num, const BigInt& den);

// "p/q" for non-integers, "p" for integers.
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);
// Accepts "p", "-p", "p/q". Throws chipstab::Error on malformed input or a
// zero denominator.
Rational parse_rational(std::string_view text);

BigInt floor_of(const Rational& value);
BigInt ceil_of(const Rational& value);
bool is_integer(const Rational& value);

RationalMatrix to_rational(const IntMatrix& m);

// Fraction-free (Bareiss) elimination; exact.
BigInt determinant(IntMatrix m);
Rational determinant(RationalMatrix m);
std::size_t rank(RationalMatrix m);

// Solves a square system; nullopt when singular.
std::optional<std::vector<Rational>> solve(RationalMatrix a,
                                           std::vector<Rational> b);
std::optional<RationalMatrix> inverse(RationalMatrix a);

// Invariant factors d_1 | d_2 | ... of the Smith normal form, one per
// diagonal position (min(rows, cols) entries, zeros included), all >= 0.
std::vector<BigInt> smith_normal_form(IntMatrix m);

}  // namespace chipstab
