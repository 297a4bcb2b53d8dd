#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace tangent {

// Exact arbitrary-precision arithmetic. All constants flowing through the
// prover (touch points, curve coefficients, polynomial coefficients) live in
// BigRational; doubles appear only on the explicitly numeric paths.
//
// mpq_class keeps the canonical invariant we need: gcd(num, den) = 1 and
// den > 0, as long as values are built through the helpers below.
using BigInt = mpz_class;
using BigRational = mpq_class;

BigRational rational(long num, long den = 1);
BigRational rational(const BigInt& num, const BigInt& den);

// Accepts "p/q", integers, and decimal literals ("0.9" -> 9/10). Returns
// nullopt on malformed input or a zero denominator.
std::optional<BigRational> parse_rational(std::string_view text);

std::string to_string(const BigRational& q);
double to_double(const BigRational& q);

// Exact binary expansion of a finite double.
BigRational exact_from_double(double x);

BigRational abs(const BigRational& q);
int sign(const BigRational& q);

// q^e with integer e (e < 0 requires q != 0).
BigRational pow(const BigRational& q, long e);

// Exact k-th root when num and den are both perfect k-th powers (k >= 1;
// negative q allowed for odd k). nullopt otherwise.
std::optional<BigRational> exact_root(const BigRational& q, unsigned long k);

BigInt floor_div(const BigInt& a, const BigInt& b);
BigRational floor_to_multiple(const BigRational& q, long denominator);
BigRational ceil_to_multiple(const BigRational& q, long denominator);

// The rational with the smallest denominator in [lo, hi] (Stern-Brocot walk).
BigRational simplest_rational_between(const BigRational& lo, const BigRational& hi);

// Rational reconstruction of a double: the simplest rational within eps of x,
// rejected (nullopt) if its denominator exceeds max_den.
std::optional<BigRational> reconstruct_rational(double x, double eps, const BigInt& max_den);

}  // namespace tangent
