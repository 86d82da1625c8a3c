#pragma once
#include <gmpxx.h>
#include <string>
#include <string_view>

namespace affrep {

/// Exact scalar. Always canonical (gcd 1, positive denominator).
using Rational = mpq_class;

Rational make_q(long num, long den = 1);
Rational parse_rational(std::string_view s);
std::string to_string(const Rational& q);

Rational pow(const Rational& base, long e);
/// Generalized binomial C(top, k) for integer top and k >= 0.
Rational binom(long top, long k);
Rational factorial(long n);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace affrep
