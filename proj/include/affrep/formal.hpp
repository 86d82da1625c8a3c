#pragma once
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "affrep/error.hpp"
#include "affrep/linalg.hpp"
#include "affrep/rational.hpp"

namespace affrep {

/// Finite Laurent polynomial in one variable. Never stores a zero coefficient.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(const Rational& c);  // NOLINT: constants convert implicitly
  static LaurentPoly monomial(long e, const Rational& c = 1);
  /// Coefficients c0 + c1 x + c2 x^2 + ...
  static LaurentPoly from_dense(const std::vector<Rational>& cs, long shift = 0);
  static LaurentPoly linear_root(const Rational& z);  // x - z

  Rational coeff(long e) const;
  void set(long e, const Rational& c);
  const std::map<long, Rational>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long min_exp() const;
  long max_exp() const;
  long degree() const { return max_exp(); }
  bool is_polynomial() const { return c_.empty() || min_exp() >= 0; }

  Rational eval(const Rational& x) const;
  LaurentPoly derivative() const;
  /// Splits this = x^k * rest with rest(0) != 0.
  std::pair<long, LaurentPoly> normalize_monomial() const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const Rational& s, const LaurentPoly& a);
  bool operator==(const LaurentPoly& o) const { return c_ == o.c_; }

  std::string str() const;

 private:
  std::map<long, Rational> c_;
};

/// Window-truncated bilateral series sum_{e in [lo,hi]} c_e x^e.
/// Coefficients outside the window carry no claim.
template <class V>
struct SeriesWindow {
  long lo = 0, hi = -1;
  V zero{};
  std::vector<V> c;

  SeriesWindow() = default;
  SeriesWindow(long l, long h, V z) : lo(l), hi(h), zero(z), c(h >= l ? h - l + 1 : 0, z) {}

  bool contains(long e) const { return e >= lo && e <= hi; }
  const V& at(long e) const {
    if (!contains(e)) throw Error(ErrorCode::WindowMiss, "exponent " + std::to_string(e) + " outside window");
    return c[e - lo];
  }
  V& at(long e) {
    if (!contains(e)) throw Error(ErrorCode::WindowMiss, "exponent " + std::to_string(e) + " outside window");
    return c[e - lo];
  }
  SeriesWindow restrict(long l, long h) const {
    SeriesWindow r(std::max(l, lo), std::min(h, hi), zero);
    for (long e = r.lo; e <= r.hi; ++e) r.at(e) = at(e);
    return r;
  }
};

using ScalarSeries = SeriesWindow<Rational>;

/// Equality asserted only on the intersection of the two windows.
template <class V>
bool equal_on_overlap(const SeriesWindow<V>& a, const SeriesWindow<V>& b) {
  long l = std::max(a.lo, b.lo), h = std::min(a.hi, b.hi);
  for (long e = l; e <= h; ++e)
    if (!(a.at(e) == b.at(e))) return false;
  return true;
}

/// f * s; the window shrinks to [lo + maxexp(f), hi + minexp(f)].
template <class V>
SeriesWindow<V> multiply(const LaurentPoly& f, const SeriesWindow<V>& s) {
  if (f.is_zero()) return SeriesWindow<V>(s.lo, s.hi, s.zero);
  SeriesWindow<V> r(s.lo + f.max_exp(), s.hi + f.min_exp(), s.zero);
  for (long e = r.lo; e <= r.hi; ++e) {
    V acc = s.zero;
    for (const auto& [k, fk] : f.terms()) acc = acc + fk * s.at(e - k);
    r.at(e) = acc;
  }
  return r;
}

/// Coefficient of x^{-1}. Throws WindowMiss if -1 lies outside the window.
template <class V>
V residue(const SeriesWindow<V>& s) {
  return s.at(-1);
}

/// Two-variable window series keyed by (exponent of x1, exponent of x2).
struct Series2 {
  long lo1 = 0, hi1 = -1, lo2 = 0, hi2 = -1;
  std::map<std::pair<long, long>, Rational> c;

  Series2() = default;
  Series2(long l1, long h1, long l2, long h2) : lo1(l1), hi1(h1), lo2(l2), hi2(h2) {}
  bool contains(long e1, long e2) const { return e1 >= lo1 && e1 <= hi1 && e2 >= lo2 && e2 <= hi2; }
  Rational at(long e1, long e2) const;
  void set(long e1, long e2, const Rational& v);
};

/// Finite two-variable Laurent polynomial.
using Poly2 = std::map<std::pair<long, long>, Rational>;

Poly2 binomial_poly(long m, int sign);  // (x1 + sign*x2)^m, m >= 0
Series2 multiply(const Poly2& f, const Series2& s);
bool equal_on_overlap(const Series2& a, const Series2& b);

/// ι_{x;0}(1/p) modulo x^{N+1}.
struct PowerSeriesTruncated {
  long order = 0;
  std::vector<Rational> coeffs;  // alpha_0..alpha_N
};

/// coefficient * (1/j!)(d/dx)^j [x^{-1} delta(z/x)]
template <class V>
struct DeltaTerm {
  Rational z;
  long j = 0;
  V coefficient;
};

/// (x1 + sign*x2)^m expanded in nonnegative powers of x2, restricted to the window.
Series2 binomial_expand(long m, int sign, long lo, long hi);
PowerSeriesTruncated expand_inverse(const LaurentPoly& p, long order);
ScalarSeries delta_coefficients(const Rational& z, long j, long lo, long hi);
/// Coefficient of x1^e1 x2^e2 in (1/J!)(d/dx2)^J [x2^{-1} delta(x1/x2)].
Rational delta2_coefficient(long J, long e1, long e2);
Series2 delta2_series(long J, long lo, long hi);

struct IdentityReport {
  bool passed = true;
  long checked = 0;       // number of coefficients compared
  long lo = 0, hi = -1;   // window actually compared (per variable)
  std::string failure;    // first mismatch, empty when passed
};

IdentityReport check_delta_substitution(const LaurentPoly& f, const Rational& z, long lo, long hi);
IdentityReport delta_derivative_identity(long m, long n, long lo, long hi);

}  // namespace affrep
