#include "affrep/formal.hpp"

#include <climits>
#include <sstream>

namespace affrep {

LaurentPoly::LaurentPoly(const Rational& c) {
  if (sgn(c) != 0) c_[0] = c;
}

LaurentPoly LaurentPoly::monomial(long e, const Rational& c) {
  LaurentPoly p;
  p.set(e, c);
  return p;
}

LaurentPoly LaurentPoly::from_dense(const std::vector<Rational>& cs, long shift) {
  LaurentPoly p;
  for (size_t i = 0; i < cs.size(); ++i) p.set(shift + static_cast<long>(i), cs[i]);
  return p;
}

LaurentPoly LaurentPoly::linear_root(const Rational& z) {
  LaurentPoly p;
  p.set(1, 1);
  p.set(0, -z);
  return p;
}

Rational LaurentPoly::coeff(long e) const {
  auto it = c_.find(e);
  return it == c_.end() ? Rational(0) : it->second;
}

void LaurentPoly::set(long e, const Rational& c) {
  if (sgn(c) == 0) c_.erase(e);
  else c_[e] = c;
}

long LaurentPoly::min_exp() const { return c_.empty() ? 0 : c_.begin()->first; }
long LaurentPoly::max_exp() const { return c_.empty() ? 0 : c_.rbegin()->first; }

Rational LaurentPoly::eval(const Rational& x) const {
  Rational r(0);
  for (const auto& [e, c] : c_) r += c * pow(x, e);
  return r;
}

LaurentPoly LaurentPoly::derivative() const {
  LaurentPoly d;
  for (const auto& [e, c] : c_)
    if (e != 0) d.set(e - 1, c * e);
  return d;
}

std::pair<long, LaurentPoly> LaurentPoly::normalize_monomial() const {
  if (c_.empty()) throw Error(ErrorCode::ZeroConstantTerm, "zero polynomial has no normalization");
  long k = min_exp();
  LaurentPoly rest;
  for (const auto& [e, c] : c_) rest.c_[e - k] = c;
  return {k, rest};
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.c_) set(e, coeff(e) + c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.c_) set(e, coeff(e) - c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  std::map<long, Rational> acc;
  for (const auto& [ea, ca] : a.c_)
    for (const auto& [eb, cb] : b.c_) acc[ea + eb] += ca * cb;
  LaurentPoly r;
  for (const auto& [e, c] : acc) r.set(e, c);
  return r;
}

LaurentPoly operator*(const Rational& s, const LaurentPoly& a) {
  LaurentPoly r;
  for (const auto& [e, c] : a.c_) r.set(e, s * c);
  return r;
}

std::string LaurentPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << to_string(it->second) << ")";
    if (it->first != 0) os << "*x^" << it->first;
  }
  return os.str();
}

Rational Series2::at(long e1, long e2) const {
  if (!contains(e1, e2))
    throw Error(ErrorCode::WindowMiss,
                "exponent (" + std::to_string(e1) + "," + std::to_string(e2) + ") outside window");
  auto it = c.find({e1, e2});
  return it == c.end() ? Rational(0) : it->second;
}

void Series2::set(long e1, long e2, const Rational& v) {
  if (!contains(e1, e2)) throw Error(ErrorCode::WindowMiss, "set outside window");
  if (sgn(v) == 0) c.erase({e1, e2});
  else c[{e1, e2}] = v;
}

Poly2 binomial_poly(long m, int sign) {
  if (m < 0) throw Error(ErrorCode::PreconditionViolation, "binomial_poly needs m >= 0");
  Poly2 p;
  for (long i = 0; i <= m; ++i) {
    Rational c = binom(m, i);
    if (sign < 0 && (i & 1)) c = -c;
    p[{m - i, i}] = c;
  }
  return p;
}

Series2 multiply(const Poly2& f, const Series2& s) {
  if (f.empty()) return Series2(s.lo1, s.hi1, s.lo2, s.hi2);
  long min1 = LONG_MAX, max1 = LONG_MIN, min2 = LONG_MAX, max2 = LONG_MIN;
  for (const auto& [e, c] : f) {
    min1 = std::min(min1, e.first);
    max1 = std::max(max1, e.first);
    min2 = std::min(min2, e.second);
    max2 = std::max(max2, e.second);
  }
  Series2 r(s.lo1 + max1, s.hi1 + min1, s.lo2 + max2, s.hi2 + min2);
  for (long e1 = r.lo1; e1 <= r.hi1; ++e1)
    for (long e2 = r.lo2; e2 <= r.hi2; ++e2) {
      Rational acc(0);
      for (const auto& [e, c] : f) {
        auto it = s.c.find({e1 - e.first, e2 - e.second});
        if (it != s.c.end()) acc += c * it->second;
      }
      r.set(e1, e2, acc);
    }
  return r;
}

bool equal_on_overlap(const Series2& a, const Series2& b) {
  long l1 = std::max(a.lo1, b.lo1), h1 = std::min(a.hi1, b.hi1);
  long l2 = std::max(a.lo2, b.lo2), h2 = std::min(a.hi2, b.hi2);
  for (long e1 = l1; e1 <= h1; ++e1)
    for (long e2 = l2; e2 <= h2; ++e2)
      if (a.at(e1, e2) != b.at(e1, e2)) return false;
  return true;
}

Series2 binomial_expand(long m, int sign, long lo, long hi) {
  Series2 s(lo, hi, lo, hi);
  // Terms C(m,i) sign^i x1^{m-i} x2^i for i >= 0; only i in [lo,hi] can land in the window.
  for (long i = std::max(0L, lo); i <= hi; ++i) {
    long e1 = m - i;
    if (e1 < lo || e1 > hi) continue;
    Rational c = binom(m, i);
    if (sign < 0 && (i & 1)) c = -c;
    s.set(e1, i, c);
  }
  return s;
}

PowerSeriesTruncated expand_inverse(const LaurentPoly& p, long order) {
  if (order < 0) throw Error(ErrorCode::PreconditionViolation, "negative order");
  if (!p.is_polynomial())
    throw Error(ErrorCode::PreconditionViolation, "expand_inverse needs a polynomial; normalize the monomial first");
  Rational p0 = p.coeff(0);
  if (sgn(p0) == 0) throw Error(ErrorCode::ZeroConstantTerm, "p(0) = 0");
  PowerSeriesTruncated q;
  q.order = order;
  q.coeffs.assign(order + 1, Rational(0));
  q.coeffs[0] = 1 / p0;
  for (long n = 1; n <= order; ++n) {
    Rational acc(0);
    for (const auto& [e, c] : p.terms()) {
      if (e == 0 || e > n) continue;
      acc += c * q.coeffs[n - e];
    }
    q.coeffs[n] = -acc / p0;
  }
  return q;
}

ScalarSeries delta_coefficients(const Rational& z, long j, long lo, long hi) {
  if (sgn(z) == 0) throw Error(ErrorCode::ZeroEvaluationPoint, "delta at z = 0");
  if (j < 0) throw Error(ErrorCode::PreconditionViolation, "negative derivative order");
  ScalarSeries s(lo, hi, Rational(0));
  // x^{-1} delta(z/x) = sum_k z^k x^{-k-1}; (1/j!) d^j x^{-k-1} = C(-k-1, j) x^{-k-1-j}.
  for (long e = lo; e <= hi; ++e) {
    long k = -e - 1 - j;
    s.at(e) = pow(z, k) * binom(-k - 1, j);
  }
  return s;
}

Rational delta2_coefficient(long J, long e1, long e2) {
  if (e2 != -e1 - 1 - J) return 0;
  return binom(-e1 - 1, J);
}

Series2 delta2_series(long J, long lo, long hi) {
  Series2 s(lo, hi, lo, hi);
  for (long e1 = lo; e1 <= hi; ++e1) {
    long e2 = -e1 - 1 - J;
    if (e2 < lo || e2 > hi) continue;
    s.set(e1, e2, delta2_coefficient(J, e1, e2));
  }
  return s;
}

IdentityReport check_delta_substitution(const LaurentPoly& f, const Rational& z, long lo, long hi) {
  ScalarSeries d = delta_coefficients(z, 0, lo, hi);
  ScalarSeries lhs = multiply(f, d);
  Rational fz = f.eval(z);
  IdentityReport rep;
  rep.lo = std::max(lhs.lo, lo);
  rep.hi = std::min(lhs.hi, hi);
  for (long e = rep.lo; e <= rep.hi; ++e) {
    ++rep.checked;
    Rational rhs = fz * d.at(e);
    if (lhs.at(e) != rhs) {
      rep.passed = false;
      rep.failure = "x^" + std::to_string(e) + ": " + to_string(lhs.at(e)) + " != " + to_string(rhs);
      break;
    }
  }
  return rep;
}

IdentityReport delta_derivative_identity(long m, long n, long lo, long hi) {
  if (m < 0 || n < 0) throw Error(ErrorCode::PreconditionViolation, "m, n must be nonnegative");
  // (x1-x2)^m (d/dx2)^n x2^{-1}delta(x1/x2) = n! (x1-x2)^m D_n where D_J = (1/J!) d^J x2^{-1}delta.
  Series2 lhs = multiply(binomial_poly(m, -1), delta2_series(n, lo, hi));
  IdentityReport rep;
  rep.lo = std::max(lhs.lo1, lhs.lo2);
  rep.hi = std::min(lhs.hi1, lhs.hi2);
  Rational nf = factorial(n);
  for (long e1 = lhs.lo1; e1 <= lhs.hi1; ++e1)
    for (long e2 = lhs.lo2; e2 <= lhs.hi2; ++e2) {
      ++rep.checked;
      Rational got = nf * lhs.at(e1, e2);
      Rational want(0);
      if (m <= n) want = nf * delta2_coefficient(n - m, e1, e2);
      if (got != want) {
        rep.passed = false;
        rep.failure = "x1^" + std::to_string(e1) + " x2^" + std::to_string(e2) + ": " + to_string(got) +
                      " != " + to_string(want);
        return rep;
      }
    }
  return rep;
}

}  // namespace affrep
