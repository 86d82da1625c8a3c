#include "affrep/rational.hpp"

#include "affrep/error.hpp"

namespace affrep {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::ZeroEvaluationPoint: return "ZeroEvaluationPoint";
    case ErrorCode::WindowMiss: return "WindowMiss";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::RepeatedPoint: return "RepeatedPoint";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::NotMultiplicityFree: return "NotMultiplicityFree";
    case ErrorCode::DepthTooSmall: return "DepthTooSmall";
    case ErrorCode::WindowExhausted: return "WindowExhausted";
    case ErrorCode::WindowUnderflow: return "WindowUnderflow";
    case ErrorCode::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Rational make_q(long num, long den) {
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view s) {
  std::string str(s);
  if (str.empty()) throw Error(ErrorCode::ParseError, "empty rational");
  auto slash = str.find('/');
  auto digits_ok = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    size_t i = 0;
    if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = str.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : str.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false))
    throw Error(ErrorCode::ParseError, "bad rational '" + str + "'");
  if (num[0] == '+') num = num.substr(1);
  mpz_class n(num), d(den);
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + str + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational pow(const Rational& base, long e) {
  if (e < 0) {
    if (is_zero(base)) throw Error(ErrorCode::ZeroEvaluationPoint, "negative power of zero");
    return pow(Rational(1) / base, -e);
  }
  Rational r(1), b(base);
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

Rational binom(long top, long k) {
  if (k < 0) return 0;
  Rational r(1);
  for (long i = 0; i < k; ++i) {
    r *= Rational(top - i);
    r /= Rational(i + 1);
  }
  return r;
}

Rational factorial(long n) {
  Rational r(1);
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace affrep
