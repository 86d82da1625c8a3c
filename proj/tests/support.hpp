#pragma once
#include <random>
#include <vector>

#include "affrep/formal.hpp"
#include "affrep/lie.hpp"

namespace testgen {

using affrep::LaurentPoly;
using affrep::Matrix;
using affrep::Rational;

/// Seeded generator for property tests; every draw goes through rng so runs are reproducible.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(unsigned long seed = 7) : rng(seed) {}

  long int_in(long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)); }
  bool coin() { return rng() % 2 == 0; }

  Rational small_q(long span = 4) { return Rational(int_in(-span, span)); }
  Rational nonzero_q(long span = 4) {
    while (true) {
      long num = int_in(-span, span);
      if (num != 0) return affrep::make_q(num, int_in(1, 3));
    }
  }
  /// Polynomial with degree <= deg; the constant term is nonzero when asked.
  LaurentPoly poly(long deg, bool unit_constant = false, long span = 4) {
    std::vector<Rational> cs(int_in(0, deg) + 1);
    for (auto& c : cs) c = small_q(span);
    if (unit_constant) cs[0] = nonzero_q(span);
    return LaurentPoly::from_dense(cs);
  }
  LaurentPoly laurent(long span_exp, long span = 3) {
    LaurentPoly p;
    for (long e = -span_exp; e <= span_exp; ++e)
      if (coin()) p.set(e, small_q(span));
    return p;
  }
  Matrix matrix(size_t r, size_t c, long span = 3) {
    Matrix m(r, c);
    for (auto& x : m.a) x = small_q(span);
    return m;
  }
  affrep::Vec vec(size_t n, long span = 3) {
    affrep::Vec v(n);
    for (auto& x : v) x = small_q(span);
    return v;
  }
};

/// Generalized binomial by the falling-factorial product, independent of the library's binom.
inline Rational binom_oracle(long top, long k) {
  Rational r(1);
  for (long i = 0; i < k; ++i) r = r * Rational(top - i) / Rational(i + 1);
  return r;
}

inline Rational pow_oracle(const Rational& z, long e) {
  Rational r(1);
  for (long i = 0; i < (e < 0 ? -e : e); ++i) r *= z;
  return e < 0 ? Rational(1) / r : r;
}

}  // namespace testgen
