#pragma once
// Arithmetic modulo the Mersenne prime 2^61 - 1, shared by the exact solvers' fast paths.

#include <cstdint>
#include <optional>

#include "affrep/rational.hpp"

namespace affrep::modp {

constexpr uint64_t kPrime = 2305843009213693951ULL;

inline uint64_t mulmod(uint64_t a, uint64_t b) {
  unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
  uint64_t lo = static_cast<uint64_t>(r & kPrime), hi = static_cast<uint64_t>(r >> 61);
  uint64_t s = lo + hi;
  return s >= kPrime ? s - kPrime : s;
}
inline uint64_t addmod(uint64_t a, uint64_t b) {
  uint64_t s = a + b;
  return s >= kPrime ? s - kPrime : s;
}
inline uint64_t submod(uint64_t a, uint64_t b) { return a >= b ? a - b : a + kPrime - b; }
inline uint64_t powmod(uint64_t a, uint64_t e) {
  uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}
inline uint64_t invmod(uint64_t a) { return powmod(a, kPrime - 2); }

inline uint64_t reduce(const mpz_class& v) {
  static const mpz_class p(std::to_string(kPrime));
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  return r.fits_ulong_p() ? r.get_ui() : std::stoull(r.get_str());
}

/// Image of a rational, or nullopt when the denominator vanishes modulo the prime.
inline std::optional<uint64_t> reduce(const Rational& q) {
  uint64_t d = reduce(mpz_class(q.get_den()));
  if (d == 0) return std::nullopt;
  return mulmod(reduce(mpz_class(q.get_num())), invmod(d));
}

}  // namespace affrep::modp
