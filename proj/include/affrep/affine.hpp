#pragma once
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "affrep/lie.hpp"

namespace affrep {

/// Element of the affine algebra, optionally extended by the degree operator d.
struct AffineElement {
  std::map<std::pair<size_t, long>, Rational> terms;  // (basis index, mode) -> coefficient
  Rational central;                                   // coefficient of k
  Rational degree_op;                                 // coefficient of d

  static AffineElement mode(const Vec& a, long n);
  static AffineElement basis_mode(size_t i, long n, const Rational& c = 1);
  static AffineElement k(const Rational& c = 1);
  static AffineElement d(const Rational& c = 1);

  bool is_zero() const { return terms.empty() && sgn(central) == 0 && sgn(degree_op) == 0; }
  void add_term(size_t i, long n, const Rational& c);
  AffineElement& operator+=(const AffineElement& o);
  friend AffineElement operator+(AffineElement a, const AffineElement& b) { return a += b; }
  friend AffineElement operator*(const Rational& s, const AffineElement& a);
  bool operator==(const AffineElement& o) const {
    return terms == o.terms && central == o.central && degree_op == o.degree_op;
  }
  std::string str(const LieAlgebraData& L) const;
};

AffineElement affine_bracket(const LieAlgebraData& L, const AffineElement& x, const AffineElement& y);

struct CommutatorReport {
  bool passed = true;
  long checked = 0;
  std::string failure;
};

/// Compares coefficients of the generating-function commutator with the mode bracket on [lo,hi]^2.
CommutatorReport gf_commutator_check(const LieAlgebraData& L, const Vec& a, const Vec& b, long lo, long hi);

/// Negative-mode generator a_index(-n), n >= 1.
struct Generator {
  long n;
  size_t index;
  bool operator==(const Generator& o) const { return n == o.n && index == o.index; }
};
/// Fixed total order: larger n first, then smaller basis index.
bool generator_less(const Generator& x, const Generator& y);

using Monomial = std::vector<Generator>;  // nondecreasing under generator_less
long monomial_degree(const Monomial& m);
bool monomial_less(const Monomial& x, const Monomial& y);  // degree, then lexicographic
std::string monomial_str(const Monomial& m, const LieAlgebraData& L);

/// All ordered monomials of total degree <= depth in dim generators per mode.
std::vector<Monomial> pbw_monomials(long depth, size_t dim);

}  // namespace affrep
