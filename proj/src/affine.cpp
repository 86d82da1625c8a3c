#include "affrep/affine.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "affrep/error.hpp"
#include "affrep/formal.hpp"

namespace affrep {

AffineElement AffineElement::mode(const Vec& a, long n) {
  AffineElement x;
  for (size_t i = 0; i < a.size(); ++i) x.add_term(i, n, a[i]);
  return x;
}

AffineElement AffineElement::basis_mode(size_t i, long n, const Rational& c) {
  AffineElement x;
  x.add_term(i, n, c);
  return x;
}

AffineElement AffineElement::k(const Rational& c) {
  AffineElement x;
  x.central = c;
  return x;
}

AffineElement AffineElement::d(const Rational& c) {
  AffineElement x;
  x.degree_op = c;
  return x;
}

void AffineElement::add_term(size_t i, long n, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, ins] = terms.try_emplace({i, n}, 0);
  it->second += c;
  if (sgn(it->second) == 0) terms.erase(it);
}

AffineElement& AffineElement::operator+=(const AffineElement& o) {
  for (const auto& [key, c] : o.terms) add_term(key.first, key.second, c);
  central += o.central;
  degree_op += o.degree_op;
  return *this;
}

AffineElement operator*(const Rational& s, const AffineElement& a) {
  AffineElement r;
  for (const auto& [key, c] : a.terms) r.add_term(key.first, key.second, s * c);
  r.central = s * a.central;
  r.degree_op = s * a.degree_op;
  return r;
}

std::string AffineElement::str(const LieAlgebraData& L) const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c) << "*" << L.basis_names[key.first] << "(" << key.second << ")";
  }
  if (sgn(central) != 0) os << (first ? "" : " + ") << to_string(central) << "*k", first = false;
  if (sgn(degree_op) != 0) os << (first ? "" : " + ") << to_string(degree_op) << "*d", first = false;
  if (first) os << "0";
  return os.str();
}

AffineElement affine_bracket(const LieAlgebraData& L, const AffineElement& x, const AffineElement& y) {
  for (const auto* e : {&x, &y})
    for (const auto& [key, c] : e->terms)
      if (key.first >= L.dim) throw Error(ErrorCode::DimensionMismatch, "basis index out of range for the algebra");
  AffineElement r;
  for (const auto& [kx, cx] : x.terms)
    for (const auto& [ky, cy] : y.terms) {
      Rational c = cx * cy;
      const Vec& br = L.sc[kx.first][ky.first];
      for (size_t i = 0; i < L.dim; ++i)
        if (sgn(br[i]) != 0) r.add_term(i, kx.second + ky.second, c * br[i]);
      if (kx.second + ky.second == 0) r.central += c * kx.second * L.form(kx.first, ky.first);
    }
  // [d, a(n)] = n a(n); k is central.
  if (sgn(x.degree_op) != 0)
    for (const auto& [ky, cy] : y.terms) r.add_term(ky.first, ky.second, x.degree_op * cy * ky.second);
  if (sgn(y.degree_op) != 0)
    for (const auto& [kx, cx] : x.terms) r.add_term(kx.first, kx.second, -y.degree_op * cx * kx.second);
  return r;
}

CommutatorReport gf_commutator_check(const LieAlgebraData& L, const Vec& a, const Vec& b, long lo, long hi) {
  CommutatorReport rep;
  Vec ab = bracket(L, a, b);
  Rational form_ab = L.pair(a, b);
  // Delta series large enough to cover every target coefficient.
  long B = std::max(std::labs(lo), std::labs(hi)) * 2 + 4;
  Series2 d0 = delta2_series(0, -B, B), d1 = delta2_series(1, -B, B);
  // Coefficient of x2^e in [a,b](x2) is [a,b](-e-1); in k (a constant) only e = 0.
  auto gen_coeff = [&](long e) { return AffineElement::mode(ab, -e - 1); };
  for (long m = lo; m <= hi; ++m)
    for (long n = lo; n <= hi; ++n) {
      ++rep.checked;
      AffineElement lhs = affine_bracket(L, AffineElement::mode(a, m), AffineElement::mode(b, n));
      long E1 = -m - 1, E2 = -n - 1;
      AffineElement rhs;
      for (const auto& [e, c] : d0.c)
        if (e.first == E1) rhs += c * gen_coeff(E2 - e.second);
      for (const auto& [e, c] : d1.c)
        if (e.first == E1 && E2 - e.second == 0) rhs += (c * form_ab) * AffineElement::k();
      if (!(lhs == rhs)) {
        rep.passed = false;
        rep.failure = "m=" + std::to_string(m) + " n=" + std::to_string(n) + ": " + lhs.str(L) + " vs " + rhs.str(L);
        return rep;
      }
    }
  return rep;
}

bool generator_less(const Generator& x, const Generator& y) {
  if (x.n != y.n) return x.n > y.n;
  return x.index < y.index;
}

long monomial_degree(const Monomial& m) {
  long d = 0;
  for (const auto& g : m) d += g.n;
  return d;
}

bool monomial_less(const Monomial& x, const Monomial& y) {
  long dx = monomial_degree(x), dy = monomial_degree(y);
  if (dx != dy) return dx < dy;
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), generator_less);
}

std::string monomial_str(const Monomial& m, const LieAlgebraData& L) {
  if (m.empty()) return "1";
  std::string s;
  for (const auto& g : m) {
    if (!s.empty()) s += " ";
    s += L.basis_names[g.index] + "(-" + std::to_string(g.n) + ")";
  }
  return s;
}

std::vector<Monomial> pbw_monomials(long depth, size_t dim) {
  if (depth < 0) throw Error(ErrorCode::PreconditionViolation, "depth must be nonnegative");
  std::vector<Generator> gens;
  for (long n = depth; n >= 1; --n)
    for (size_t i = 0; i < dim; ++i) gens.push_back({n, i});
  std::vector<Monomial> out;
  Monomial cur;
  std::function<void(size_t, long)> rec = [&](size_t start, long budget) {
    out.push_back(cur);
    for (size_t g = start; g < gens.size(); ++g) {
      if (gens[g].n > budget) continue;
      cur.push_back(gens[g]);
      rec(g, budget - gens[g].n);
      cur.pop_back();
    }
  };
  rec(0, depth);
  std::sort(out.begin(), out.end(), monomial_less);
  return out;
}

}  // namespace affrep
