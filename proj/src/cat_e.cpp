#include "affrep/cat_e.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

#include "affrep/error.hpp"
#include "modp.hpp"

namespace affrep {

EvaluationModule EvaluationModule::make(AlgebraPtr alg, std::vector<EvalFactor> factors) {
  EvaluationModule M;
  M.alg = alg;
  for (auto& f : factors) {
    if (sgn(f.z) == 0) throw Error(ErrorCode::ZeroEvaluationPoint, "evaluation point must be nonzero");
    if (f.module.alg.get() != alg.get() && f.module.alg->name != alg->name)
      throw Error(ErrorCode::DimensionMismatch, "factor over a different algebra");
    if (f.module.dim == 1 && f.module.is_trivial()) {
      M.warnings.push_back("dropped one-dimensional trivial factor at z=" + to_string(f.z));
      continue;
    }
    M.dim *= f.module.dim;
    M.factors.push_back(std::move(f));
  }
  return M;
}

Matrix EvaluationModule::embedded(size_t i, const Vec& a) const {
  Matrix m = Matrix::identity(1);
  for (size_t k = 0; k < factors.size(); ++k)
    m = kron(m, k == i ? factors[k].module.action(a) : Matrix::identity(factors[k].module.dim));
  return m;
}

std::vector<Rational> EvaluationModule::points() const {
  std::vector<Rational> zs;
  for (const auto& f : factors) zs.push_back(f.z);
  return zs;
}

bool EvaluationModule::distinct_points() const {
  auto zs = points();
  std::sort(zs.begin(), zs.end());
  return std::adjacent_find(zs.begin(), zs.end()) == zs.end();
}

static Rational delta_mode_coeff(const Rational& z, long j, long n) {
  // coefficient of x^{-n-1} in (1/j!)(d/dx)^j x^{-1}delta(z/x)
  long k = n - j;
  return pow(z, k) * binom(-k - 1, j);
}

Matrix EModule::mode(size_t i, long n) const {
  Matrix m(dim, dim);
  for (const auto& t : actions.at(i)) {
    Rational c = delta_mode_coeff(t.z, t.j, n);
    if (sgn(c) != 0) m += c * t.coefficient;
  }
  return m;
}

Matrix EModule::mode(const Vec& a, long n) const {
  Matrix m(dim, dim);
  for (size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0) m += a[i] * mode(i, n);
  return m;
}

SeriesWindow<Matrix> EModule::field(size_t i, long lo, long hi) const {
  SeriesWindow<Matrix> s(lo, hi, Matrix(dim, dim));
  for (long e = lo; e <= hi; ++e) s.at(e) = mode(i, -e - 1);
  return s;
}

EModule to_emodule(const EvaluationModule& M) {
  EModule E{M.alg, M.dim, {}};
  for (size_t a = 0; a < M.alg->dim; ++a) {
    EvalAction act;
    for (size_t i = 0; i < M.factors.size(); ++i) {
      Matrix A = M.embedded(i, M.alg->basis(a));
      if (!A.is_zero()) act.push_back({M.factors[i].z, 0, std::move(A)});
    }
    E.actions.push_back(std::move(act));
  }
  return E;
}

Matrix evaluation_action(const EvaluationModule& M, const Vec& a, long n) {
  Matrix m(M.dim, M.dim);
  for (size_t i = 0; i < M.factors.size(); ++i) m += pow(M.factors[i].z, n) * M.embedded(i, a);
  return m;
}

/// For each point z: 1 + the largest derivative order with a nonzero combined coefficient.
static std::vector<std::pair<Rational, long>> annihilator_roots(const EModule& M) {
  std::map<Rational, long> mult;
  for (const auto& act : M.actions) {
    std::map<std::pair<Rational, long>, Matrix> grouped;
    for (const auto& t : act) {
      auto it = grouped.find({t.z, t.j});
      if (it == grouped.end()) grouped.emplace(std::make_pair(t.z, t.j), t.coefficient);
      else it->second += t.coefficient;
    }
    for (const auto& [key, m] : grouped)
      if (!m.is_zero()) mult[key.first] = std::max(mult[key.first], key.second + 1);
  }
  return {mult.begin(), mult.end()};
}

LaurentPoly annihilator_poly(const EModule& M) {
  LaurentPoly q(1);
  for (const auto& [z, k] : annihilator_roots(M))
    for (long i = 0; i < k; ++i) q = q * LaurentPoly::linear_root(z);
  return q;
}

LaurentPoly annihilator_poly(const EvaluationModule& M) { return annihilator_poly(to_emodule(M)); }

bool annihilates(const EModule& M, const LaurentPoly& q, long lo, long hi) {
  for (size_t i = 0; i < M.alg->dim; ++i) {
    auto prod = multiply(q, M.field(i, lo, hi));
    for (const auto& c : prod.c)
      if (!c.is_zero()) return false;
  }
  return true;
}

LaurentPoly lagrange_projector(size_t i, const std::vector<Rational>& zs) {
  if (i >= zs.size()) throw Error(ErrorCode::DimensionMismatch, "projector index out of range");
  LaurentPoly p(1);
  for (size_t j = 0; j < zs.size(); ++j) {
    if (j == i) continue;
    Rational den = zs[i] - zs[j];
    if (sgn(den) == 0) throw Error(ErrorCode::RepeatedPoint, "points must be distinct");
    p = p * ((1 / den) * LaurentPoly::linear_root(zs[j]));
  }
  for (size_t j = 0; j < zs.size(); ++j)
    for (size_t k = j + 1; k < zs.size(); ++k)
      if (zs[j] == zs[k]) throw Error(ErrorCode::RepeatedPoint, "points must be distinct");
  return p;
}

static Matrix residue_against(const LaurentPoly& g, const std::function<Matrix(long)>& mode_of, size_t dim) {
  // Res_x g(x) a(x): coefficient of x^{-1} needs a(x) on [-1 - maxexp, -1 - minexp].
  long lo = -1 - g.max_exp(), hi = -1 - g.min_exp();
  SeriesWindow<Matrix> s(lo, hi, Matrix(dim, dim));
  for (long e = lo; e <= hi; ++e) s.at(e) = mode_of(-e - 1);
  return residue(multiply(g, s));
}

Matrix component_action_extract(const EvaluationModule& M, size_t i, const Vec& a, long n) {
  LaurentPoly g = LaurentPoly::monomial(n) * lagrange_projector(i, M.points());
  return residue_against(g, [&](long m) { return evaluation_action(M, a, m); }, M.dim);
}

const char* irreducibility_name(Irreducibility k) {
  switch (k) {
    case Irreducibility::AbsolutelyIrreducible: return "AbsolutelyIrreducible";
    case Irreducibility::Reducible: return "Reducible";
    case Irreducibility::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

using namespace modp;

using ModMat = std::vector<uint64_t>;

/// Scales each generator to integer entries; the generated algebra is unchanged up to scalars.
std::vector<ModMat> reduce_mod(const std::vector<Matrix>& gens) {
  std::vector<ModMat> out;
  for (const auto& g : gens) {
    mpz_class l = 1;
    for (const auto& q : g.a) l = lcm(l, mpz_class(q.get_den()));
    ModMat m(g.a.size());
    for (size_t i = 0; i < g.a.size(); ++i) m[i] = modp::reduce(mpz_class(g.a[i].get_num() * (l / g.a[i].get_den())));
    out.push_back(std::move(m));
  }
  return out;
}

/// Rank of the algebra generated modulo the prime. Never exceeds the rational rank.
size_t modular_closure_rank(const std::vector<Matrix>& gens, size_t n) {
  auto g = reduce_mod(gens);
  size_t N = n * n;
  std::vector<ModMat> rows;
  std::vector<size_t> piv;
  std::vector<long> pivot_of(N, -1);
  auto insert = [&](ModMat v) {
    for (size_t r = 0; r < rows.size(); ++r) {
      uint64_t c = v[piv[r]];
      if (!c) continue;
      for (size_t k = 0; k < N; ++k)
        if (rows[r][k]) v[k] = submod(v[k], mulmod(c, rows[r][k]));
    }
    size_t p = 0;
    while (p < N && v[p] == 0) ++p;
    if (p == N) return false;
    uint64_t inv = powmod(v[p], kPrime - 2);
    for (auto& x : v) x = mulmod(x, inv);
    for (auto& row : rows) {
      uint64_t c = row[p];
      if (!c) continue;
      for (size_t k = 0; k < N; ++k)
        if (v[k]) row[k] = submod(row[k], mulmod(c, v[k]));
    }
    pivot_of[p] = static_cast<long>(rows.size());
    rows.push_back(v);
    piv.push_back(p);
    return true;
  };
  std::vector<ModMat> queue;
  ModMat id(N, 0);
  for (size_t i = 0; i < n; ++i) id[i * n + i] = 1;
  if (insert(id)) queue.push_back(id);
  for (const auto& m : g)
    if (insert(m)) queue.push_back(m);
  for (size_t q = 0; q < queue.size() && rows.size() < N; ++q)
    for (const auto& G : g) {
      ModMat prod(N, 0);
      for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
          uint64_t a = G[i * n + k];
          if (!a) continue;
          for (size_t j = 0; j < n; ++j)
            if (queue[q][k * n + j]) prod[i * n + j] = addmod(prod[i * n + j], mulmod(a, queue[q][k * n + j]));
        }
      if (insert(prod)) queue.push_back(std::move(prod));
      if (rows.size() == N) break;
    }
  return rows.size();
}

std::vector<Vec> cyclic_span(const std::vector<Matrix>& basis, const Vec& v, size_t n) {
  std::vector<Vec> imgs;
  for (const auto& X : basis) imgs.push_back(X * v);
  return independent_subset(imgs, n);
}

bool invariant(const std::vector<Matrix>& gens, const std::vector<Vec>& sub, size_t n) {
  Echelon e(n);
  for (const auto& v : sub) e.insert(v);
  for (const auto& G : gens)
    for (const auto& v : sub)
      if (!e.contains(G * v)) return false;
  return true;
}

}  // namespace

BurnsideResult burnside_closure(const std::vector<Matrix>& gens, size_t n) {
  BurnsideResult res;
  if (n == 0) return res;
  if (modular_closure_rank(gens, n) == n * n) {
    res.kind = Irreducibility::AbsolutelyIrreducible;
    res.algebra_dim = n * n;
    return res;
  }
  Echelon ech(n * n);
  std::vector<Matrix> basis, queue;
  auto push = [&](const Matrix& m) {
    if (ech.insert(m.a)) {
      basis.push_back(m);
      queue.push_back(m);
    }
  };
  push(Matrix::identity(n));
  for (const auto& g : gens) push(g);
  for (size_t q = 0; q < queue.size() && ech.rank() < n * n; ++q)
    for (const auto& g : gens) push(g * queue[q]);
  res.algebra_dim = ech.rank();
  if (res.algebra_dim == n * n) {
    res.kind = Irreducibility::AbsolutelyIrreducible;
    return res;
  }
  auto accept = [&](std::vector<Vec> sub) {
    if (sub.empty() || sub.size() >= n || !invariant(gens, sub, n)) return false;
    res.kind = Irreducibility::Reducible;
    res.witness = std::move(sub);
    return true;
  };
  std::vector<Matrix> tbasis;
  for (const auto& X : basis) tbasis.push_back(X.transpose());
  auto try_vector = [&](const Vec& v) {
    if (is_zero(v)) return false;
    if (accept(cyclic_span(basis, v, n))) return true;
    auto dual = cyclic_span(tbasis, v, n);
    if (!dual.empty() && dual.size() < n) return accept(nullspace(Matrix::from_rows(dual, n)));
    return false;
  };
  for (size_t k = 0; k < n; ++k)
    if (try_vector(unit(n, k))) return res;
  uint64_t state = 0x9e3779b97f4a7c15ULL;
  for (int t = 0; t < 8; ++t) {
    Vec v(n);
    for (auto& x : v) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      x = static_cast<long>((state >> 33) % 7) - 3;
    }
    if (try_vector(v)) return res;
  }
  for (size_t b = 0; b < basis.size() && b < 64; ++b)
    for (const auto& v : nullspace(basis[b]))
      if (try_vector(v)) return res;
  res.kind = Irreducibility::Inconclusive;
  return res;
}

std::vector<Matrix> closure_generators(const EModule& M) {
  long r = std::max<long>(2, annihilator_poly(M).degree());
  std::vector<Matrix> gens;
  for (long n = 0; n < r; ++n)
    for (size_t i = 0; i < M.alg->dim; ++i) gens.push_back(M.mode(i, n));
  return gens;
}

BurnsideResult burnside_irreducible(const EModule& M) { return burnside_closure(closure_generators(M), M.dim); }

BurnsideResult burnside_irreducible(const EvaluationModule& M) { return burnside_irreducible(to_emodule(M)); }

static std::vector<Rational> factor_highest_weight(const FiniteGModule& U) {
  auto hw = highest_weight_vectors(U);
  if (hw.size() != 1 || hw[0].second.size() != 1)
    throw Error(ErrorCode::PreconditionViolation, "factor is not irreducible");
  return hw[0].first;
}

IsoResult is_isomorphic_eval(const EvaluationModule& A, const EvaluationModule& B) {
  for (const auto* M : {&A, &B}) {
    if (!M->distinct_points()) throw Error(ErrorCode::PreconditionViolation, "evaluation points repeat");
    for (const auto& f : M->factors)
      if (f.module.is_trivial()) throw Error(ErrorCode::PreconditionViolation, "trivial factor");
  }
  IsoResult r;
  if (!(annihilator_poly(A) == annihilator_poly(B))) {
    r.reason = "annihilator roots differ";
    return r;
  }
  for (size_t i = 0; i < A.factors.size(); ++i) {
    size_t j = 0;
    while (j < B.factors.size() && B.factors[j].z != A.factors[i].z) ++j;
    if (j == B.factors.size()) {
      r.reason = "point " + to_string(A.factors[i].z) + " missing";
      r.permutation.clear();
      return r;
    }
    if (A.factors[i].module.dim != B.factors[j].module.dim ||
        factor_highest_weight(A.factors[i].module) != factor_highest_weight(B.factors[j].module)) {
      r.reason = "factors at z=" + to_string(A.factors[i].z) + " are not isomorphic";
      r.permutation.clear();
      return r;
    }
    r.permutation.push_back(j);
  }
  r.isomorphic = true;
  return r;
}

bool level_zero_residue_identity(const LaurentPoly& p, long lo, long hi) {
  Poly2 pp;
  for (const auto& [e1, c1] : p.terms())
    for (const auto& [e2, c2] : p.terms()) pp[{e1, e2}] += c1 * c2;
  // d/dx2 x2^{-1}delta(x1/x2) is the J = 1 series (1! = 1).
  Series2 prod = multiply(pp, delta2_series(1, lo, hi));
  if (!prod.contains(prod.lo1, -1)) throw Error(ErrorCode::WindowMiss, "x2^{-1} outside the window");
  LaurentPoly want = Rational(-1) * (p * p.derivative());
  for (long e1 = prod.lo1; e1 <= prod.hi1; ++e1)
    if (prod.at(e1, -1) != want.coeff(e1)) return false;
  return true;
}

Matrix central_matrix(const EModule& M) {
  const LieAlgebraData& L = *M.alg;
  for (size_t i = 0; i < L.dim; ++i)
    for (size_t j = 0; j < L.dim; ++j) {
      if (sgn(L.form(i, j)) == 0) continue;
      Matrix c = commutator(M.mode(i, 1), M.mode(j, -1)) - M.mode(L.sc[i][j], 0);
      return (1 / L.form(i, j)) * c;
    }
  throw Error(ErrorCode::PreconditionViolation, "form vanishes identically");
}

LevelZeroReport check_level_zero(const EModule& M, std::optional<LaurentPoly> p) {
  LevelZeroReport rep;
  rep.p = p ? *p : annihilator_poly(M);
  if (rep.p.is_zero()) throw Error(ErrorCode::PreconditionViolation, "p must be nonzero");
  if (!annihilates(M, rep.p, -8, 8)) {
    rep.passed = false;
    rep.detail = "p(x)a(x) != 0";
    return rep;
  }
  if (rep.p.min_exp() == rep.p.max_exp()) {
    // A monomial p forces a(x) = 0, so every a(n) vanishes and k = 0 through the bracket.
    rep.branch = "degree-zero";
    for (size_t i = 0; i < M.alg->dim; ++i)
      for (long n = -3; n <= 3; ++n)
        if (!M.mode(i, n).is_zero()) rep.passed = false;
  } else {
    rep.branch = "residue";
    rep.residue_identity = level_zero_residue_identity(rep.p, -10, 10);
  }
  rep.k_zero = central_matrix(M).is_zero();
  rep.passed = rep.passed && rep.residue_identity && rep.k_zero;
  return rep;
}

static EModule restrict_emodule(const EModule& M, const std::vector<Vec>& basis) {
  EModule R{M.alg, basis.size(), {}};
  Matrix B = Matrix::from_cols(basis, M.dim);
  for (const auto& raw : M.actions) {
    // Only the summed coefficient per (z, j) must preserve the subspace.
    std::map<std::pair<Rational, long>, Matrix> merged;
    for (const auto& t : raw) {
      auto it = merged.find({t.z, t.j});
      if (it == merged.end()) merged.emplace(std::make_pair(t.z, t.j), t.coefficient);
      else it->second += t.coefficient;
    }
    EvalAction act;
    for (auto& [k, m] : merged) act.push_back({k.first, k.second, std::move(m)});
    EvalAction r;
    for (const auto& t : act) {
      Matrix m(basis.size(), basis.size());
      for (size_t j = 0; j < basis.size(); ++j) {
        auto x = solve(B, t.coefficient * basis[j]);
        if (!x) throw Error(ErrorCode::PreconditionViolation, "subspace is not invariant");
        for (size_t i = 0; i < basis.size(); ++i) m(i, j) = (*x)[i];
      }
      r.push_back({t.z, t.j, std::move(m)});
    }
    R.actions.push_back(std::move(r));
  }
  return R;
}

std::vector<Summand> decompose_semisimple(const EModule& M) {
  auto roots = annihilator_roots(M);
  for (const auto& [z, k] : roots)
    if (k > 1) throw Error(ErrorCode::NotMultiplicityFree, "annihilator root " + to_string(z) + " is repeated");
  const LieAlgebraData& L = *M.alg;
  std::vector<Summand> out;
  if (roots.empty()) {
    for (size_t i = 0; i < M.dim; ++i) out.push_back({{unit(M.dim, i)}, Irreducibility::AbsolutelyIrreducible});
    return out;
  }
  std::vector<Rational> zs;
  for (const auto& [z, k] : roots) zs.push_back(z);
  // Component actions B_i(a) = Res p_i(x) a(x).
  std::vector<std::vector<Matrix>> comp(zs.size());
  for (size_t i = 0; i < zs.size(); ++i) {
    LaurentPoly pi = lagrange_projector(i, zs);
    for (size_t a = 0; a < L.dim; ++a)
      comp[i].push_back(residue_against(pi, [&](long n) { return M.mode(a, n); }, M.dim));
  }
  std::vector<Matrix> raise, hs, all;
  for (size_t i = 0; i < zs.size(); ++i) {
    for (size_t k = 0; k < L.roots.size(); ++k)
      if (L.roots[k].positive && L.roots[k].simple) {
        Vec e = sl2_triple(L, k).e;
        Matrix m(M.dim, M.dim);
        for (size_t a = 0; a < L.dim; ++a)
          if (sgn(e[a]) != 0) m += e[a] * comp[i][a];
        raise.push_back(std::move(m));
      }
    for (size_t c : L.cartan_indices) hs.push_back(comp[i][c]);
    for (const auto& m : comp[i]) all.push_back(m);
  }
  auto blocks = weight_decompose(hs, joint_kernel(raise, M.dim));
  Echelon total(M.dim);
  for (const auto& [wt, vecs] : blocks)
    for (const auto& v : vecs) {
      auto sub = generate_submodule(all, {v}, M.dim);
      for (const auto& s : sub)
        if (!total.insert(s)) throw Error(ErrorCode::PreconditionViolation, "summands overlap; module not semisimple");
      Summand S{sub, Irreducibility::Inconclusive};
      S.kind = burnside_irreducible(restrict_emodule(M, sub)).kind;
      out.push_back(std::move(S));
    }
  if (total.rank() != M.dim) throw Error(ErrorCode::PreconditionViolation, "summands do not span; module not semisimple");
  return out;
}

MultiplicityReport min_annihilator_multiplicity_check(const EModule& M) {
  if (burnside_irreducible(M).kind != Irreducibility::AbsolutelyIrreducible)
    throw Error(ErrorCode::PreconditionViolation, "module is not absolutely irreducible");
  MultiplicityReport rep;
  rep.roots = annihilator_roots(M);
  for (const auto& [z, k] : rep.roots)
    if (k != 1) rep.passed = false;
  return rep;
}

}  // namespace affrep
