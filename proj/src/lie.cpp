#include "affrep/lie.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "affrep/error.hpp"

namespace affrep {

Rational LieAlgebraData::pair(const Vec& a, const Vec& b) const {
  Rational r(0);
  for (size_t i = 0; i < dim; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (size_t j = 0; j < dim; ++j)
      if (sgn(b[j]) != 0) r += a[i] * form(i, j) * b[j];
  }
  return r;
}

std::optional<size_t> LieAlgebraData::index_of(const std::string& n) const {
  for (size_t i = 0; i < basis_names.size(); ++i)
    if (basis_names[i] == n) return i;
  return std::nullopt;
}

Vec bracket(const LieAlgebraData& L, const Vec& a, const Vec& b) {
  if (a.size() != L.dim || b.size() != L.dim)
    throw Error(ErrorCode::DimensionMismatch, "bracket operands must have length " + std::to_string(L.dim));
  Vec r(L.dim);
  for (size_t i = 0; i < L.dim; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (size_t j = 0; j < L.dim; ++j) {
      if (sgn(b[j]) == 0) continue;
      Rational c = a[i] * b[j];
      axpy(r, c, L.sc[i][j]);
    }
  }
  return r;
}

Matrix ad_matrix(const LieAlgebraData& L, const Vec& a) {
  Matrix m(L.dim, L.dim);
  for (size_t j = 0; j < L.dim; ++j) {
    Vec col = bracket(L, a, L.basis(j));
    for (size_t i = 0; i < L.dim; ++i) m(i, j) = col[i];
  }
  return m;
}

static Vec flatten(const Matrix& m) { return m.a; }

LieAlgebraData from_matrix_basis(std::string name, std::vector<std::string> names, const std::vector<Matrix>& mats,
                                 std::vector<size_t> cartan, const std::vector<size_t>& positive, size_t theta_vector) {
  LieAlgebraData L;
  L.name = std::move(name);
  L.dim = mats.size();
  L.basis_names = std::move(names);
  L.cartan_indices = std::move(cartan);
  L.defining = mats;
  L.claimed_simple = true;
  size_t n = mats[0].rows;
  std::vector<Vec> flat;
  for (const auto& m : mats) flat.push_back(flatten(m));
  Matrix B = Matrix::from_cols(flat, n * n);
  L.sc.assign(L.dim, std::vector<Vec>(L.dim));
  for (size_t i = 0; i < L.dim; ++i)
    for (size_t j = 0; j < L.dim; ++j) {
      auto x = solve(B, flatten(commutator(mats[i], mats[j])));
      if (!x) throw Error(ErrorCode::PreconditionViolation, "matrix basis not closed under bracket");
      L.sc[i][j] = *x;
    }
  L.form = Matrix(L.dim, L.dim);
  for (size_t i = 0; i < L.dim; ++i)
    for (size_t j = 0; j < L.dim; ++j) {
      Matrix p = mats[i] * mats[j];
      Rational tr(0);
      for (size_t k = 0; k < n; ++k) tr += p(k, k);
      L.form(i, j) = tr;
    }
  RootDecomposition rd = root_decomposition(L);
  std::set<size_t> pos(positive.begin(), positive.end());
  for (auto& r : rd.roots) {
    r.positive = pos.count(r.space[0]) > 0;
  }
  // Simple: positive and not a sum of two positive roots.
  for (auto& r : rd.roots) {
    if (!r.positive) continue;
    bool decomposable = false;
    for (const auto& a : rd.roots)
      for (const auto& b : rd.roots)
        if (a.positive && b.positive && add(a.functional, b.functional) == r.functional) decomposable = true;
    r.simple = !decomposable;
  }
  L.roots = rd.roots;
  for (size_t k = 0; k < L.roots.size(); ++k)
    if (std::find(L.roots[k].space.begin(), L.roots[k].space.end(), theta_vector) != L.roots[k].space.end())
      L.theta_index = k;
  return L;
}

static Matrix unit_matrix(size_t n, size_t i, size_t j) {
  Matrix m(n, n);
  m(i, j) = 1;
  return m;
}

AlgebraPtr build_sl2() {
  Matrix e = unit_matrix(2, 0, 1), f = unit_matrix(2, 1, 0);
  Matrix h = unit_matrix(2, 0, 0) - unit_matrix(2, 1, 1);
  return std::make_shared<LieAlgebraData>(from_matrix_basis("sl2", {"e", "f", "h"}, {e, f, h}, {2}, {0}, 0));
}

AlgebraPtr build_sl3() {
  auto E = [](size_t i, size_t j) { return unit_matrix(3, i, j); };
  std::vector<Matrix> mats = {E(0, 1), E(1, 2), E(0, 2), E(1, 0), E(2, 1), E(2, 0),
                              E(0, 0) - E(1, 1), E(1, 1) - E(2, 2)};
  return std::make_shared<LieAlgebraData>(from_matrix_basis(
      "sl3", {"e1", "e2", "e3", "f1", "f2", "f3", "h1", "h2"}, mats, {6, 7}, {0, 1, 2}, 2));
}

static Rational theta_norm(const LieAlgebraData& L, bool& ok) {
  ok = false;
  const auto& th = L.roots.at(*L.theta_index);
  size_t r = L.cartan_indices.size();
  Matrix G(r, r);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) G(i, j) = L.form(L.cartan_indices[i], L.cartan_indices[j]);
  auto Gi = inverse(G);
  if (!Gi) return 0;
  ok = true;
  Vec y = (*Gi) * th.functional;
  Rational s(0);
  for (size_t i = 0; i < r; ++i) s += th.functional[i] * y[i];
  return s;
}

AlgebraReport validate_algebra(const LieAlgebraData& L) {
  AlgebraReport rep;
  auto fail = [&](std::string check, std::vector<size_t> w, std::string detail) {
    rep.passed = false;
    rep.check = std::move(check);
    rep.witness = std::move(w);
    rep.detail = std::move(detail);
    return rep;
  };
  size_t n = L.dim;
  if (n == 0 || L.sc.size() != n || L.form.rows != n || L.form.cols != n)
    return fail("shape", {}, "structure constants or form have the wrong size");
  for (size_t i = 0; i < n; ++i) {
    if (L.sc[i].size() != n) return fail("shape", {i}, "structure constant row has the wrong size");
    for (size_t j = 0; j < n; ++j)
      if (L.sc[i][j].size() != n) return fail("shape", {i, j}, "structure constant vector has the wrong size");
  }
  for (size_t c : L.cartan_indices)
    if (c >= n) return fail("shape", {c}, "cartan index out of range");
  for (const auto& r : L.roots) {
    if (r.functional.size() != L.cartan_indices.size()) return fail("shape", {}, "root functional length");
    for (size_t s : r.space)
      if (s >= n) return fail("shape", {s}, "root space index out of range");
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j)
      if (add(L.sc[i][j], L.sc[j][i]) != zeros(n)) return fail("antisymmetry", {i, j}, "[b_i,b_j] != -[b_j,b_i]");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k) {
        Vec bi = L.basis(i), bj = L.basis(j), bk = L.basis(k);
        Vec s = add(add(bracket(L, bi, L.sc[j][k]), bracket(L, bj, L.sc[k][i])), bracket(L, bk, L.sc[i][j]));
        if (!is_zero(s)) return fail("jacobi", {i, j, k}, "Jacobi identity fails");
      }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (L.form(i, j) != L.form(j, i)) return fail("form_symmetry", {i, j}, "form not symmetric");
  if (rank(L.form) != n) return fail("form_nondegenerate", {}, "form is degenerate");
  if (!L.roots.empty() || L.theta_index) {
    if (!L.theta_index || *L.theta_index >= L.roots.size())
      return fail("normalization", {}, "highest root not designated");
    bool ok = false;
    Rational t = theta_norm(L, ok);
    if (!ok) return fail("normalization", {}, "form degenerate on the Cartan subalgebra");
    if (t != 2)
      return fail("normalization", {*L.theta_index}, "<theta,theta> = " + to_string(t) + ", expected 2");
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        Rational lhs = L.pair(L.sc[i][j], L.basis(k));
        Rational rhs = L.pair(L.basis(i), L.sc[j][k]);
        if (lhs != rhs) return fail("invariance", {i, j, k}, "<[a,b],c> != <a,[b,c]>");
      }
  for (size_t a = 0; a < L.cartan_indices.size(); ++a)
    for (size_t b = 0; b < L.cartan_indices.size(); ++b)
      if (!is_zero(L.sc[L.cartan_indices[a]][L.cartan_indices[b]]))
        return fail("cartan_abelian", {L.cartan_indices[a], L.cartan_indices[b]}, "Cartan elements do not commute");
  for (const auto& r : L.roots)
    for (size_t s : r.space)
      for (size_t a = 0; a < L.cartan_indices.size(); ++a) {
        Vec want = scale(L.basis(s), r.functional[a]);
        if (L.sc[L.cartan_indices[a]][s] != want)
          return fail("root_space", {L.cartan_indices[a], s}, "declared root vector is not an eigenvector");
      }
  return rep;
}

RootDecomposition root_decomposition(const LieAlgebraData& L) {
  RootDecomposition out;
  out.cartan = L.cartan_indices;
  std::set<size_t> cset(L.cartan_indices.begin(), L.cartan_indices.end());
  for (size_t a : L.cartan_indices)
    for (size_t b : L.cartan_indices)
      if (!is_zero(L.sc[a][b])) throw Error(ErrorCode::NotDiagonalizable, "Cartan subalgebra is not abelian");
  std::vector<RootEntry> found;
  for (size_t k = 0; k < L.dim; ++k) {
    if (cset.count(k)) continue;
    Vec fn(L.cartan_indices.size());
    for (size_t a = 0; a < L.cartan_indices.size(); ++a) {
      const Vec& img = L.sc[L.cartan_indices[a]][k];
      for (size_t i = 0; i < L.dim; ++i)
        if (i != k && sgn(img[i]) != 0)
          throw Error(ErrorCode::NotDiagonalizable,
                      "basis vector " + std::to_string(k) + " is not a weight vector for the Cartan subalgebra");
      fn[a] = img[k];
    }
    if (is_zero(fn))
      throw Error(ErrorCode::NotDiagonalizable, "basis vector " + std::to_string(k) + " has weight zero outside h");
    auto it = std::find_if(found.begin(), found.end(), [&](const RootEntry& r) { return r.functional == fn; });
    if (it == found.end()) found.push_back(RootEntry{fn, {k}, false, false});
    else it->space.push_back(k);
  }
  // Declared data must agree up to order.
  if (found.size() != L.roots.size()) out.matches_declared = false;
  for (auto& r : found) {
    auto it = std::find_if(L.roots.begin(), L.roots.end(), [&](const RootEntry& d) { return d.functional == r.functional; });
    if (it == L.roots.end() || it->space != r.space) {
      out.matches_declared = false;
    } else {
      r.positive = it->positive;
      r.simple = it->simple;
    }
  }
  out.roots = std::move(found);
  return out;
}

SL2Triple sl2_triple(const LieAlgebraData& L, size_t root) {
  const RootEntry& a = L.roots.at(root);
  Vec neg = scale(a.functional, -1);
  auto it = std::find_if(L.roots.begin(), L.roots.end(), [&](const RootEntry& r) { return r.functional == neg; });
  if (it == L.roots.end()) throw Error(ErrorCode::NotSimple, "root has no negative partner");
  Vec e = L.basis(a.space.at(0)), f = L.basis(it->space.at(0));
  Vec h = bracket(L, e, f);
  Vec he = bracket(L, h, e);
  Rational t = he[a.space[0]];
  if (sgn(t) == 0) throw Error(ErrorCode::NotSimple, "[e,f] does not act on e");
  Rational c = Rational(2) / t;
  f = scale(f, c);
  h = scale(h, c);
  return {e, f, h};
}

std::vector<Vec> nilpotent_basis(const LieAlgebraData& L) {
  if (L.roots.empty() || !L.claimed_simple) throw Error(ErrorCode::NotSimple, "root data absent or algebra not simple");
  std::vector<SL2Triple> trip;
  std::vector<size_t> simple;
  for (size_t k = 0; k < L.roots.size(); ++k)
    if (L.roots[k].positive) {
      trip.push_back(sl2_triple(L, k));
      if (L.roots[k].simple) simple.push_back(trip.size() - 1);
    }
  std::vector<Vec> out;
  for (const auto& t : trip) out.push_back(t.e);
  for (const auto& t : trip) out.push_back(t.f);
  for (size_t s : simple) out.push_back(sub(add(trip[s].f, trip[s].h), trip[s].e));
  return out;
}

std::optional<size_t> ad_nilpotency_index(const LieAlgebraData& L, const Vec& a) {
  Matrix ad = ad_matrix(L, a);
  Matrix p = ad;
  for (size_t k = 1; k <= L.dim + 1; ++k) {
    if (p.is_zero()) return k;
    p = p * ad;
  }
  return std::nullopt;
}

Vec theta_coroot(const LieAlgebraData& L) {
  if (!L.theta_index) throw Error(ErrorCode::NotSimple, "no highest root");
  return sl2_triple(L, *L.theta_index).h;
}

Matrix FiniteGModule::action(const Vec& a) const {
  Matrix m(dim, dim);
  for (size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0) m += a[i] * rho[i];
  return m;
}

bool FiniteGModule::is_trivial() const {
  return std::all_of(rho.begin(), rho.end(), [](const Matrix& m) { return m.is_zero(); });
}

bool FiniteGModule::respects_bracket() const {
  for (size_t i = 0; i < alg->dim; ++i)
    for (size_t j = 0; j < alg->dim; ++j)
      if (action(alg->sc[i][j]) != commutator(rho[i], rho[j])) return false;
  return true;
}

FiniteGModule trivial_module(AlgebraPtr alg, size_t dim) {
  FiniteGModule m{alg, dim, {}};
  m.rho.assign(alg->dim, Matrix(dim, dim));
  return m;
}

FiniteGModule sl2_irrep(AlgebraPtr alg, size_t d) {
  if (alg->name != "sl2") throw Error(ErrorCode::PreconditionViolation, "sl2_irrep needs the sl2 builder");
  if (d == 0) throw Error(ErrorCode::PreconditionViolation, "dimension must be positive");
  FiniteGModule m = trivial_module(alg, d);
  long D = static_cast<long>(d);
  // v_i has h-weight d-1-2i; f v_i = v_{i+1}; e v_i = i(d-i) v_{i-1}.
  for (long i = 0; i < D; ++i) {
    m.rho[2](i, i) = D - 1 - 2 * i;
    if (i + 1 < D) m.rho[1](i + 1, i) = 1;
    if (i > 0) m.rho[0](i - 1, i) = i * (D - i);
  }
  return m;
}

FiniteGModule tensor(const FiniteGModule& a, const FiniteGModule& b) {
  FiniteGModule m{a.alg, a.dim * b.dim, {}};
  Matrix Ia = Matrix::identity(a.dim), Ib = Matrix::identity(b.dim);
  for (size_t i = 0; i < a.alg->dim; ++i) m.rho.push_back(kron(a.rho[i], Ib) + kron(Ia, b.rho[i]));
  return m;
}

FiniteGModule direct_sum(const FiniteGModule& a, const FiniteGModule& b) {
  FiniteGModule m{a.alg, a.dim + b.dim, {}};
  for (size_t i = 0; i < a.alg->dim; ++i) {
    Matrix r(m.dim, m.dim);
    for (size_t x = 0; x < a.dim; ++x)
      for (size_t y = 0; y < a.dim; ++y) r(x, y) = a.rho[i](x, y);
    for (size_t x = 0; x < b.dim; ++x)
      for (size_t y = 0; y < b.dim; ++y) r(a.dim + x, a.dim + y) = b.rho[i](x, y);
    m.rho.push_back(std::move(r));
  }
  return m;
}

FiniteGModule conjugate(const FiniteGModule& m, const Matrix& P) {
  auto Pi = inverse(P);
  if (!Pi) throw Error(ErrorCode::PreconditionViolation, "conjugating matrix is singular");
  FiniteGModule r{m.alg, m.dim, {}};
  for (const auto& x : m.rho) r.rho.push_back(P * x * *Pi);
  return r;
}

FiniteGModule restrict_to(const FiniteGModule& m, const std::vector<Vec>& basis) {
  FiniteGModule r = trivial_module(m.alg, basis.size());
  Matrix B = Matrix::from_cols(basis, m.dim);
  for (size_t i = 0; i < m.alg->dim; ++i)
    for (size_t j = 0; j < basis.size(); ++j) {
      auto x = solve(B, m.rho[i] * basis[j]);
      if (!x) throw Error(ErrorCode::PreconditionViolation, "subspace is not invariant");
      for (size_t k = 0; k < basis.size(); ++k) r.rho[i](k, j) = (*x)[k];
    }
  return r;
}

std::vector<Vec> generate_submodule(const std::vector<Matrix>& ops, const std::vector<Vec>& seeds, size_t dim) {
  Echelon ech(dim);
  std::vector<Vec> basis;
  std::vector<Vec> queue;
  for (const auto& s : seeds)
    if (ech.insert(s)) {
      basis.push_back(s);
      queue.push_back(s);
    }
  for (size_t q = 0; q < queue.size(); ++q) {
    if (ech.rank() == dim) break;
    for (const auto& op : ops) {
      Vec w = op * queue[q];
      if (ech.insert(w)) {
        basis.push_back(w);
        queue.push_back(std::move(w));
      }
    }
  }
  return basis;
}

static long gershgorin(const Matrix& m) {
  Rational best(0);
  for (size_t i = 0; i < m.rows; ++i) {
    Rational s(0);
    for (size_t j = 0; j < m.cols; ++j) s += abs(m(i, j));
    if (s > best) best = s;
  }
  mpz_class c = best.get_num() / best.get_den() + 1;
  return c.get_si();
}

std::vector<std::pair<std::vector<Rational>, std::vector<Vec>>> weight_decompose(const std::vector<Matrix>& hs,
                                                                                 const std::vector<Vec>& subspace) {
  using Part = std::pair<std::vector<Rational>, std::vector<Vec>>;
  std::vector<Part> parts;
  if (subspace.empty()) return parts;
  parts.push_back({{}, subspace});
  for (const auto& H : hs) {
    long R = gershgorin(H);
    std::vector<Part> next;
    for (const auto& [wt, basis] : parts) {
      size_t k = basis.size(), n = basis[0].size();
      Matrix B = Matrix::from_cols(basis, n);
      Matrix Hr(k, k);
      for (size_t j = 0; j < k; ++j) {
        auto x = solve(B, H * basis[j]);
        if (!x) throw Error(ErrorCode::NotDiagonalizable, "subspace not invariant under a Cartan operator");
        for (size_t i = 0; i < k; ++i) Hr(i, j) = (*x)[i];
      }
      size_t covered = 0;
      for (long lam = R; lam >= -R && covered < k; --lam) {
        Matrix S = Hr - Rational(lam) * Matrix::identity(k);
        auto ker = nullspace(S);
        if (ker.empty()) continue;
        std::vector<Vec> vecs;
        for (const auto& c : ker) vecs.push_back(B * c);
        std::vector<Rational> w = wt;
        w.push_back(lam);
        covered += vecs.size();
        next.push_back({std::move(w), std::move(vecs)});
      }
      if (covered != k) throw Error(ErrorCode::NotDiagonalizable, "Cartan operator has non-integer eigenvalues");
    }
    parts = std::move(next);
  }
  return parts;
}

std::vector<std::pair<std::vector<Rational>, std::vector<Vec>>> highest_weight_vectors(const FiniteGModule& m) {
  const LieAlgebraData& L = *m.alg;
  std::vector<Matrix> raise;
  for (size_t k = 0; k < L.roots.size(); ++k)
    if (L.roots[k].positive && L.roots[k].simple) raise.push_back(m.action(sl2_triple(L, k).e));
  auto ker = joint_kernel(raise, m.dim);
  std::vector<Matrix> hs;
  for (size_t c : L.cartan_indices) hs.push_back(m.rho[c]);
  return weight_decompose(hs, ker);
}

FiniteGModule irreducible_module(AlgebraPtr alg, const std::vector<long>& hw) {
  if (hw.size() != alg->cartan_indices.size())
    throw Error(ErrorCode::DimensionMismatch, "highest weight length differs from the rank");
  for (long x : hw)
    if (x < 0) throw Error(ErrorCode::PreconditionViolation, "highest weight must be dominant");
  if (alg->name == "sl2") return sl2_irrep(alg, static_cast<size_t>(hw[0] + 1));
  if (alg->defining.empty() || hw.size() != 2)
    throw Error(ErrorCode::PreconditionViolation, "irreducible_module supports sl2 and rank-2 matrix algebras");
  // L(a,b) sits inside V^{a} (x) V*^{b}, generated by the product of highest-weight vectors.
  FiniteGModule V{alg, alg->defining[0].rows, alg->defining};
  FiniteGModule Vd{alg, V.dim, {}};
  for (const auto& x : V.rho) Vd.rho.push_back(Rational(-1) * x.transpose());
  auto top = [](const FiniteGModule& M) {
    auto h = highest_weight_vectors(M);
    return h.at(0).second.at(0);
  };
  FiniteGModule big = trivial_module(alg, 1);
  Vec v{Rational(1)};
  for (long i = 0; i < hw[0]; ++i) {
    Vec t = top(V);
    Vec nv(v.size() * t.size());
    for (size_t a = 0; a < v.size(); ++a)
      for (size_t b = 0; b < t.size(); ++b) nv[a * t.size() + b] = v[a] * t[b];
    big = tensor(big, V);
    v = std::move(nv);
  }
  for (long i = 0; i < hw[1]; ++i) {
    Vec t = top(Vd);
    Vec nv(v.size() * t.size());
    for (size_t a = 0; a < v.size(); ++a)
      for (size_t b = 0; b < t.size(); ++b) nv[a * t.size() + b] = v[a] * t[b];
    big = tensor(big, Vd);
    v = std::move(nv);
  }
  auto basis = generate_submodule(big.rho, {v}, big.dim);
  return restrict_to(big, basis);
}

}  // namespace affrep
