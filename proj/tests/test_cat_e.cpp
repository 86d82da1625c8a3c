#include "doctest.h"
#include "support.hpp"

#include <algorithm>
#include <set>

#include "affrep/cat_e.hpp"

using namespace affrep;
using testgen::Gen;

namespace {

AlgebraPtr sl2() {
  static AlgebraPtr a = build_sl2();
  return a;
}

EvaluationModule eval(std::vector<std::pair<size_t, Rational>> fs) {
  std::vector<EvalFactor> out;
  for (const auto& [d, z] : fs) out.push_back({sl2_irrep(sl2(), d), z});
  return EvaluationModule::make(sl2(), std::move(out));
}

bool invariant_under(const std::vector<Matrix>& gens, const std::vector<Vec>& sub) {
  for (const auto& g : gens)
    for (const auto& v : sub)
      if (!coordinates(sub, g * v)) return false;
  return true;
}

// U (x) C[t]/(t-1)^2 at level 0: a(n) = a (x) (1 + n N) with N the nilpotent shift.
EModule double_point_module() {
  auto U = sl2_irrep(sl2(), 2);
  Matrix N(2, 2);
  N(1, 0) = 1;
  EModule M{sl2(), 4, {}};
  for (size_t a = 0; a < 3; ++a) {
    EvalAction act;
    act.push_back({1, 0, kron(U.rho[a], Matrix::identity(2))});
    act.push_back({1, 1, Rational(-1) * kron(U.rho[a], N)});
    M.actions.push_back(act);
  }
  return M;
}

std::multiset<std::pair<Rational, size_t>> iso_class(const EvaluationModule& M) {
  std::multiset<std::pair<Rational, size_t>> s;
  for (const auto& f : M.factors) s.insert({f.z, f.module.dim});
  return s;
}

}  // namespace

TEST_CASE("evaluation action") {
  for (Rational z : {Rational(1), Rational(2), Rational(-1, 3)}) {
    auto M = eval({{2, z}});
    CHECK(evaluation_action(M, sl2()->basis(0), 3)(0, 1) == z * z * z);
  }
  auto M = eval({{2, 1}, {3, 2}});
  auto V2 = sl2_irrep(sl2(), 2), V3 = sl2_irrep(sl2(), 3);
  Vec h = sl2()->basis(2);
  CHECK(evaluation_action(M, h, 2) == kron(V2.rho[2], Matrix::identity(3)) + Rational(4) * kron(Matrix::identity(2), V3.rho[2]));
  CHECK(evaluation_action(M, h, 0) == kron(V2.rho[2], Matrix::identity(3)) + kron(Matrix::identity(2), V3.rho[2]));
  CHECK_THROWS_AS(eval({{2, 0}}), Error);
}

TEST_CASE("property: evaluation action respects the bracket at level 0") {
  Gen g(51);
  auto M = eval({{2, 1}, {3, -2}});
  const auto& L = *sl2();
  for (int s = 0; s < 100; ++s) {
    Vec a = g.vec(3), b = g.vec(3);
    long m = g.int_in(-4, 4), n = g.int_in(-4, 4);
    REQUIRE(commutator(evaluation_action(M, a, m), evaluation_action(M, b, n)) ==
            evaluation_action(M, bracket(L, a, b), m + n));
  }
}

TEST_CASE("annihilator polynomial") {
  auto M = eval({{2, 1}, {3, 2}});
  LaurentPoly want = LaurentPoly::linear_root(1) * LaurentPoly::linear_root(2);
  CHECK(annihilator_poly(M) == want);
  EModule E = to_emodule(M);
  CHECK(annihilates(E, want, -6, 6));
  CHECK_FALSE(annihilates(E, LaurentPoly::linear_root(1), -6, 6));
  CHECK(annihilator_poly(eval({{2, 3}})) == LaurentPoly::linear_root(3));

  auto T = EvaluationModule::make(sl2(), {EvalFactor{trivial_module(sl2()), 5}});
  CHECK(T.warnings.size() == 1);
  CHECK(annihilator_poly(T) == LaurentPoly(Rational(1)));

  CHECK(annihilator_poly(double_point_module()) == LaurentPoly::linear_root(1) * LaurentPoly::linear_root(1));
}

TEST_CASE("property: annihilator of a tensor at distinct points") {
  Gen g(52);
  for (int s = 0; s < 15; ++s) {
    size_t r = g.int_in(1, 3);
    std::vector<std::pair<size_t, Rational>> fs;
    std::set<Rational> used;
    LaurentPoly want(Rational(1));
    while (fs.size() < r) {
      Rational z = g.nonzero_q(3);
      if (!used.insert(z).second) continue;
      fs.push_back({static_cast<size_t>(g.int_in(2, 3)), z});
      want = want * LaurentPoly::linear_root(z);
    }
    REQUIRE(annihilator_poly(eval(fs)) == want);
  }
}

TEST_CASE("double-point module is a module") {
  EModule M = double_point_module();
  const auto& L = *sl2();
  for (size_t a = 0; a < 3; ++a)
    for (size_t b = 0; b < 3; ++b)
      for (long m = -3; m <= 3; ++m)
        for (long n = -3; n <= 3; ++n)
          REQUIRE(commutator(M.mode(a, m), M.mode(b, n)) == M.mode(L.sc[a][b], m + n));
}

TEST_CASE("Lagrange projectors") {
  CHECK(lagrange_projector(0, {1, 2}) == LaurentPoly::from_dense({2, -1}));
  CHECK(lagrange_projector(0, {1}) == LaurentPoly(Rational(1)));
  auto p = lagrange_projector(1, {1, 2, 3});
  CHECK(p == Rational(-1) * (LaurentPoly::linear_root(1) * LaurentPoly::linear_root(3)));
  for (long k : {1, 2, 3}) CHECK(p.eval(k) == (k == 2 ? 1 : 0));
  CHECK_THROWS_AS(lagrange_projector(0, {1, 1}), Error);
}

TEST_CASE("component extraction") {
  auto M = eval({{2, 1}, {3, 2}});
  auto V2 = sl2_irrep(sl2(), 2), V3 = sl2_irrep(sl2(), 3);
  const auto& L = *sl2();
  CHECK(component_action_extract(M, 0, L.basis(0), 0) == kron(V2.rho[0], Matrix::identity(3)));
  for (size_t a = 0; a < 3; ++a)
    for (long n = -3; n <= 3; ++n) {
      Matrix c0 = component_action_extract(M, 0, L.basis(a), n);
      Matrix c1 = component_action_extract(M, 1, L.basis(a), n);
      REQUIRE(c0 == pow(Rational(1), n) * M.embedded(0, L.basis(a)));
      REQUIRE(c1 == pow(Rational(2), n) * M.embedded(1, L.basis(a)));
      REQUIRE(c0 + c1 == evaluation_action(M, L.basis(a), n));
      for (size_t b = 0; b < 3; ++b)
        REQUIRE(commutator(c0, component_action_extract(M, 1, L.basis(b), n + 1)).is_zero());
    }
  auto S = eval({{3, 5}});
  CHECK(component_action_extract(S, 0, L.basis(1), 2) == evaluation_action(S, L.basis(1), 2));
}

TEST_CASE("Burnside criterion") {
  auto A = burnside_irreducible(eval({{2, 1}, {3, 2}}));
  CHECK(A.kind == Irreducibility::AbsolutelyIrreducible);
  CHECK(A.algebra_dim == 36);
  auto single = burnside_irreducible(eval({{2, 7}}));
  CHECK(single.kind == Irreducibility::AbsolutelyIrreducible);
  CHECK(single.algebra_dim == 4);

  auto same = eval({{2, 3}, {3, 3}});
  auto R = burnside_irreducible(same);
  REQUIRE(R.kind == Irreducibility::Reducible);
  CHECK((R.witness.size() == 2 || R.witness.size() == 4));
  CHECK(invariant_under(closure_generators(to_emodule(same)), R.witness));

  // a non-absolutely-irreducible rotation generator stays inconclusive over the rationals
  Matrix rot = Matrix::from_rows({{0, -1}, {1, 0}}, 2);
  CHECK(burnside_closure({rot}, 2).kind == Irreducibility::Inconclusive);
  CHECK(burnside_closure({}, 2).kind == Irreducibility::Reducible);
}

TEST_CASE("isomorphism of evaluation modules") {
  auto a = eval({{2, 1}, {3, 2}}), b = eval({{3, 2}, {2, 1}});
  auto r = is_isomorphic_eval(a, b);
  CHECK(r.isomorphic);
  CHECK(r.permutation == std::vector<size_t>{1, 0});
  CHECK_FALSE(is_isomorphic_eval(a, eval({{2, 1}, {3, 3}})).isomorphic);
  CHECK_FALSE(is_isomorphic_eval(eval({{2, 1}}), eval({{3, 1}})).isomorphic);
  CHECK_THROWS_AS(is_isomorphic_eval(eval({{2, 1}, {2, 1}}), a), Error);

  std::vector<EvaluationModule> pool = {eval({{2, 1}}),         eval({{3, 1}}),         eval({{2, 2}}),
                                        eval({{2, 1}, {3, 2}}), eval({{3, 2}, {2, 1}}), eval({{2, 1}, {3, 3}}),
                                        eval({{3, 1}, {2, 2}}), eval({{2, 2}, {3, 1}}), eval({{2, -1}}),
                                        eval({{2, 1}})};
  size_t n = pool.size();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      rel[i][j] = is_isomorphic_eval(pool[i], pool[j]).isomorphic;
      REQUIRE(rel[i][j] == (iso_class(pool[i]) == iso_class(pool[j])));
    }
  for (size_t i = 0; i < n; ++i) {
    CHECK(rel[i][i]);
    for (size_t j = 0; j < n; ++j) {
      CHECK(rel[i][j] == rel[j][i]);
      for (size_t k = 0; k < n; ++k)
        if (rel[i][j] && rel[j][k]) CHECK(rel[i][k]);
    }
  }
}

TEST_CASE("level zero") {
  CHECK(level_zero_residue_identity(LaurentPoly::linear_root(1), -6, 6));
  Gen g(53);
  for (int s = 0; s < 20; ++s) REQUIRE(level_zero_residue_identity(g.poly(3, true), -8, 8));

  auto lz = check_level_zero(to_emodule(eval({{2, 1}})), LaurentPoly::linear_root(1));
  CHECK(lz.passed);
  CHECK(lz.branch == "residue");
  CHECK(lz.k_zero);

  CHECK_FALSE(check_level_zero(to_emodule(eval({{2, 1}})), LaurentPoly(Rational(1))).passed);
  auto T = EvaluationModule::make(sl2(), {EvalFactor{trivial_module(sl2()), 5}});
  auto triv = check_level_zero(to_emodule(T), LaurentPoly(Rational(1)));
  CHECK(triv.passed);
  CHECK(triv.branch == "degree-zero");

  for (auto M : {eval({{2, 1}, {3, 2}}), eval({{4, -1}}), eval({{2, 3}, {2, 3}})}) {
    auto r = check_level_zero(to_emodule(M));
    CHECK(r.passed);
    CHECK(central_matrix(to_emodule(M)).is_zero());
  }
}

TEST_CASE("semisimple decomposition") {
  auto twice = EvaluationModule::make(sl2(), {EvalFactor{direct_sum(sl2_irrep(sl2(), 2), sl2_irrep(sl2(), 2)), 2}});
  auto parts = decompose_semisimple(to_emodule(twice));
  REQUIRE(parts.size() == 2);
  for (const auto& p : parts) CHECK(p.basis.size() == 2);

  auto cg = eval({{2, 4}, {2, 4}});
  auto cgp = decompose_semisimple(to_emodule(cg));
  std::vector<size_t> dims;
  for (const auto& p : cgp) {
    dims.push_back(p.basis.size());
    CHECK(p.kind == Irreducibility::AbsolutelyIrreducible);
    CHECK(invariant_under(closure_generators(to_emodule(cg)), p.basis));
  }
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<size_t>{1, 3});

  auto one = decompose_semisimple(to_emodule(eval({{2, 1}, {3, 2}})));
  REQUIRE(one.size() == 1);
  CHECK(one[0].basis.size() == 6);

  CHECK_THROWS_AS(decompose_semisimple(double_point_module()), Error);
}

TEST_CASE("multiplicity of annihilator roots") {
  auto r = min_annihilator_multiplicity_check(to_emodule(eval({{2, 1}, {3, 2}})));
  CHECK(r.passed);
  REQUIRE(r.roots.size() == 2);
  CHECK(min_annihilator_multiplicity_check(to_emodule(eval({{2, 3}}))).roots.size() == 1);
  CHECK_THROWS_AS(min_annihilator_multiplicity_check(double_point_module()), Error);
}

TEST_CASE("perfectness is needed for simple annihilator roots") {
  // one-dimensional abelian algebra acting by a(n) = n, so k acts as 0
  auto ab = std::make_shared<LieAlgebraData>();
  ab->name = "abelian";
  ab->dim = 1;
  ab->basis_names = {"a"};
  ab->sc = {{zeros(1)}};
  ab->form = Matrix::identity(1);
  ab->cartan_indices = {0};
  EModule M{ab, 1, {}};
  M.actions.push_back({DeltaTerm<Matrix>{1, 1, Rational(-1) * Matrix::identity(1)}});
  for (long n = -3; n <= 3; ++n) CHECK(M.mode(0, n) == Rational(n) * Matrix::identity(1));
  CHECK(central_matrix(M).is_zero());
  CHECK(burnside_irreducible(M).kind == Irreducibility::AbsolutelyIrreducible);
  auto r = min_annihilator_multiplicity_check(M);
  CHECK_FALSE(r.passed);
  REQUIRE(r.roots.size() == 1);
  CHECK(r.roots[0].second == 2);
}
