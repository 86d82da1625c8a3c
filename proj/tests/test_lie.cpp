#include "doctest.h"
#include "support.hpp"

#include "affrep/error.hpp"
#include "affrep/lie.hpp"

using namespace affrep;
using testgen::Gen;

namespace {

Rational trace(const Matrix& m) {
  Rational t(0);
  for (size_t i = 0; i < m.rows; ++i) t += m(i, i);
  return t;
}

Matrix realize(const LieAlgebraData& L, const Vec& a) {
  Matrix m(L.defining[0].rows, L.defining[0].cols);
  for (size_t i = 0; i < L.dim; ++i)
    if (sgn(a[i]) != 0) m += a[i] * L.defining[i];
  return m;
}

LieAlgebraData abelian2() {
  LieAlgebraData A;
  A.name = "abelian";
  A.dim = 2;
  A.basis_names = {"x", "y"};
  A.sc.assign(2, std::vector<Vec>(2, zeros(2)));
  A.form = Matrix::identity(2);
  A.cartan_indices = {0, 1};
  return A;
}

// Which root of L has the given functional; dim-sized zero for the Cartan part.
std::optional<size_t> root_with(const LieAlgebraData& L, const Vec& fn) {
  for (size_t k = 0; k < L.roots.size(); ++k)
    if (L.roots[k].functional == fn) return k;
  return std::nullopt;
}

bool in_span(const LieAlgebraData& L, const Vec& v, const std::vector<size_t>& idx) {
  for (size_t i = 0; i < L.dim; ++i)
    if (sgn(v[i]) != 0 && std::find(idx.begin(), idx.end(), i) == idx.end()) return false;
  return true;
}

}  // namespace

TEST_CASE("structure constants against the defining matrices") {
  for (auto alg : {build_sl2(), build_sl3()}) {
    const auto& L = *alg;
    for (size_t i = 0; i < L.dim; ++i)
      for (size_t j = 0; j < L.dim; ++j) {
        REQUIRE(realize(L, bracket(L, L.basis(i), L.basis(j))) == commutator(L.defining[i], L.defining[j]));
        REQUIRE(L.form(i, j) == trace(L.defining[i] * L.defining[j]));
      }
  }
}

TEST_CASE("brackets of the builders") {
  auto sl2 = build_sl2();
  CHECK(bracket(*sl2, sl2->basis(0), sl2->basis(1)) == sl2->basis(2));
  Gen g(31);
  for (int s = 0; s < 20; ++s) {
    Vec a = g.vec(3);
    CHECK(is_zero(bracket(*sl2, a, a)));
  }
  auto sl3 = build_sl3();
  // E01 E12 - E12 E01 = E02
  CHECK(bracket(*sl3, sl3->basis(0), sl3->basis(1)) == sl3->basis(2));
  CHECK_THROWS_AS(bracket(*sl2, Vec{1, 0}, sl2->basis(0)), Error);
}

TEST_CASE("algebra validation") {
  CHECK(validate_algebra(*build_sl2()).passed);
  CHECK(validate_algebra(*build_sl3()).passed);

  LieAlgebraData bad = *build_sl2();
  bad.form(2, 2) = 4;
  auto r = validate_algebra(bad);
  CHECK_FALSE(r.passed);
  CHECK(r.check == "normalization");

  LieAlgebraData jac = *build_sl2();
  jac.sc[0][1] = Vec{1, 0, 1};  // [e,f] = h + e
  jac.sc[1][0] = Vec{-1, 0, -1};
  auto rj = validate_algebra(jac);
  CHECK_FALSE(rj.passed);
  CHECK(rj.check == "jacobi");
  CHECK(rj.witness.size() == 3);
}

TEST_CASE("property: random corruptions are rejected") {
  Gen g(32);
  for (int s = 0; s < 20; ++s) {
    LieAlgebraData L = g.coin() ? *build_sl2() : *build_sl3();
    size_t i = g.int_in(0, L.dim - 1), j = g.int_in(0, L.dim - 1), k = g.int_in(0, L.dim - 1);
    Rational c = g.nonzero_q();
    switch (g.int_in(0, 2)) {
      case 0:  // bracket change kept antisymmetric
        if (i == j) j = (i + 1) % L.dim;
        L.sc[i][j][k] += c;
        L.sc[j][i][k] -= c;
        break;
      case 1:  // one-sided bracket change
        L.sc[i][j][k] += c;
        break;
      default:  // form change
        L.form(i, j) += c;
        break;
    }
    auto r = validate_algebra(L);
    INFO("variant " << s << " check " << r.check);
    CHECK_FALSE(r.passed);
  }
}

TEST_CASE("form invariance on all basis triples") {
  for (auto alg : {build_sl2(), build_sl3()}) {
    const auto& L = *alg;
    for (size_t i = 0; i < L.dim; ++i)
      for (size_t j = 0; j < L.dim; ++j)
        for (size_t k = 0; k < L.dim; ++k)
          REQUIRE(L.pair(bracket(L, L.basis(i), L.basis(j)), L.basis(k)) ==
                  L.pair(L.basis(i), bracket(L, L.basis(j), L.basis(k))));
  }
}

TEST_CASE("root decomposition") {
  auto sl2 = root_decomposition(*build_sl2());
  CHECK(sl2.roots.size() == 2);
  CHECK(sl2.matches_declared);
  for (const auto& r : sl2.roots)
    if (r.positive) CHECK(r.space == std::vector<size_t>{0});

  auto sl3 = root_decomposition(*build_sl3());
  CHECK(sl3.roots.size() == 6);
  for (const auto& r : sl3.roots) CHECK(r.space.size() == 1);
  size_t positive = 0, simple = 0;
  for (const auto& r : sl3.roots) positive += r.positive, simple += r.simple;
  CHECK(positive == 3);
  CHECK(simple == 2);

  auto ab = root_decomposition(abelian2());
  CHECK(ab.roots.empty());
  CHECK(ab.cartan.size() == 2);

  LieAlgebraData skew = *build_sl2();
  skew.sc[2][0] = Vec{2, 1, 0};
  CHECK_THROWS_AS(root_decomposition(skew), Error);
}

TEST_CASE("root spaces are compatible with the bracket") {
  for (auto alg : {build_sl2(), build_sl3()}) {
    const auto& L = *alg;
    for (const auto& a : L.roots) {
      for (size_t h : L.cartan_indices)
        for (size_t x : a.space) REQUIRE(in_span(L, bracket(L, L.basis(h), L.basis(x)), a.space));
      for (const auto& b : L.roots) {
        Vec sum = add(a.functional, b.functional);
        std::vector<size_t> target;
        if (is_zero(sum)) target = L.cartan_indices;
        else if (auto k = root_with(L, sum)) target = L.roots[*k].space;
        for (size_t x : a.space)
          for (size_t y : b.space) REQUIRE(in_span(L, bracket(L, L.basis(x), L.basis(y)), target));
      }
    }
  }
}

TEST_CASE("nilpotent basis") {
  auto sl2 = build_sl2();
  auto nb = nilpotent_basis(*sl2);
  REQUIRE(nb.size() == 3);
  CHECK(nb[0] == Vec{1, 0, 0});
  CHECK(nb[1] == Vec{0, 1, 0});
  CHECK(nb[2] == Vec{-1, 1, 1});

  for (auto alg : {sl2, build_sl3()}) {
    auto b = nilpotent_basis(*alg);
    CHECK(b.size() == alg->dim);
    CHECK(independent_subset(b, alg->dim).size() == alg->dim);
    for (const auto& a : b) {
      auto k = ad_nilpotency_index(*alg, a);
      REQUIRE(k);
      CHECK(*k <= alg->dim);
    }
  }
  CHECK_FALSE(ad_nilpotency_index(*sl2, sl2->basis(2)));
  CHECK_THROWS_AS(nilpotent_basis(abelian2()), Error);
}

TEST_CASE("sl2 triples and the highest coroot") {
  auto sl3 = build_sl3();
  for (size_t k = 0; k < sl3->roots.size(); ++k) {
    if (!sl3->roots[k].positive) continue;
    auto t = sl2_triple(*sl3, k);
    CHECK(bracket(*sl3, t.h, t.e) == scale(t.e, 2));
    CHECK(bracket(*sl3, t.h, t.f) == scale(t.f, -2));
    CHECK(bracket(*sl3, t.e, t.f) == t.h);
  }
  auto sl2 = build_sl2();
  CHECK(theta_coroot(*sl2) == sl2->basis(2));
  CHECK(theta_coroot(*sl3) == Vec{0, 0, 0, 0, 0, 0, 1, 1});
}

TEST_CASE("finite-dimensional modules") {
  auto sl2 = build_sl2();
  for (size_t d = 1; d <= 5; ++d) {
    auto V = sl2_irrep(sl2, d);
    CHECK(V.dim == d);
    CHECK(V.respects_bracket());
    CHECK(irreducible_module(sl2, {static_cast<long>(d) - 1}).dim == d);
  }
  auto sl3 = build_sl3();
  for (long a = 0; a <= 2; ++a)
    for (long b = 0; b <= 2; ++b) {
      auto V = irreducible_module(sl3, {a, b});
      CHECK(V.respects_bracket());
      CHECK(V.dim == static_cast<size_t>((a + 1) * (b + 1) * (a + b + 2) / 2));
    }
  auto T = tensor(sl2_irrep(sl2, 2), sl2_irrep(sl2, 3));
  CHECK(T.respects_bracket());
  auto hw = highest_weight_vectors(T);
  std::vector<Rational> weights;
  for (const auto& [w, vs] : hw) {
    CHECK(vs.size() == 1);
    weights.push_back(w[0]);
  }
  std::sort(weights.begin(), weights.end());
  CHECK(weights == std::vector<Rational>{1, 3});
  CHECK(direct_sum(sl2_irrep(sl2, 2), trivial_module(sl2)).respects_bracket());
  CHECK(trivial_module(sl2, 3).is_trivial());
}
