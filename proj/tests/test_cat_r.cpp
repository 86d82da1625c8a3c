#include "doctest.h"
#include "support.hpp"

#include <algorithm>

#include "affrep/cat_r.hpp"

using namespace affrep;
using testgen::Gen;

namespace {

AlgebraPtr sl2() {
  static AlgebraPtr a = build_sl2();
  return a;
}

// Coefficients of sum_{n in Z} q^{n^2 + s n} / prod_{k>=1} (1 - q^k), the level-one lattice character
// of sl2 (s = 0 vacuum, s = 1 fundamental), together with its weight-zero part 1 / prod (1 - q^k).
std::vector<long> partitions(long D) {
  std::vector<long> p(D + 1, 0);
  p[0] = 1;
  for (long k = 1; k <= D; ++k)
    for (long n = k; n <= D; ++n) p[n] += p[n - k];
  return p;
}

std::vector<size_t> lattice_character(long D, long s) {
  auto p = partitions(D);
  std::vector<size_t> out(D + 1, 0);
  for (long n = -D - 1; n <= D + 1; ++n) {
    long e = n * n + s * n;
    for (long d = e; d <= D; ++d) out[d] += p[d - e];
  }
  return out;
}

std::vector<long> colored_partitions(long depth, long colors) {
  std::vector<long> c(depth + 1, 0);
  c[0] = 1;
  for (long k = 1; k <= depth; ++k)
    for (long col = 0; col < colors; ++col)
      for (long n = k; n <= depth; ++n) c[n] += c[n - k];
  return c;
}

size_t label_index(const GradedModule& M, long layer, const std::string& label) {
  const auto& ls = M.labels.at(layer);
  auto it = std::find(ls.begin(), ls.end(), label);
  REQUIRE(it != ls.end());
  return static_cast<size_t>(it - ls.begin());
}

size_t weight_zero_dim(const GradedModule& M, long layer) {
  GOp h = M.op(M.alg->cartan_indices[0], 0);
  return nullspace(h.block(layer, layer, M.dims)).size();
}

}  // namespace

TEST_CASE("Weyl module layers") {
  auto V1 = trivial_module(sl2());
  auto W0 = weyl_module(sl2(), 1, V1, 0);
  CHECK(W0.dims == std::vector<size_t>{1});
  for (size_t i = 0; i < 3; ++i) CHECK(W0.op(i, 0).block(0, 0, W0.dims).is_zero());

  auto W2 = weyl_module(sl2(), 1, V1, 2);
  CHECK(W2.dims == std::vector<size_t>{1, 3, 9});
  CHECK(W2.level == 1);

  auto c = colored_partitions(3, 3);
  auto W = weyl_module(sl2(), 2, sl2_irrep(sl2(), 2), 3);
  for (long n = 0; n <= 3; ++n) CHECK(W.dims[n] == static_cast<size_t>(2 * c[n]));

  auto sl3 = build_sl3();
  auto c3 = colored_partitions(2, 8);
  auto W3 = weyl_module(sl3, 1, irreducible_module(sl3, {1, 0}), 2);
  for (long n = 0; n <= 2; ++n) CHECK(W3.dims[n] == static_cast<size_t>(3 * c3[n]));
}

TEST_CASE("bracket fidelity of constructed modules") {
  auto W = weyl_module(sl2(), 1, trivial_module(sl2()), 3);
  auto r = check_bracket_fidelity(W.action(), 3);
  CHECK(r.passed);
  CHECK(r.checked > 0);
  CHECK(check_bracket_fidelity(weyl_module(sl2(), 2, sl2_irrep(sl2(), 2), 3).action(), 3).passed);
  CHECK(check_bracket_fidelity(irreducible_quotient(sl2(), 1, {0}, 4).action(), 3).passed);
  CHECK(check_bracket_fidelity(irreducible_quotient(sl2(), 1, {1}, 3).action(), 3).passed);
  CHECK(check_bracket_fidelity(irreducible_quotient(build_sl3(), 1, {1, 0}, 2).action(), 2).passed);

  // the central element is read off [e(1), f(-1)] - h(0) on every layer
  auto A = W.action();
  GOp k = commutator(A.basis_op(0, 1), A.basis_op(1, -1), W.dims) + Rational(-1) * A.basis_op(2, 0);
  for (size_t p = 0; p < W.dims.size(); ++p) {
    if (!k.src[p]) continue;
    CHECK(k.block(p, p, W.dims) == Matrix::identity(W.dims[p]));
  }
}

TEST_CASE("mode action with window bookkeeping") {
  auto W = weyl_module(sl2(), 1, trivial_module(sl2()), 2);
  auto A = W.action();
  GVec v = GVec::unit(W.dims, 0, 0);
  auto up = act(A, sl2()->basis(0), -1, v);
  REQUIRE(up);
  CHECK(*up == GVec::unit(W.dims, 1, label_index(W, 1, "e(-1) u0")));

  GVec top = GVec::unit(W.dims, 2, 0);
  CHECK_FALSE(act(A, sl2()->basis(0), -1, top));
  auto down = act(A, sl2()->basis(0), 2, GVec::unit(W.dims, 1, 0));
  REQUIRE(down);
  CHECK(down->is_zero());
}

TEST_CASE("singular vectors") {
  auto W = weyl_module(sl2(), 1, trivial_module(sl2()), 3);
  auto A = W.action();
  auto s2 = singular_vectors(A, 2);
  REQUIRE(s2.size() == 1);
  Vec want = zeros(W.dims[2]);
  want[label_index(W, 2, "e(-1) e(-1) u0")] = 1;
  CHECK(s2[0].vector == want);
  CHECK(s2[0].weight == std::vector<Rational>{4});
  CHECK(singular_vectors(A, 1).empty());

  auto W3 = weyl_module(sl2(), 2, sl2_irrep(sl2(), 3), 2);
  auto s0 = singular_vectors(W3.action(), 0);
  REQUIRE(s0.size() == 1);
  CHECK(s0[0].weight == std::vector<Rational>{2});
  CHECK(s0[0].vector == Vec{1, 0, 0});

  CHECK_THROWS_AS(singular_vectors(A, 3), Error);
}

TEST_CASE("irreducible quotients") {
  for (long D = 1; D <= 5; ++D) {
    if (D == 2) {
      CHECK_THROWS_AS(irreducible_quotient(sl2(), 1, {0}, D), Error);
      continue;
    }
    auto L0 = irreducible_quotient(sl2(), 1, {0}, D);
    auto want = lattice_character(D, 0);
    auto p = partitions(D);
    for (long n = 0; n <= D; ++n) {
      CHECK(L0.dims[n] == want[n]);
      CHECK(weight_zero_dim(L0, n) == static_cast<size_t>(p[n]));
    }
  }
  CHECK(irreducible_quotient(sl2(), 1, {0}, 3).dims == std::vector<size_t>{1, 3, 4, 7});

  auto L1 = irreducible_quotient(sl2(), 1, {1}, 4);
  auto want1 = lattice_character(4, 1);
  for (long n = 0; n <= 4; ++n) CHECK(L1.dims[n] == want1[n]);

  CHECK(irreducible_quotient(sl2(), 1, {1}, 0).dims == std::vector<size_t>{2});
  CHECK_THROWS_AS(irreducible_quotient(sl2(), 1, {2}, 3), Error);

  for (long lam : {0L, 1L}) {
    auto Q = irreducible_quotient(sl2(), 1, {lam}, 4);
    auto A = Q.action();
    for (long n = 1; n <= 3; ++n) CHECK(singular_vectors(A, n).empty());
    CHECK(check_integrable(A, 2, 4).passed);
  }
}

TEST_CASE("vacuum space") {
  auto W = weyl_module(sl2(), 1, sl2_irrep(sl2(), 2), 3);
  auto om = vacuum_space(W.action());
  CHECK(om[0].size() == W.dims[0]);

  for (long lam : {0L, 1L}) {
    auto Q = irreducible_quotient(sl2(), 1, {lam}, 4);
    auto oq = vacuum_space(Q.action());
    CHECK(oq[0].size() == Q.dims[0]);
    for (size_t n = 1; n < oq.size(); ++n) CHECK(oq[n].empty());
  }

  auto a = weyl_module(sl2(), 1, trivial_module(sl2()), 3), b = weyl_module(sl2(), 1, sl2_irrep(sl2(), 2), 3);
  auto S = direct_sum(a, b);
  auto os = vacuum_space(S.action());
  CHECK(os[0].size() == 3);
  for (size_t n = 1; n < os.size(); ++n) CHECK(os[n].size() == vacuum_space(a.action())[n].size() + vacuum_space(b.action())[n].size());
}

TEST_CASE("descent to a vacuum vector") {
  auto Q = irreducible_quotient(sl2(), 1, {0}, 4);
  auto A = Q.action();
  GVec v = GVec::unit(Q.dims, 0, 0);
  auto same = find_vacuum_vector(A, v);
  CHECK(same.vector == v);
  CHECK(same.d_trace == std::vector<long>{0});

  auto e1 = act(A, sl2()->basis(0), -1, v);
  REQUIRE(e1);
  auto fe = act(A, sl2()->basis(1), -1, *e1);
  REQUIRE(fe);
  REQUIRE_FALSE(fe->is_zero());
  auto d = find_vacuum_vector(A, *fe);
  CHECK(d.vector.top_layer() == 0);
  CHECK_FALSE(d.vector.is_zero());
  CHECK(in_vacuum_space(A, d.vector));
  CHECK(d_value(A, d.vector) == 0);
  for (size_t k = 1; k < d.d_trace.size(); ++k) CHECK(d.d_trace[k] < d.d_trace[k - 1]);
  CHECK(d.d_trace.front() == d_value(A, *fe));

  Gen g(61);
  for (int s = 0; s < 20; ++s) {
    GVec u = GVec::zero(Q.dims);
    while (u.is_zero())
      for (long p = 0; p <= 3; ++p)
        for (auto& x : u.layers[p]) x = g.int_in(0, 2) == 0 ? g.small_q(3) : Rational(0);
    auto r = find_vacuum_vector(A, u);
    for (size_t k = 1; k < r.d_trace.size(); ++k) REQUIRE(r.d_trace[k] < r.d_trace[k - 1]);
    REQUIRE(r.d_trace.back() == 0);
    REQUIRE(in_vacuum_space(A, r.vector));
    REQUIRE_FALSE(r.vector.is_zero());
  }
  CHECK_THROWS_AS(find_vacuum_vector(A, GVec::zero(Q.dims)), Error);
}

TEST_CASE("integrability in a mode window") {
  auto Q = irreducible_quotient(sl2(), 1, {0}, 4);
  auto r = check_integrable(Q.action(), 2, 4);
  CHECK(r.passed);
  CHECK(r.fail == 0);
  CHECK(r.max_power <= 4);
  bool e_minus_one = std::find(r.not_witnessed.begin(), r.not_witnessed.end(), std::make_pair<size_t, long>(0, -1)) !=
                     r.not_witnessed.end();
  CHECK_FALSE(e_minus_one);

  auto W = weyl_module(sl2(), 1, trivial_module(sl2()), 4);
  // layer 3 carries spin-3 components, so zero-mode powers need a bound above 7
  auto w = check_integrable(W.action(), 2, 8);
  CHECK(w.fail == 0);
  CHECK(std::find(w.not_witnessed.begin(), w.not_witnessed.end(), std::make_pair<size_t, long>(0, -1)) !=
        w.not_witnessed.end());
  CHECK(w.out_of_window > r.out_of_window);
}

TEST_CASE("quotients and truncation") {
  auto W = weyl_module(sl2(), 1, trivial_module(sl2()), 3);
  auto T = W.truncate(2);
  CHECK(T.dims == std::vector<size_t>{1, 3, 9});
  CHECK(T.depth == 2);
  GVec seed = GVec::zero(W.dims);
  seed.layers[2][label_index(W, 2, "e(-1) e(-1) u0")] = 1;
  auto sub = generated_submodule(W.action(), {seed});
  CHECK(sub[0].rank() == 0);
  CHECK(sub[1].rank() == 0);
  CHECK(sub[2].rank() == 5);
  auto Q = quotient(W, {seed});
  CHECK(Q.dims[2] == 4);
  CHECK(theta_pairing(sl2_irrep(sl2(), 3)) == 2);
}
