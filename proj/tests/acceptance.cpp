// One line per acceptance criterion; exit status is nonzero if any criterion fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "affrep/cat_c.hpp"
#include "affrep/error.hpp"
#include "affrep/fusion.hpp"
#include "commands.hpp"
#include "fusion_oracle.hpp"

using namespace affrep;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (passed) detail = what;
    passed = false;
  }
};

AlgebraPtr sl2() {
  static AlgebraPtr a = build_sl2();
  return a;
}

EvaluationModule eval(std::vector<std::pair<size_t, long>> fs) {
  std::vector<EvalFactor> out;
  for (const auto& [d, z] : fs) out.push_back({sl2_irrep(sl2(), d), Rational(z)});
  return EvaluationModule::make(sl2(), std::move(out));
}

bool same_in_window(const GradedAction& x, const GradedAction& y, long W) {
  for (size_t i = 0; i < x.alg->dim; ++i)
    for (long m = -W; m <= W; ++m)
      if (!agree_where_defined(x.basis_op(i, m), y.basis_op(i, m), x.dims)) return false;
  return true;
}

Rational random_q(std::mt19937_64& rng, long span, bool nonzero = false) {
  for (;;) {
    long n = static_cast<long>(rng() % (2 * span + 1)) - span;
    if (nonzero && n == 0) continue;
    return make_q(n, static_cast<long>(rng() % 3) + 1);
  }
}

Outcome delta_suite() {
  Outcome o;
  cli::Options opt;
  opt.window = 6;
  opt.samples = 100;
  auto r = cli::run_command("verify-identities", opt);
  for (const auto& c : r.report["checks"]) o.require(c["passed"].get<bool>(), c["name"].get<std::string>());
  std::mt19937_64 rng(11);
  for (int s = 0; s < 100; ++s) {
    Rational z = random_q(rng, 4, true);
    o.require(level_zero_residue_identity(LaurentPoly::linear_root(z) * LaurentPoly::linear_root(z + 1), -6, 6),
              "residue of p(x1)p(x2) times the derivative of the delta");
  }
  return o;
}

Outcome gf_commutator() {
  Outcome o;
  for (auto alg : {build_sl2(), build_sl3()})
    for (size_t i = 0; i < alg->dim; ++i)
      for (size_t j = 0; j < alg->dim; ++j) {
        auto r = gf_commutator_check(*alg, alg->basis(i), alg->basis(j), -4, 4);
        o.require(r.passed, alg->name + " " + alg->basis_names[i] + "," + alg->basis_names[j] + ": " + r.failure);
      }
  return o;
}

Outcome annihilator() {
  Outcome o;
  auto M = eval({{2, 1}, {3, 2}});
  LaurentPoly p = annihilator_poly(M);
  o.require(p == LaurentPoly::linear_root(1) * LaurentPoly::linear_root(2), "annihilator is " + p.str());
  EModule E = to_emodule(M);
  o.require(annihilates(E, p, -8, 8), "p(x)a(x) != 0");
  o.require(!annihilates(E, LaurentPoly::linear_root(1), -8, 8), "x - 1 alone annihilates");
  o.require(!annihilates(E, LaurentPoly::linear_root(2), -8, 8), "x - 2 alone annihilates");
  // p(x) a(x) as a sum of delta terms: (x - z) kills delta(z/x), so the product has no terms left.
  for (size_t i = 0; i < 3; ++i)
    for (const auto& t : E.actions[i]) o.require(sgn(p.eval(t.z)) == 0, "a point of the field is not a root of p");
  return o;
}

Outcome level_zero() {
  Outcome o;
  std::mt19937_64 rng(12);
  for (int s = 0; s < 20; ++s) {
    long deg = static_cast<long>(rng() % 3) + 1;
    std::vector<Rational> cs(deg + 1);
    for (auto& c : cs) c = random_q(rng, 4);
    cs[deg] = 1;
    LaurentPoly p = LaurentPoly::from_dense(cs);
    o.require(level_zero_residue_identity(p, -6, 6), "residue identity for " + p.str());
  }
  std::vector<EvaluationModule> mods = {eval({{2, 1}}), eval({{2, 1}, {3, 2}}), eval({{3, -1}, {2, 2}, {2, 3}}),
                                        eval({{4, 2}, {4, 3}})};
  mods.push_back(EvaluationModule::make(build_sl3(), {EvalFactor{irreducible_module(build_sl3(), {1, 0}), 2}}));
  for (const auto& M : mods) {
    auto r = check_level_zero(to_emodule(M));
    o.require(r.passed && r.k_zero, "k != 0 on a module of dimension " + std::to_string(M.dim));
  }
  return o;
}

bool invariant(const EvaluationModule& M, const std::vector<Vec>& sub) {
  for (size_t i = 0; i < M.alg->dim; ++i)
    for (long n = 0; n <= 2; ++n) {
      Matrix A = evaluation_action(M, M.alg->basis(i), n);
      for (const auto& v : sub)
        if (!coordinates(sub, A * v)) return false;
    }
  return true;
}

Outcome burnside() {
  Outcome o;
  for (size_t d1 = 2; d1 <= 4; ++d1)
    for (size_t d2 = 2; d2 <= 4; ++d2)
      for (long z1 = 1; z1 <= 3; ++z1)
        for (long z2 = 1; z2 <= 3; ++z2) {
          auto M = eval({{d1, z1}, {d2, z2}});
          auto r = burnside_irreducible(M);
          std::string tag = "V" + std::to_string(d1) + "(" + std::to_string(z1) + ") V" + std::to_string(d2) + "(" +
                            std::to_string(z2) + ")";
          if (z1 != z2) {
            o.require(r.kind == Irreducibility::AbsolutelyIrreducible, tag + " not absolutely irreducible");
            o.require(r.algebra_dim == d1 * d2 * d1 * d2, tag + " action algebra too small");
          } else {
            o.require(r.kind == Irreducibility::Reducible, tag + " not reducible");
            size_t k = independent_subset(r.witness, M.dim).size();
            o.require(k == r.witness.size() && k > 0 && k < M.dim && invariant(M, r.witness), tag + " bad witness");
          }
        }
  return o;
}

Outcome projection() {
  Outcome o;
  cli::Options opt;
  opt.samples = 50;
  opt.window = 6;
  auto r = cli::run_command("projection-check", opt);
  for (const auto& c : r.report["checks"]) o.require(c["passed"].get<bool>(), c["name"].get<std::string>());
  return o;
}

struct Factored {
  GradedModule W;
  EvaluationModule E;
  FactoredAction F;
};

const Factored& criterion_seven_module() {
  static Factored f = [] {
    GradedModule W = irreducible_quotient(sl2(), 1, {0}, 3);
    EvaluationModule E = eval({{2, 1}});
    return Factored{W, E, factorize(tensor_with_eval(W, E))};
  }();
  return f;
}

Outcome factorization() {
  Outcome o;
  const auto& [W, E, F] = criterion_seven_module();
  const auto& A = F.source;
  for (size_t i = 0; i < 3; ++i)
    for (long m = -3; m <= 3; ++m)
      o.require(agree_where_defined(F.pi_R.basis_op(i, m) + F.pi_E.basis_op(i, m), A.pi.basis_op(i, m), A.dims),
                "pi_R + pi_E != pi");
  auto c = check_commuting_factors(F, 2);
  o.require(c.passed, "commuting factors: " + c.failure);
  o.require(same_in_window(F.pi_R, restricted_tensor_part(W, E.dim), 3), "pi_R != a(m) (x) 1");
  o.require(same_in_window(F.pi_E, evaluation_tensor_part(W, to_emodule(E)), 3), "pi_E != 1 (x) a(m)");
  return o;
}

Outcome integrability() {
  Outcome o;
  auto t = integrability_transfer(criterion_seven_module().F, 2, 6);
  o.require(t.restricted.passed, "restricted factor");
  o.require(t.evaluation.passed, "evaluation factor");
  return o;
}

Outcome vacuum_descent() {
  Outcome o;
  auto Q = irreducible_quotient(sl2(), 1, {0}, 4);
  auto A = Q.action();
  std::mt19937_64 rng(13);
  for (int s = 0; s < 20; ++s) {
    GVec u = GVec::zero(Q.dims);
    while (u.is_zero())
      for (long p = 0; p <= 3; ++p)
        for (auto& x : u.layers[p]) x = rng() % 3 == 0 ? random_q(rng, 3) : Rational(0);
    auto r = find_vacuum_vector(A, u);
    for (size_t k = 1; k < r.d_trace.size(); ++k) o.require(r.d_trace[k] < r.d_trace[k - 1], "d(u) not decreasing");
    o.require(in_vacuum_space(A, r.vector) && !r.vector.is_zero(), "descent missed the vacuum space");
  }
  auto W = weyl_module(sl2(), 1, trivial_module(sl2()), 3);
  auto sv = singular_vectors(W.action(), 2);
  const auto& labels = W.labels[2];
  bool found = false;
  if (sv.size() == 1)
    for (size_t k = 0; k < labels.size(); ++k) {
      Vec want = zeros(W.dims[2]);
      want[k] = 1;
      found = found || (labels[k] == "e(-1) e(-1) u0" && sv[0].vector == want);
    }
  o.require(found, "e(-1)^2 v not the singular vector of layer 2");
  return o;
}

Outcome roundtrip() {
  Outcome o;
  IntertwinerSetting S{irreducible_quotient(sl2(), 1, {1}, 3), sl2_irrep(sl2(), 2),
                       irreducible_quotient(sl2(), 1, {0}, 3)};
  for (long z : {1L, 2L}) {
    auto r = roundtrip_check(S, z, 3, 4, 1);
    o.require(r.passed, "z = " + std::to_string(z) + ": " + r.failure);
    o.require(r.injective && r.solution_dim > 0, "z = " + std::to_string(z) + ": injectivity not witnessed");
  }
  return o;
}

Outcome fusion() {
  Outcome o;
  auto U = sl2_irrep(sl2(), 2);
  for (long D : {3L, 4L}) {
    auto L0 = irreducible_quotient(sl2(), 1, {0}, D), L1 = irreducible_quotient(sl2(), 1, {1}, D);
    struct Triple {
      const GradedModule* target;
      size_t want;
    };
    for (Triple t : {Triple{&L1, 1}, Triple{&L0, 0}}) {
      auto f = fusion_dim_modules(L0, U, *t.target, 1, D);
      std::string tag = "D = " + std::to_string(D) + ", nu = " + (t.target == &L1 ? "fund" : "0");
      o.require(f.nonincreasing, tag + ": upper bounds increase");
      o.require(f.stabilized && *f.stabilized == t.want, tag + ": not stabilized at " + std::to_string(t.want));
      auto b = oracle::brute_force(L0, U, *t.target, 1, D);
      o.require(b.top_dim == t.want && b.solution_dim == f.rows.back().window_dim,
                tag + ": brute force disagrees");
    }
  }
  return o;
}

Outcome degree_extension() {
  Outcome o;
  for (size_t d = 2; d <= 4; ++d)
    for (long z : {1L, 2L, -1L}) {
      auto r = check_no_degree_extension(eval({{d, z}}));
      o.require(r.infeasible, "V" + std::to_string(d) + "(" + std::to_string(z) + ") admits a degree operator");
    }
  return o;
}

Outcome determinism() {
  Outcome o;
  auto other = std::filesystem::temp_directory_path() / "affrep_acceptance_other.json";
  {
    std::ofstream f(other);
    f << R"({"algebra": "sl2", "factors": [{"dim": 3, "z": "2"}, {"dim": 2, "z": "1"}]})";
  }
  for (const auto& info : cli::command_table())
    for (unsigned long seed : {1UL, 7UL}) {
      cli::Options opt;
      opt.seed = seed;
      if (info.name == "isomorphic") opt.other = other.string();
      std::string a = cli::run_command(info.name, opt).report.dump(2);
      std::string b = cli::run_command(info.name, opt).report.dump(2);
      o.require(a == b, info.name + " differs between runs");
    }
  std::filesystem::remove(other);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds; 0 means no limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {1, "delta-function calculus on [-6,6]", 5, delta_suite},
      {2, "generating-function commutator, sl2 and sl3", 10, gf_commutator},
      {3, "annihilator of V2(1) (x) V3(2) is (x-1)(x-2)", 0, annihilator},
      {4, "level-zero residue for 20 polynomials, k = 0", 0, level_zero},
      {5, "action-algebra dimension of two-point tensors", 60, burnside},
      {6, "psi_R projection on 50 mixed fields", 0, projection},
      {7, "factorization of L(1,0) (x) V2(1)", 30, factorization},
      {8, "integrability of both factors, B = 6", 0, integrability},
      {9, "vacuum descent and the singular vector e(-1)^2 v", 0, vacuum_descent},
      {10, "hat and tilde roundtrips, z in {1, 2}", 0, roundtrip},
      {11, "fusion dimensions against brute force", 120, fusion},
      {12, "no degree operator on V_d(z)", 0, degree_extension},
      {13, "byte-identical reports on rerun", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto start = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit > 0 && secs >= c.limit) r.require(false, "over the time limit");
    std::printf("criterion %2d: %s  %s (%.2f s)%s%s\n", c.id, r.passed ? "PASS" : "FAIL", c.name, secs,
                r.detail.empty() ? "" : "  ", r.detail.c_str());
    failed += !r.passed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
