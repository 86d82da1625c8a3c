#include "commands.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "affrep/error.hpp"

namespace affrep::cli {

using io::Json;
using io::to_json;

const std::vector<CommandInfo>& command_table() {
  static const std::vector<CommandInfo> table = {
      {"verify-identities", "delta-function calculus: substitution, derivative products, inverse expansion"},
      {"algebra-validate", "structure constants, invariant form, roots, nilpotent basis, generating-function commutator"},
      {"eval-module", "evaluation module: tensor of U_i(z_i) with mode action a(n) = sum z_i^n a_i"},
      {"annihilator", "minimal monic p(x) with p(x)a(x) = 0, and the level-zero residue argument"},
      {"irreducible", "absolute irreducibility of an evaluation module by the action-algebra dimension"},
      {"decompose", "semisimple decomposition of an evaluation module into irreducible summands"},
      {"isomorphic", "isomorphism of two evaluation modules: points and factor classes up to permutation"},
      {"weyl", "Weyl module induced from a g-module at level l, truncated by depth"},
      {"irrquotient", "irreducible highest-weight quotient L(l, lambda) by singular vectors"},
      {"singular", "singular vectors of a layer: killed by positive modes and positive root vectors"},
      {"vacuum", "vacuum space and the descent to a vacuum vector with strictly decreasing d(u)"},
      {"integrable", "local nilpotency of the nilpotent basis in a mode window, with factor transfer"},
      {"tensorC", "tensor W (x) M of a truncated restricted module and an evaluation module"},
      {"factorize", "split of the action into restricted and evaluation parts, tagged R and E"},
      {"commute-check", "commutation of the R and E parts and their separate bracket relations"},
      {"projection-check", "psi_R idempotent, psi_R + psi_E = 1, components recovered, on random mixed fields"},
      {"loop", "loop module U (x) t^n with d-eigenvalue n + 1, and the missing degree extension of U(z)"},
      {"psi-hat", "graded intertwiners psi and completed maps psi-hat, both roundtrips and injectivity"},
      {"fusion-dim", "truncated fusion dimension upper bounds per depth with stabilization"},
  };
  return table;
}

namespace {

struct Report {
  Json j;
  Json checks = Json::array();
  bool ok = true;

  void check(const std::string& name, bool passed, const std::string& detail = "") {
    Json c{{"name", name}, {"passed", passed}};
    if (!detail.empty()) c["detail"] = detail;
    checks.push_back(std::move(c));
    ok = ok && passed;
  }
};

CommandResult finish(Report& r) {
  r.j["checks"] = std::move(r.checks);
  return {std::move(r.j), r.ok};
}

long get(const std::optional<long>& v, long dflt) { return v ? *v : dflt; }

std::vector<long> parse_weight(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      size_t used = 0;
      long x = std::stol(part, &used);
      if (used != part.size() || x < 0) throw std::invalid_argument(part);
      out.push_back(x);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "weights are comma-separated nonnegative integers, got '" + s + "'");
    }
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty weight");
  return out;
}

std::vector<long> weight_or(const std::optional<std::string>& s, const AlgebraPtr& alg, long first) {
  if (s) {
    auto w = parse_weight(*s);
    if (w.size() != alg->cartan_indices.size()) throw Error(ErrorCode::ParseError, "weight length differs from rank");
    return w;
  }
  std::vector<long> w(alg->cartan_indices.size(), 0);
  w[0] = first;
  return w;
}

Json weight_json(const std::vector<long>& w) { return Json(w); }

/// "d:z,d:z" with sl2 dimensions, or a module description file.
EvaluationModule eval_from(const Options& o, const std::optional<std::string>& path, const char* dflt) {
  if (path) return io::load_eval_module_file(*path);
  AlgebraPtr alg = io::load_algebra_file(o.algebra);
  std::string spec = o.eval ? *o.eval : dflt;
  std::vector<EvalFactor> fs;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto colon = part.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "factors are dim:z, got '" + part + "'");
    Json f{{"dim", std::stol(part.substr(0, colon))}};
    fs.push_back(EvalFactor{io::load_finite_module(alg, f), parse_rational(part.substr(colon + 1))});
  }
  if (fs.empty()) throw Error(ErrorCode::ParseError, "no evaluation factors");
  return EvaluationModule::make(alg, std::move(fs));
}

Rational rand_q(std::mt19937_64& rng, long span, bool nonzero = false) {
  while (true) {
    long v = static_cast<long>(rng() % (2 * span + 1)) - span;
    if (!nonzero || v != 0) return Rational(v);
  }
}

Matrix rand_matrix(std::mt19937_64& rng, size_t n, long span) {
  Matrix m(n, n);
  for (auto& x : m.a) x = rand_q(rng, span);
  return m;
}

// ---------------------------------------------------------------------------------------------

CommandResult verify_identities(const Options& o) {
  Report r;
  long W = get(o.window, 6), samples = get(o.samples, 100);
  if (W < 1 || samples < 1) throw Error(ErrorCode::ParseError, "window and samples must be positive");
  std::mt19937_64 rng(o.seed);
  r.j["inputs"] = Json{{"window", W}, {"samples", samples}};

  // (x1 - x2)^{-1}: coefficient binom(-1, i)(-1)^i = 1 on x1^{-1-i} x2^i.
  Series2 b = binomial_expand(-1, -1, -W, W);
  bool binom_ok = true;
  for (long i = 0; i < W; ++i) binom_ok = binom_ok && b.at(-1 - i, i) == 1;
  r.check("binomial expansion convention", binom_ok);

  long inv_checked = 0;
  bool inv_ok = true;
  for (long s = 0; s < 2 * samples; ++s) {
    long deg = static_cast<long>(rng() % 7), N = static_cast<long>(rng() % 25);
    std::vector<Rational> cs(deg + 1);
    for (auto& c : cs) c = rand_q(rng, 5);
    cs[0] = rand_q(rng, 5, true);
    LaurentPoly p = LaurentPoly::from_dense(cs);
    auto q = expand_inverse(p, N);
    LaurentPoly prod = p * LaurentPoly::from_dense(q.coeffs);
    for (long e = 0; e <= N; ++e) inv_ok = inv_ok && prod.coeff(e) == (e == 0 ? 1 : 0);
    ++inv_checked;
  }
  r.check("inverse expansion p q = 1 mod x^(N+1)", inv_ok, std::to_string(inv_checked) + " polynomials");

  long coeffs = 0;
  bool sub1 = true, subz = true, kill = true;
  for (long s = 0; s < samples; ++s) {
    long deg = static_cast<long>(rng() % 4);
    long shift = static_cast<long>(rng() % 3) - 1;
    std::vector<Rational> cs(deg + 1);
    for (auto& c : cs) c = rand_q(rng, 4);
    LaurentPoly f = LaurentPoly::from_dense(cs, shift);
    auto a = check_delta_substitution(f, Rational(1), -W, W);
    sub1 = sub1 && a.passed;
    Rational z = rand_q(rng, 3, true) / Rational(static_cast<long>(rng() % 3) + 1);
    auto c = check_delta_substitution(f, z, -W, W);
    subz = subz && c.passed;
    auto d = check_delta_substitution(LaurentPoly::linear_root(z), z, -W, W);
    kill = kill && d.passed;
    coeffs += a.checked + c.checked + d.checked;
  }
  r.check("f(x) delta(x) = f(1) delta(x)", sub1);
  r.check("f(x) delta(z/x) = f(z) delta(z/x)", subz);
  r.check("(x - z) delta(z/x) = 0", kill);

  bool prod_ok = true;
  std::string first;
  for (long m = 0; m <= 4; ++m)
    for (long n = 0; n <= 4; ++n) {
      auto rep = delta_derivative_identity(m, n, -W, W);
      coeffs += rep.checked;
      if (!rep.passed && prod_ok) first = "m=" + std::to_string(m) + " n=" + std::to_string(n) + ": " + rep.failure;
      prod_ok = prod_ok && rep.passed;
    }
  r.check("(x1 - x2)^m times n-th derivative of the two-variable delta", prod_ok, first);
  r.j["results"] = Json{{"coefficients_compared", coeffs}};
  return finish(r);
}

CommandResult algebra_validate(const Options& o) {
  Report r;
  long W = get(o.window, 4);
  AlgebraPtr alg = io::load_algebra_file(o.algebra);
  const LieAlgebraData& L = *alg;
  r.j["inputs"] = Json{{"algebra", L.name}, {"window", W}};
  auto v = validate_algebra(L);
  r.check("algebra invariants", v.passed, v.passed ? "" : v.check + ": " + v.detail);
  Json res{{"algebra", io::algebra_json(L)}};
  if (!L.roots.empty()) {
    auto rd = root_decomposition(L);
    r.check("declared root spaces", rd.matches_declared);
    res["root_count"] = rd.roots.size();
    auto nb = nilpotent_basis(L);
    Json nil = Json::array();
    bool all_nil = true;
    for (const auto& a : nb) {
      auto k = ad_nilpotency_index(L, a);
      all_nil = all_nil && k && *k <= L.dim;
      nil.push_back(Json{{"element", to_json(a)}, {"ad_nilpotency_index", k ? Json(*k) : Json(nullptr)}});
    }
    std::vector<Vec> span = nb;
    r.check("nilpotent basis is ad-nilpotent", all_nil);
    r.check("nilpotent basis spans", independent_subset(span, L.dim).size() == L.dim);
    res["nilpotent_basis"] = std::move(nil);
  }
  long checked = 0;
  bool gf = true;
  std::string fail;
  for (size_t i = 0; i < L.dim; ++i)
    for (size_t j = 0; j < L.dim; ++j) {
      auto c = gf_commutator_check(L, L.basis(i), L.basis(j), -W, W);
      checked += c.checked;
      if (!c.passed && gf) fail = L.basis_names[i] + "," + L.basis_names[j] + ": " + c.failure;
      gf = gf && c.passed;
    }
  r.check("generating-function commutator matches the mode bracket", gf, fail);
  res["commutator_coefficients"] = checked;
  r.j["results"] = std::move(res);
  return finish(r);
}

CommandResult eval_module(const Options& o) {
  Report r;
  EvaluationModule M = eval_from(o, o.module, "2:1");
  long W = get(o.window, 3);
  r.j["inputs"] = Json{{"module", io::eval_module_json(M)}, {"window", W}};
  Json acts = Json::array();
  for (size_t i = 0; i < M.alg->dim; ++i)
    for (long n = -1; n <= 1; ++n)
      acts.push_back(Json{{"element", M.alg->basis_names[i]}, {"mode", n},
                          {"matrix", io::dense_json(evaluation_action(M, M.alg->basis(i), n))}});
  bool ok = true;
  long checked = 0;
  for (size_t i = 0; i < M.alg->dim; ++i)
    for (size_t j = 0; j < M.alg->dim; ++j)
      for (long m = -W; m <= W; ++m)
        for (long n = -W; n <= W; ++n) {
          Matrix lhs = commutator(evaluation_action(M, M.alg->basis(i), m), evaluation_action(M, M.alg->basis(j), n));
          Matrix rhs = evaluation_action(M, bracket(*M.alg, M.alg->basis(i), M.alg->basis(j)), m + n);
          ok = ok && lhs == rhs;
          ++checked;
        }
  r.check("mode action respects the affine bracket at level 0", ok, std::to_string(checked) + " pairs");
  r.j["results"] = Json{{"dim", M.dim}, {"points", to_json(Vec(M.points()))}, {"actions", std::move(acts)}};
  return finish(r);
}

CommandResult annihilator(const Options& o) {
  Report r;
  EvaluationModule M = eval_from(o, o.module, "2:1,3:2");
  long W = get(o.window, 6);
  EModule E = to_emodule(M);
  r.j["inputs"] = Json{{"module", io::eval_module_json(M)}, {"window", W}};
  LaurentPoly p = annihilator_poly(E);
  r.check("p(x)a(x) = 0 for every basis element", annihilates(E, p, -W, W));
  auto lz = check_level_zero(E, p);
  r.check("level-zero residue identity", lz.residue_identity);
  r.check("central element acts as 0", lz.k_zero);
  r.j["results"] = Json{{"annihilator", to_json(p)}, {"level_zero_branch", lz.branch}};
  return finish(r);
}

Json summand_json(const std::vector<Vec>& basis) {
  Json b = Json::array();
  for (const auto& v : basis) b.push_back(to_json(v));
  return b;
}

CommandResult irreducible(const Options& o) {
  Report r;
  EvaluationModule M = eval_from(o, o.module, "2:1,3:2");
  r.j["inputs"] = Json{{"module", io::eval_module_json(M)}};
  auto b = burnside_irreducible(M);
  Json res{{"kind", irreducibility_name(b.kind)}, {"algebra_dim", b.algebra_dim}, {"dim_squared", M.dim * M.dim}};
  if (b.kind == Irreducibility::Reducible) {
    res["witness"] = summand_json(b.witness);
    bool inv = true;
    auto gens = closure_generators(to_emodule(M));
    for (const auto& g : gens)
      for (const auto& v : b.witness) {
        std::vector<Vec> basis = b.witness;
        inv = inv && coordinates(basis, g * v).has_value();
      }
    r.check("witness subspace is invariant and proper", inv && !b.witness.empty() && b.witness.size() < M.dim);
  }
  r.j["results"] = std::move(res);
  return finish(r);
}

CommandResult decompose(const Options& o) {
  Report r;
  EvaluationModule M = eval_from(o, o.module, "2:1,2:1");
  r.j["inputs"] = Json{{"module", io::eval_module_json(M)}};
  auto parts = decompose_semisimple(to_emodule(M));
  Json out = Json::array();
  std::vector<Vec> all;
  for (const auto& s : parts) {
    out.push_back(Json{{"dim", s.basis.size()}, {"kind", irreducibility_name(s.kind)}, {"basis", summand_json(s.basis)}});
    all.insert(all.end(), s.basis.begin(), s.basis.end());
  }
  r.check("summands span the module directly", independent_subset(all, M.dim).size() == M.dim && all.size() == M.dim);
  r.j["results"] = Json{{"summands", std::move(out)}};
  return finish(r);
}

CommandResult isomorphic(const Options& o) {
  Report r;
  EvaluationModule A = eval_from(o, o.module, "2:1,3:2");
  if (!o.other) throw Error(ErrorCode::ParseError, "isomorphic needs --other");
  EvaluationModule B = io::load_eval_module_file(*o.other);
  r.j["inputs"] = Json{{"first", io::eval_module_json(A)}, {"second", io::eval_module_json(B)}};
  auto iso = is_isomorphic_eval(A, B);
  Json res{{"isomorphic", iso.isomorphic}, {"reason", iso.reason}};
  if (iso.isomorphic) res["permutation"] = iso.permutation;
  r.j["results"] = std::move(res);
  return finish(r);
}

struct HwInputs {
  AlgebraPtr alg;
  long level, depth;
  std::vector<long> lambda;
};

HwInputs hw_inputs(const Options& o, long depth_default) {
  HwInputs h;
  h.alg = io::load_algebra_file(o.algebra);
  h.level = get(o.level, 1);
  h.depth = get(o.depth, depth_default);
  if (h.depth < 0) throw Error(ErrorCode::ParseError, "depth must be nonnegative");
  h.lambda = weight_or(o.lam, h.alg, 0);
  return h;
}

Json hw_json(const HwInputs& h) {
  return Json{{"algebra", h.alg->name}, {"level", h.level}, {"lambda", weight_json(h.lambda)}, {"depth", h.depth}};
}

GradedModule build_module(const HwInputs& h, bool weyl) {
  if (weyl) return weyl_module(h.alg, Rational(h.level), irreducible_module(h.alg, h.lambda), h.depth);
  return irreducible_quotient(h.alg, h.level, h.lambda, h.depth);
}

CommandResult weyl(const Options& o) {
  Report r;
  HwInputs h = hw_inputs(o, 2);
  long modes = get(o.modes, h.depth);
  r.j["inputs"] = hw_json(h);
  r.j["inputs"]["modes"] = modes;
  GradedModule M = build_module(h, true);
  auto br = check_bracket_fidelity(M.action(), std::min<long>(3, std::max<long>(1, h.depth)));
  r.check("bracket relations hold where defined", br.passed, br.failure);
  r.j["results"] = Json{{"module", io::graded_module_json(M, modes)}};
  return finish(r);
}

CommandResult irrquotient(const Options& o) {
  Report r;
  HwInputs h = hw_inputs(o, 3);
  long modes = get(o.modes, h.depth);
  r.j["inputs"] = hw_json(h);
  r.j["inputs"]["modes"] = modes;
  GradedModule M = build_module(h, false);
  auto A = M.action();
  bool none = true;
  for (long n = 1; n <= h.depth - 1; ++n) none = none && singular_vectors(A, n).empty();
  r.check("no singular vectors in layers 1..depth-1", none);
  auto br = check_bracket_fidelity(A, std::min<long>(3, std::max<long>(1, h.depth)));
  r.check("bracket relations hold where defined", br.passed, br.failure);
  r.j["results"] = Json{{"dims", M.dims}, {"module", io::graded_module_json(M, modes)}};
  return finish(r);
}

Json singular_json(const std::vector<SingularVector>& sv) {
  Json out = Json::array();
  for (const auto& s : sv)
    out.push_back(Json{{"layer", s.layer}, {"weight", to_json(Vec(s.weight))}, {"vector", to_json(s.vector)}});
  return out;
}

CommandResult singular(const Options& o) {
  Report r;
  HwInputs h = hw_inputs(o, 3);
  long layer = get(o.layer, 2);
  r.j["inputs"] = hw_json(h);
  r.j["inputs"]["layer"] = layer;
  r.j["inputs"]["module"] = o.weyl ? "weyl" : "irreducible";
  GradedModule M = build_module(h, o.weyl);
  auto sv = singular_vectors(M.action(), layer);
  Json labels = Json::array();
  if (static_cast<size_t>(layer) < M.labels.size()) labels = M.labels[layer];
  r.j["results"] = Json{{"count", sv.size()}, {"layer_labels", labels}, {"vectors", singular_json(sv)}};
  return finish(r);
}

GVec random_gvec(std::mt19937_64& rng, const std::vector<size_t>& dims, long max_layer) {
  GVec v = GVec::zero(dims);
  while (v.is_zero())
    for (long p = 0; p <= max_layer; ++p)
      for (auto& x : v.layers[p]) x = rng() % 3 == 0 ? rand_q(rng, 3) : Rational(0);
  return v;
}

CommandResult vacuum(const Options& o) {
  Report r;
  HwInputs h = hw_inputs(o, 4);
  long samples = get(o.samples, 20);
  r.j["inputs"] = hw_json(h);
  r.j["inputs"]["samples"] = samples;
  r.j["inputs"]["module"] = o.weyl ? "weyl" : "irreducible";
  GradedModule M = build_module(h, o.weyl);
  auto A = M.action();
  auto omega = vacuum_space(A);
  Json dims = Json::array();
  for (const auto& l : omega) dims.push_back(l.size());
  std::mt19937_64 rng(o.seed);
  Json runs = Json::array();
  bool decreasing = true, lands = true;
  for (long s = 0; s < samples; ++s) {
    // Starting vectors avoid the top layer, whose positive modes leave no headroom.
    GVec u = random_gvec(rng, M.dims, std::max<long>(0, h.depth - 1));
    auto d = find_vacuum_vector(A, u);
    for (size_t k = 1; k < d.d_trace.size(); ++k) decreasing = decreasing && d.d_trace[k] < d.d_trace[k - 1];
    lands = lands && in_vacuum_space(A, d.vector) && !d.vector.is_zero();
    runs.push_back(Json{{"start", io::gvec_json(u)}, {"d_trace", d.d_trace}, {"vacuum_vector", io::gvec_json(d.vector)}});
  }
  r.check("d(u) strictly decreases along each descent", decreasing);
  r.check("each descent ends in the vacuum space", lands);
  r.j["results"] = Json{{"vacuum_dims", std::move(dims)}, {"descents", std::move(runs)}};
  return finish(r);
}

Json integrability_json(const IntegrabilityReport& ir) {
  Json nw = Json::array();
  for (const auto& [e, m] : ir.not_witnessed) nw.push_back(Json::array({e, m}));
  return Json{{"passed", ir.passed}, {"mode_bound", ir.mode_bound}, {"power_bound", ir.power_bound},
              {"max_layer", ir.max_layer}, {"max_power", ir.max_power}, {"zero", ir.zero},
              {"out_of_window", ir.out_of_window}, {"fail", ir.fail}, {"not_witnessed", std::move(nw)},
              {"failures", ir.failures}};
}

CommandResult integrable(const Options& o) {
  Report r;
  HwInputs h = hw_inputs(o, 4);
  long N = get(o.modes, 2), B = get(o.bound, o.module || o.eval ? 6 : 4);
  r.j["inputs"] = hw_json(h);
  r.j["inputs"]["modes"] = N;
  r.j["inputs"]["bound"] = B;
  r.j["inputs"]["module"] = o.weyl ? "weyl" : "irreducible";
  GradedModule M = build_module(h, o.weyl);
  Json res;
  if (o.module || o.eval) {
    EvaluationModule E = eval_from(o, o.module, "2:1");
    r.j["inputs"]["evaluation"] = io::eval_module_json(E);
    auto F = factorize(tensor_with_eval(M, E));
    auto t = integrability_transfer(F, N, B);
    r.check("restricted factor integrable", t.restricted.passed);
    r.check("evaluation factor integrable", t.evaluation.passed);
    res = Json{{"full", integrability_json(t.full)}, {"restricted", integrability_json(t.restricted)},
               {"evaluation", integrability_json(t.evaluation)}, {"r", t.r}, {"k", t.k},
               {"bound_k_r_plus_1", t.bound_r1}, {"bound_k_r_plus_2", t.bound_r2}, {"within_bound", t.within_bound}};
  } else {
    auto ir = check_integrable(M.action(), N, B);
    r.check("nilpotent basis acts locally nilpotently in window", ir.passed);
    res = integrability_json(ir);
  }
  r.j["results"] = std::move(res);
  return finish(r);
}

struct TensorInputs {
  HwInputs h;
  EvaluationModule E;
  CategoryCAction A;
  GradedModule W;
};

TensorInputs tensor_inputs(const Options& o, Report& r) {
  HwInputs h = hw_inputs(o, 3);
  EvaluationModule E = eval_from(o, o.module, "2:1");
  GradedModule W = build_module(h, o.weyl);
  r.j["inputs"] = hw_json(h);
  r.j["inputs"]["evaluation"] = io::eval_module_json(E);
  CategoryCAction A = tensor_with_eval(W, E);
  return TensorInputs{h, E, A, W};
}

CommandResult tensor_c(const Options& o) {
  Report r;
  TensorInputs t = tensor_inputs(o, r);
  long modes = get(o.modes, t.h.depth);
  r.j["inputs"]["modes"] = modes;
  EModule em = to_emodule(t.E);
  r.check("certificate annihilates the evaluation fields", annihilates(em, t.A.cert, -6, 6));
  r.j["results"] = Json{{"dims", t.A.dims}, {"level", to_json(t.A.level)}, {"certificate", to_json(t.A.cert)},
                        {"action", io::graded_action_json(t.A.pi, modes, "full")}};
  return finish(r);
}

bool same_in_window(const GradedAction& x, const GradedAction& y, long W) {
  for (size_t i = 0; i < x.alg->dim; ++i)
    for (long m = -W; m <= W; ++m)
      if (!agree_where_defined(x.basis_op(i, m), y.basis_op(i, m), x.dims)) return false;
  return true;
}

CommandResult factorize_cmd(const Options& o) {
  Report r;
  TensorInputs t = tensor_inputs(o, r);
  long W = get(o.window, 2), modes = get(o.modes, t.h.depth);
  r.j["inputs"]["window"] = W;
  r.j["inputs"]["modes"] = modes;
  auto F = factorize(t.A);
  bool sum = true;
  for (size_t i = 0; i < t.A.alg->dim; ++i)
    for (long m = -W; m <= W; ++m)
      sum = sum && agree_where_defined(F.pi_R.basis_op(i, m) + F.pi_E.basis_op(i, m), t.A.pi.basis_op(i, m), t.A.dims);
  r.check("pi_R + pi_E = pi", sum);
  r.check("pi_R = a(m) (x) 1", same_in_window(F.pi_R, restricted_tensor_part(t.W, t.E.dim), W));
  r.check("pi_E = 1 (x) a(m)", same_in_window(F.pi_E, evaluation_tensor_part(t.W, to_emodule(t.E)), W));
  r.j["results"] = Json{{"certificate", to_json(t.A.cert)},
                        {"R", io::graded_action_json(F.pi_R, modes, "R")},
                        {"E", io::graded_action_json(F.pi_E, modes, "E")}};
  return finish(r);
}

CommandResult commute_check(const Options& o) {
  Report r;
  TensorInputs t = tensor_inputs(o, r);
  long W = get(o.window, 2);
  r.j["inputs"]["window"] = W;
  auto F = factorize(t.A);
  auto c = check_commuting_factors(F, W);
  r.check("[pi_R(a(m)), pi_E(b(n))] = 0", c.commuting, c.failure);
  r.check("pi_R satisfies the bracket at level l", c.r_bracket);
  r.check("pi_E satisfies the bracket at level 0", c.e_bracket);
  r.j["results"] = Json{{"checked", c.checked}};
  return finish(r);
}

EbarElement random_ebar(std::mt19937_64& rng, size_t n) {
  EbarElement x;
  x.dim = n;
  int kind = static_cast<int>(rng() % 3);  // 0 restricted, 1 delta, 2 mixed
  if (kind != 1)
    for (long e = -2; e <= 2; ++e)
      if (rng() % 2) x.restricted[e] = rand_matrix(rng, n, 3);
  if (kind != 0) {
    static const long zs[] = {1, 2, -1, 3};
    size_t terms = 1 + rng() % 2;
    for (size_t k = 0; k < terms; ++k)
      x.delta.push_back(DeltaTerm<Matrix>{Rational(zs[rng() % 4]), static_cast<long>(rng() % 2), rand_matrix(rng, n, 3)});
  }
  return x;
}

CommandResult projection_check(const Options& o) {
  Report r;
  long samples = get(o.samples, 50), W = get(o.window, 6);
  r.j["inputs"] = Json{{"samples", samples}, {"window", W}};
  std::mt19937_64 rng(o.seed);
  std::vector<EbarElement> fam;
  for (long s = 0; s < samples; ++s) fam.push_back(random_ebar(rng, 2));
  auto p = verify_projection(fam, -W, W);
  r.check("psi_R psi_R = psi_R", p.idempotent);
  r.check("psi_R + psi_E = 1", p.complement);
  r.check("psi_E psi_R = 0 = psi_R psi_E", p.annihilates);
  r.check("restricted and delta parts recovered", p.recovered, p.failure);
  r.j["results"] = Json{{"checked", p.checked}};
  return finish(r);
}

CommandResult loop(const Options& o) {
  Report r;
  AlgebraPtr alg = io::load_algebra_file(o.algebra);
  auto mu = weight_or(o.mu, alg, 1);
  long tmin = get(o.tmin, -2), tmax = get(o.tmax, 2), modes = get(o.modes, 1);
  Rational z = parse_rational(o.z);
  r.j["inputs"] = Json{{"algebra", alg->name}, {"mu", weight_json(mu)}, {"t_min", tmin}, {"t_max", tmax},
                       {"modes", modes}, {"z", to_json(z)}};
  LoopModule L = loop_module(irreducible_module(alg, mu), tmin, tmax);
  Json layers = Json::array();
  for (long n = tmin; n <= tmax; ++n) {
    Json acts = Json::array();
    for (size_t i = 0; i < alg->dim; ++i)
      for (long m = -modes; m <= modes; ++m) {
        auto a = L.action(alg->basis(i), m, n);
        Json e{{"element", alg->basis_names[i]}, {"mode", m}};
        if (a) e["to"] = n + m, e["matrix"] = io::sparse_json(*a)["entries"];
        else e["out_of_window"] = true;
        acts.push_back(std::move(e));
      }
    layers.push_back(Json{{"t_power", n}, {"d_eigenvalue", to_json(Rational(L.d_eigenvalue(n)))}, {"dim", L.base.dim},
                          {"actions", std::move(acts)}});
  }
  Json res{{"layers", std::move(layers)}};
  if (!L.base.is_trivial()) {
    auto M = EvaluationModule::make(alg, {EvalFactor{L.base, z}});
    auto d = check_no_degree_extension(M);
    r.check("evaluation module admits no compatible degree operator", d.infeasible);
    res["degree_extension"] = Json{{"infeasible", d.infeasible}, {"equations", d.equations},
                                   {"element", alg->basis_names[d.witness_element]},
                                   {"u", to_json(d.witness_vector)}, {"au", to_json(d.witness_image)}};
  }
  r.j["results"] = std::move(res);
  return finish(r);
}

struct TripleInputs {
  AlgebraPtr alg;
  long level, depth, modes;
  std::vector<long> lambda, mu, nu;
  Rational z;
};

TripleInputs triple_inputs(const Options& o, long lam, long mu, long nu, long depth) {
  TripleInputs t;
  t.alg = io::load_algebra_file(o.algebra);
  t.level = get(o.level, 1);
  t.depth = get(o.depth, depth);
  t.modes = get(o.modes, t.depth);
  t.lambda = weight_or(o.lam, t.alg, lam);
  t.mu = weight_or(o.mu, t.alg, mu);
  t.nu = weight_or(o.nu, t.alg, nu);
  t.z = parse_rational(o.z);
  return t;
}

Json triple_json(const TripleInputs& t) {
  return Json{{"algebra", t.alg->name}, {"level", t.level}, {"lambda", weight_json(t.lambda)},
              {"mu", weight_json(t.mu)}, {"nu", weight_json(t.nu)}, {"depth", t.depth},
              {"modes", t.modes}, {"z", to_json(t.z)}};
}

CommandResult psi_hat_cmd(const Options& o) {
  Report r;
  TripleInputs t = triple_inputs(o, 1, 1, 0, 3);
  long samples = get(o.samples, 4);
  r.j["inputs"] = triple_json(t);
  r.j["inputs"]["samples"] = samples;
  IntertwinerSetting S{irreducible_quotient(t.alg, t.level, t.lambda, t.depth), irreducible_module(t.alg, t.mu),
                       irreducible_quotient(t.alg, t.level, t.nu, t.depth)};
  auto rt = roundtrip_check(S, t.z, t.modes, static_cast<size_t>(samples), o.seed);
  r.check("psi-hat intertwines", rt.hat_intertwines, rt.failure);
  r.check("tilde after hat is the identity", rt.tilde_after_hat);
  r.check("hat after tilde is the identity", rt.hat_after_tilde);
  r.check("tilde maps intertwine", rt.tilde_intertwines);
  r.check("psi-hat is injective", rt.injective);
  r.j["results"] = Json{{"solution_dim", rt.solution_dim}, {"sampled", rt.sampled}};
  return finish(r);
}

CommandResult fusion_dim_cmd(const Options& o) {
  Report r;
  TripleInputs t = triple_inputs(o, 0, 1, 1, 4);
  r.j["inputs"] = triple_json(t);
  auto f = fusion_dim(t.alg, t.level, t.lambda, t.mu, t.nu, t.depth, t.modes, t.z);
  Json rows = Json::array();
  for (size_t k = 0; k < f.rows.size(); ++k) {
    const auto& x = f.rows[k];
    bool stable = k > 0 && f.rows[k - 1].upper_bound == x.upper_bound;
    rows.push_back(Json{{"depth", x.depth}, {"modes", x.modes}, {"upper_bound", x.upper_bound},
                        {"stabilized", stable}, {"unknowns", x.unknowns}, {"rank", x.rank},
                        {"window_dim", x.window_dim}});
  }
  r.check("upper bounds nonincreasing in depth", f.nonincreasing);
  r.j["results"] = Json{{"rows", std::move(rows)},
                        {"stabilized_value", f.stabilized ? Json(*f.stabilized) : Json("Unstable")}};
  return finish(r);
}

}  // namespace

CommandResult run_command(const std::string& name, const Options& opt) {
  using Fn = CommandResult (*)(const Options&);
  static const std::vector<std::pair<std::string, Fn>> fns = {
      {"verify-identities", verify_identities}, {"algebra-validate", algebra_validate},
      {"eval-module", eval_module},             {"annihilator", annihilator},
      {"irreducible", irreducible},             {"decompose", decompose},
      {"isomorphic", isomorphic},               {"weyl", weyl},
      {"irrquotient", irrquotient},             {"singular", singular},
      {"vacuum", vacuum},                       {"integrable", integrable},
      {"tensorC", tensor_c},                    {"factorize", factorize_cmd},
      {"commute-check", commute_check},         {"projection-check", projection_check},
      {"loop", loop},                           {"psi-hat", psi_hat_cmd},
      {"fusion-dim", fusion_dim_cmd},
  };
  for (const auto& [n, fn] : fns) {
    if (n != name) continue;
    CommandResult res = fn(opt);
    Json out;
    out["command"] = name;
    for (const auto& c : command_table())
      if (c.name == name) out["description"] = c.description;
    out["seed"] = opt.seed;
    out["inputs"] = res.report.contains("inputs") ? res.report["inputs"] : Json::object();
    out["results"] = res.report.contains("results") ? res.report["results"] : Json::object();
    out["checks"] = res.report["checks"];
    out["passed"] = res.passed;
    res.report = std::move(out);
    return res;
  }
  throw Error(ErrorCode::ParseError, "unknown subcommand '" + name + "'");
}

}  // namespace affrep::cli
