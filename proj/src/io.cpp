#include "affrep/io.hpp"

#include <fstream>
#include <sstream>

#include "affrep/error.hpp"

namespace affrep::io {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

size_t index_from(const Json& j, size_t bound, const char* what) {
  if (!j.is_number_integer() || j.get<long>() < 0 || static_cast<size_t>(j.get<long>()) >= bound)
    bad(std::string("bad ") + what + " index");
  return j.get<size_t>();
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  bad("rationals must be strings \"p/q\" or integers");
}

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Vec vec_from(const Json& j) {
  if (!j.is_array()) bad("expected an array of rationals");
  Vec v;
  for (const auto& x : j) v.push_back(rational_from(x));
  return v;
}

Json dense_json(const Matrix& m) {
  Json a = Json::array();
  for (size_t r = 0; r < m.rows; ++r) {
    Json row = Json::array();
    for (size_t c = 0; c < m.cols; ++c) row.push_back(to_json(m(r, c)));
    a.push_back(std::move(row));
  }
  return a;
}

Matrix matrix_from(const Json& j) {
  if (!j.is_array() || j.empty()) bad("expected a nonempty array of rows");
  size_t rows = j.size(), cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) bad("ragged matrix");
    for (size_t c = 0; c < cols; ++c) m(r, c) = rational_from(j[r][c]);
  }
  return m;
}

Json sparse_json(const Matrix& m) {
  Json e = Json::array();
  for (size_t r = 0; r < m.rows; ++r)
    for (size_t c = 0; c < m.cols; ++c)
      if (sgn(m(r, c)) != 0) e.push_back(Json::array({r, c, to_json(m(r, c))}));
  return Json{{"rows", m.rows}, {"cols", m.cols}, {"entries", std::move(e)}};
}

Json to_json(const LaurentPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(Json::array({e, to_json(c)}));
  return Json{{"text", p.str()}, {"terms", std::move(terms)}};
}

AlgebraPtr load_algebra(const Json& j) {
  if (j.is_string()) {
    auto name = j.get<std::string>();
    if (name == "sl2") return build_sl2();
    if (name == "sl3") return build_sl3();
    bad("unknown builtin algebra '" + name + "'");
  }
  LieAlgebraData L;
  L.name = j.value("name", std::string("custom"));
  const Json& names = field(j, "basis");
  if (!names.is_array() || names.empty()) bad("basis must be a nonempty array of names");
  for (const auto& n : names) {
    if (!n.is_string()) bad("basis names must be strings");
    L.basis_names.push_back(n.get<std::string>());
  }
  L.dim = L.basis_names.size();
  L.sc.assign(L.dim, std::vector<Vec>(L.dim, Vec(L.dim)));
  std::vector<std::vector<bool>> given(L.dim, std::vector<bool>(L.dim, false));
  // Sparse triples [i, j, k, c]: [b_i, b_j] has coefficient c on b_k.
  for (const auto& t : field(j, "brackets")) {
    if (!t.is_array() || t.size() != 4) bad("bracket entries are [i, j, k, \"c\"]");
    size_t a = index_from(t[0], L.dim, "bracket"), b = index_from(t[1], L.dim, "bracket"),
           k = index_from(t[2], L.dim, "bracket");
    L.sc[a][b][k] += rational_from(t[3]);
    given[a][b] = true;
  }
  for (size_t a = 0; a < L.dim; ++a)
    for (size_t b = 0; b < L.dim; ++b)
      if (!given[a][b] && given[b][a])
        for (size_t k = 0; k < L.dim; ++k) L.sc[a][b][k] = -L.sc[b][a][k];
  L.form = matrix_from(field(j, "form"));
  if (L.form.rows != L.dim || L.form.cols != L.dim) bad("form must be dim x dim");
  for (const auto& c : field(j, "cartan")) L.cartan_indices.push_back(index_from(c, L.dim, "cartan"));
  if (j.contains("roots")) {
    for (const auto& r : j.at("roots")) {
      RootEntry e;
      e.functional = vec_from(field(r, "functional"));
      if (e.functional.size() != L.cartan_indices.size()) bad("root functional length differs from the Cartan rank");
      for (const auto& s : field(r, "space")) e.space.push_back(index_from(s, L.dim, "root space"));
      e.positive = r.value("positive", false);
      e.simple = r.value("simple", false);
      L.roots.push_back(std::move(e));
    }
  }
  if (j.contains("theta")) L.theta_index = index_from(j.at("theta"), L.roots.size(), "theta");
  L.claimed_simple = j.value("claimed_simple", false);
  auto rep = validate_algebra(L);
  if (!rep.passed) bad("algebra fails validation at " + rep.check + ": " + rep.detail);
  return std::make_shared<LieAlgebraData>(std::move(L));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    bad("'" + path + "': " + e.what());
  }
}

AlgebraPtr load_algebra_file(const std::string& path_or_name) {
  if (path_or_name == "sl2" || path_or_name == "sl3") return load_algebra(Json(path_or_name));
  return load_algebra(read_json_file(path_or_name));
}

Json algebra_json(const LieAlgebraData& L) {
  Json j;
  j["name"] = L.name;
  j["basis"] = L.basis_names;
  Json br = Json::array();
  for (size_t a = 0; a < L.dim; ++a)
    for (size_t b = a + 1; b < L.dim; ++b)
      for (size_t k = 0; k < L.dim; ++k)
        if (sgn(L.sc[a][b][k]) != 0) br.push_back(Json::array({a, b, k, to_json(L.sc[a][b][k])}));
  j["brackets"] = std::move(br);
  j["form"] = dense_json(L.form);
  j["cartan"] = L.cartan_indices;
  Json roots = Json::array();
  for (const auto& r : L.roots)
    roots.push_back(Json{{"functional", to_json(r.functional)}, {"space", r.space}, {"positive", r.positive},
                         {"simple", r.simple}});
  j["roots"] = std::move(roots);
  if (L.theta_index) j["theta"] = *L.theta_index;
  j["claimed_simple"] = L.claimed_simple;
  return j;
}

FiniteGModule load_finite_module(AlgebraPtr alg, const Json& j) {
  if (j.contains("dim")) {
    if (alg->dim != 3 || alg->cartan_indices.size() != 1) bad("\"dim\" factors need sl2; use highest_weight");
    long d = j.at("dim").get<long>();
    if (d < 1) bad("factor dimension must be positive");
    return sl2_irrep(alg, static_cast<size_t>(d));
  }
  if (j.contains("highest_weight")) {
    std::vector<long> hw;
    for (const auto& x : j.at("highest_weight")) {
      if (!x.is_number_integer() || x.get<long>() < 0) bad("highest weights are nonnegative integers");
      hw.push_back(x.get<long>());
    }
    if (hw.size() != alg->cartan_indices.size()) bad("highest weight length differs from the Cartan rank");
    return irreducible_module(alg, hw);
  }
  if (j.contains("matrices")) {
    FiniteGModule U{alg, 0, {}};
    const Json& ms = j.at("matrices");
    for (size_t i = 0; i < alg->dim; ++i) {
      const auto& name = alg->basis_names[i];
      if (!ms.contains(name)) bad("missing action matrix for '" + name + "'");
      U.rho.push_back(matrix_from(ms.at(name)));
    }
    U.dim = U.rho[0].rows;
    for (const auto& m : U.rho)
      if (m.rows != U.dim || m.cols != U.dim) bad("action matrices must be square of equal size");
    if (!U.respects_bracket()) bad("action matrices do not respect the bracket");
    return U;
  }
  bad("a factor needs \"dim\", \"highest_weight\" or \"matrices\"");
}

EvaluationModule load_eval_module(const Json& j) {
  AlgebraPtr alg = load_algebra(j.contains("algebra") ? j.at("algebra") : Json("sl2"));
  std::vector<EvalFactor> fs;
  const Json& factors = field(j, "factors");
  if (!factors.is_array() || factors.empty()) bad("factors must be a nonempty array");
  for (const auto& f : factors) fs.push_back(EvalFactor{load_finite_module(alg, f), rational_from(field(f, "z"))});
  return EvaluationModule::make(alg, std::move(fs));
}

EvaluationModule load_eval_module_file(const std::string& path) { return load_eval_module(read_json_file(path)); }

Json eval_module_json(const EvaluationModule& M) {
  Json fs = Json::array();
  for (const auto& f : M.factors) fs.push_back(Json{{"dim", f.module.dim}, {"z", to_json(f.z)}});
  Json j{{"algebra", M.alg->name}, {"dim", M.dim}, {"factors", std::move(fs)}};
  if (!M.warnings.empty()) j["warnings"] = M.warnings;
  return j;
}

Json gvec_json(const GVec& v) {
  Json a = Json::array();
  for (const auto& l : v.layers) a.push_back(to_json(l));
  return a;
}

namespace {

Json gop_json(const GOp& op, const std::vector<size_t>& dims) {
  Json blocks = Json::array(), undefined = Json::array();
  for (size_t p = 0; p < op.src.size(); ++p) {
    if (!op.src[p]) {
      undefined.push_back(p);
      continue;
    }
    for (const auto& [q, m] : *op.src[p]) {
      if (q < 0 || q >= static_cast<long>(dims.size()) || m.is_zero()) continue;
      Json b = sparse_json(m);
      blocks.push_back(Json{{"from", p}, {"to", q}, {"entries", std::move(b["entries"])}});
    }
  }
  return Json{{"blocks", std::move(blocks)}, {"out_of_window_layers", std::move(undefined)}};
}

}  // namespace

Json graded_action_json(const GradedAction& A, long modes, const std::string& tag) {
  Json acts = Json::array();
  for (size_t i = 0; i < A.alg->dim; ++i)
    for (long m = -modes; m <= modes; ++m) {
      Json g = gop_json(A.basis_op(i, m), A.dims);
      acts.push_back(Json{{"element", A.alg->basis_names[i]}, {"mode", m}, {"blocks", std::move(g["blocks"])},
                          {"out_of_window_layers", std::move(g["out_of_window_layers"])}});
    }
  return Json{{"tag", tag}, {"level", to_json(A.level)}, {"depth", A.depth}, {"dims", A.dims},
              {"actions", std::move(acts)}};
}

Json graded_module_json(const GradedModule& M, long modes) {
  Json j{{"algebra", M.alg->name}, {"depth", M.depth}, {"level", to_json(M.level)},
         {"d_shift", to_json(M.d_shift)}, {"dims", M.dims}};
  j["labels"] = M.labels;
  Json a = graded_action_json(M.action(), modes, "module");
  j["actions"] = std::move(a["actions"]);
  return j;
}

}  // namespace affrep::io
