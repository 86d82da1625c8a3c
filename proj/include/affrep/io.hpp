#pragma once
#include <string>
#include <vector>

#include <json.hpp>

#include "affrep/cat_c.hpp"
#include "affrep/cat_e.hpp"
#include "affrep/cat_r.hpp"
#include "affrep/fusion.hpp"
#include "affrep/lie.hpp"

namespace affrep::io {

using Json = nlohmann::ordered_json;

/// Rationals are always rendered as "p/q" or "p".
Json to_json(const Rational& q);
Rational rational_from(const Json& j);
Json to_json(const Vec& v);
Vec vec_from(const Json& j);
/// Dense rows of rational strings.
Json dense_json(const Matrix& m);
Matrix matrix_from(const Json& j);
/// {"rows", "cols", "entries": [[r, c, "v"], ...]} in row-major order.
Json sparse_json(const Matrix& m);
Json to_json(const LaurentPoly& p);

/// Accepts a builder name ("sl2", "sl3") or a full description object; validates it.
AlgebraPtr load_algebra(const Json& j);
AlgebraPtr load_algebra_file(const std::string& path_or_name);
Json algebra_json(const LieAlgebraData& L);

/// A factor: {"dim": d} (sl2 irreducible), {"highest_weight": [...]}, or {"matrices": {name: rows}}.
FiniteGModule load_finite_module(AlgebraPtr alg, const Json& j);
/// {"algebra": ..., "factors": [{..., "z": "p/q"}]}
EvaluationModule load_eval_module(const Json& j);
EvaluationModule load_eval_module_file(const std::string& path);
Json eval_module_json(const EvaluationModule& M);

/// Per-layer dimensions, labels and sparse action blocks for |m| <= modes, in a fixed order.
Json graded_module_json(const GradedModule& M, long modes);
Json graded_action_json(const GradedAction& A, long modes, const std::string& tag);
Json gvec_json(const GVec& v);

Json read_json_file(const std::string& path);

}  // namespace affrep::io
