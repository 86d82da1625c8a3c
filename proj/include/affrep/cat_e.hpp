#pragma once
#include <optional>
#include <string>
#include <vector>

#include "affrep/formal.hpp"
#include "affrep/lie.hpp"

namespace affrep {

struct EvalFactor {
  FiniteGModule module;
  Rational z;
};

/// Tensor product of evaluation factors U_i(z_i); k acts as 0.
struct EvaluationModule {
  AlgebraPtr alg;
  std::vector<EvalFactor> factors;
  std::vector<std::string> warnings;
  size_t dim = 1;

  /// Drops one-dimensional trivial factors with a warning; rejects z = 0.
  static EvaluationModule make(AlgebraPtr alg, std::vector<EvalFactor> factors);
  /// 1 (x) ... (x) a (x) ... (x) 1 acting in slot i.
  Matrix embedded(size_t i, const Vec& a) const;
  bool distinct_points() const;
  std::vector<Rational> points() const;
};

/// a(x) = sum of delta terms with operator coefficients.
using EvalAction = std::vector<DeltaTerm<Matrix>>;

/// Any finite-dimensional module whose fields are finite sums of (derivatives of) delta functions.
struct EModule {
  AlgebraPtr alg;
  size_t dim = 0;
  std::vector<EvalAction> actions;  // one per basis element

  Matrix mode(size_t i, long n) const;
  Matrix mode(const Vec& a, long n) const;
  /// a(x) coefficients on [lo,hi].
  SeriesWindow<Matrix> field(size_t i, long lo, long hi) const;
};

EModule to_emodule(const EvaluationModule& M);

Matrix evaluation_action(const EvaluationModule& M, const Vec& a, long n);
/// Minimal monic q with q(x)a(x) = 0 for every a.
LaurentPoly annihilator_poly(const EModule& M);
LaurentPoly annihilator_poly(const EvaluationModule& M);
/// True iff q(x)a(x) = 0 for all basis a, checked on a window of field coefficients.
bool annihilates(const EModule& M, const LaurentPoly& q, long lo, long hi);
LaurentPoly lagrange_projector(size_t i, const std::vector<Rational>& zs);
Matrix component_action_extract(const EvaluationModule& M, size_t i, const Vec& a, long n);

enum class Irreducibility { AbsolutelyIrreducible, Reducible, Inconclusive };
const char* irreducibility_name(Irreducibility k);

struct BurnsideResult {
  Irreducibility kind = Irreducibility::Inconclusive;
  size_t algebra_dim = 0;
  std::vector<Vec> witness;  // basis of a proper invariant subspace when Reducible
};

/// Closure of the algebra generated by the given matrices (plus identity).
BurnsideResult burnside_closure(const std::vector<Matrix>& gens, size_t n);
BurnsideResult burnside_irreducible(const EModule& M);
BurnsideResult burnside_irreducible(const EvaluationModule& M);
/// Generator set used for the closure: a(0), ..., a(r-1) with r = max(2, deg annihilator).
std::vector<Matrix> closure_generators(const EModule& M);

struct IsoResult {
  bool isomorphic = false;
  std::vector<size_t> permutation;  // factor i of the first maps to factor permutation[i] of the second
  std::string reason;
};

IsoResult is_isomorphic_eval(const EvaluationModule& A, const EvaluationModule& B);

struct LevelZeroReport {
  bool passed = true;
  std::string branch;           // "residue" or "degree-zero"
  bool residue_identity = true; // Res p(x1)p(x2) d/dx2 delta = -p(x1)p'(x1) on the window
  bool k_zero = true;
  LaurentPoly p;
  std::string detail;
};

bool level_zero_residue_identity(const LaurentPoly& p, long lo, long hi);
/// Central action read off from [a(1), b(-1)] - [a,b](0) for a pair with <a,b> != 0.
Matrix central_matrix(const EModule& M);
LevelZeroReport check_level_zero(const EModule& M, std::optional<LaurentPoly> p = std::nullopt);

struct Summand {
  std::vector<Vec> basis;
  Irreducibility kind = Irreducibility::Inconclusive;
};

std::vector<Summand> decompose_semisimple(const EModule& M);

struct MultiplicityReport {
  bool passed = true;
  std::vector<std::pair<Rational, long>> roots;  // nonzero root and multiplicity
};

MultiplicityReport min_annihilator_multiplicity_check(const EModule& M);

}  // namespace affrep
