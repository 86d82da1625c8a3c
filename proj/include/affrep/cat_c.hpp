#pragma once
#include <map>
#include <string>
#include <vector>

#include "affrep/cat_e.hpp"
#include "affrep/cat_r.hpp"
#include "affrep/formal.hpp"
#include "affrep/graded.hpp"

namespace affrep {

/// Carrier W (x) M with a(m) = A_W(m) (x) 1 + 1 (x) A_M(m); cert is a polynomial with cert(x)a(x) lower-truncated.
struct CategoryCAction {
  AlgebraPtr alg;
  long depth = 0;
  std::vector<size_t> dims;
  Rational level;
  LaurentPoly cert;
  GradedAction pi;
};

/// A_W(m) (x) 1 on the carrier.
GradedAction restricted_tensor_part(const GradedModule& W, size_t eval_dim);
/// 1 (x) A_M(m) on the carrier; layer-preserving.
GradedAction evaluation_tensor_part(const GradedModule& W, const EModule& M);

CategoryCAction tensor_with_eval(const GradedModule& W, const EvaluationModule& M);
CategoryCAction tensor_with_emodule(const GradedModule& W, const EModule& M);

struct PsiCoefficient {
  GVec value;
  long k = 0;                       // top layer of w plus one: x^k f(x) a(x) w has no negative powers
  std::vector<Rational> beta;       // expansion of the inverse of the normalized certificate
  std::map<long, Rational> gamma;   // value = sum_t gamma_t a(t) w
};

/// Coefficient of x^{-n-1} in psi_R(a(x))w.
PsiCoefficient psi_r_coefficient(const CategoryCAction& A, const Vec& a, long n, const GVec& w);
/// psi_R(a(x))w on [lo, hi], computed from the series f(x)a(x)w.
SeriesWindow<GVec> psi_r_apply(const CategoryCAction& A, const Vec& a, const GVec& w, long lo, long hi);

struct FactoredAction {
  CategoryCAction source;
  GradedAction pi_R;  // level = source level
  GradedAction pi_E;  // level = 0
};

FactoredAction factorize(const CategoryCAction& A);

struct CommuteReport {
  bool passed = true;
  long checked = 0;
  bool commuting = true;
  bool r_bracket = true;
  bool e_bracket = true;
  std::string failure;
};

CommuteReport check_commuting_factors(const FactoredAction& F, long window);

/// Element of the space of fields on a finite space: a finite Laurent part plus delta terms.
struct EbarElement {
  size_t dim = 0;
  std::map<long, Matrix> restricted;
  std::vector<DeltaTerm<Matrix>> delta;

  SeriesWindow<Matrix> series(long lo, long hi) const;
  SeriesWindow<Matrix> restricted_series(long lo, long hi) const;
  SeriesWindow<Matrix> delta_series(long lo, long hi) const;
  /// prod (x - z)^{j+1} over the delta terms.
  LaurentPoly certificate() const;
};

/// psi_R of a window series y given f with f*y vanishing below exponent `lower`.
SeriesWindow<Matrix> psi_r_series(const LaurentPoly& f, const SeriesWindow<Matrix>& y, long lower);

struct ProjectionReport {
  bool passed = true;
  long checked = 0;
  bool idempotent = true;   // psi_R psi_R = psi_R
  bool complement = true;   // psi_R + psi_E = id
  bool annihilates = true;  // psi_R psi_E = 0 and psi_E psi_R = 0
  bool recovered = true;    // psi_R X = restricted part, psi_E X = delta part
  std::string failure;
};

ProjectionReport verify_projection(const std::vector<EbarElement>& family, long lo, long hi);

struct HomReport {
  bool passed = true;
  long checked = 0;
  bool restricted_ok = true;
  bool evaluation_ok = true;
  std::string failure;
};

/// f given per layer (layer p of the first carrier to layer p of the second). Throws NotAHomomorphism.
HomReport hom_preserves_factors(const std::vector<Matrix>& f, const FactoredAction& A1, const FactoredAction& A2,
                                long window);

struct TransferReport {
  bool passed = true;
  IntegrabilityReport full, restricted, evaluation;
  long r = 0;            // degree of the certificate
  long k = 0;            // power bound witnessed for the full action
  long bound_r1 = 0;     // k(r+1)
  long bound_r2 = 0;     // k(r+2)
  bool within_bound = true;
};

TransferReport integrability_transfer(const FactoredAction& F, long N, long B);

}  // namespace affrep
