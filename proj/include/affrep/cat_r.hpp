#pragma once
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "affrep/affine.hpp"
#include "affrep/graded.hpp"
#include "affrep/lie.hpp"

namespace affrep {

/// Depth-truncated N-graded module. a(m) maps layer n to layer n - m.
/// Stored ops cover |m| <= depth; larger m kills every layer, smaller m leaves the window.
struct GradedModule {
  AlgebraPtr alg;
  long depth = 0;
  std::vector<size_t> dims;
  Rational level;
  Rational d_shift;
  std::vector<std::vector<GOp>> ops;               // ops[i][m + depth]
  std::vector<std::vector<std::string>> labels;    // per layer basis labels

  GOp op(size_t i, long m) const;
  GOp op(const Vec& a, long m) const;
  GradedAction action() const;
  size_t total_dim() const;
  /// Same module cut to layers 0..d.
  GradedModule truncate(long d) const;
};

GradedModule weyl_module(AlgebraPtr alg, const Rational& level, const FiniteGModule& U, long depth);
/// a(m)w; nullopt is OutOfWindow, distinct from the zero vector.
std::optional<GVec> act(const GradedAction& M, const Vec& a, long m, const GVec& w);

struct SingularVector {
  long layer = 0;
  Vec vector;
  std::vector<Rational> weight;  // Cartan eigenvalues
};

/// Requires 0 <= n <= depth - 1.
std::vector<SingularVector> singular_vectors(const GradedAction& M, long n);
/// Submodule generated by seeds, per layer, within the stored depth.
std::vector<Echelon> generated_submodule(const GradedAction& M, const std::vector<GVec>& seeds);
GradedModule quotient(const GradedModule& M, const std::vector<GVec>& seeds);
/// Quotient of the Weyl module of L(lambda) by everything generated from singular vectors in layers 1..D-1.
GradedModule irreducible_quotient(AlgebraPtr alg, long level, const std::vector<long>& lambda, long depth);
/// lambda(h_theta) for the highest weight of U.
Rational theta_pairing(const FiniteGModule& U);
GradedModule direct_sum(const GradedModule& a, const GradedModule& b);

/// Joint kernel of all a(n), n >= 1, per layer 0..depth-1.
std::vector<std::vector<Vec>> vacuum_space(const GradedAction& M);
bool in_vacuum_space(const GradedAction& M, const GVec& u);
/// dim of the span of a(n)u over basis a and n >= 1.
long d_value(const GradedAction& M, const GVec& u);

struct DescentStep {
  long d = 0;            // d(u) before the step
  long mode = 0;         // largest k with g(k)u != 0
  size_t element = 0;    // index into nilpotent_basis
  long power = 0;        // maximal m with a(k)^m u != 0
};

struct VacuumDescent {
  GVec vector;
  std::vector<long> d_trace;  // d(u) per iterate, ending in 0
  std::vector<DescentStep> steps;
};

VacuumDescent find_vacuum_vector(const GradedAction& M, const GVec& u);

enum class PowerOutcome { Zero, OutOfWindow, Fail };

struct IntegrabilityReport {
  bool passed = true;
  long mode_bound = 0, power_bound = 0, max_layer = 0;
  long max_power = 0;  // largest j with a(m)^j w = 0 first reached at j
  long zero = 0, out_of_window = 0, fail = 0;
  std::vector<std::pair<size_t, long>> not_witnessed;  // (element, m) leaving the window from layer 0
  std::vector<std::string> failures;
};

/// Nilpotent-basis elements and modes in [-N, N] on layers 0..max_layer (default depth - 1).
IntegrabilityReport check_integrable(const GradedAction& M, long N, long B, std::optional<long> max_layer = std::nullopt);

struct BracketReport {
  bool passed = true;
  long checked = 0;
  std::string failure;
};

/// [a(m), b(n)] = [a,b](m+n) + m<a,b>delta_{m+n,0} level wherever both sides are in window.
BracketReport check_bracket_fidelity(const GradedAction& M, long bound);

}  // namespace affrep
