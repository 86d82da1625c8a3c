#pragma once
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "affrep/cat_e.hpp"
#include "affrep/cat_r.hpp"

namespace affrep {

/// U (x) t^n for n in [n_min, n_max]; d acts on U (x) t^n as n + 1, k as 0.
struct LoopModule {
  AlgebraPtr alg;
  FiniteGModule base;
  long n_min = 0, n_max = -1;

  size_t layers() const { return static_cast<size_t>(n_max - n_min + 1); }
  Rational d_eigenvalue(long n) const { return Rational(n + 1); }
  /// Block of a(m) from U t^n to U t^{n+m}; nullopt is OutOfWindow.
  std::optional<Matrix> action(const Vec& a, long m, long n) const;
};

LoopModule loop_module(const FiniteGModule& U, long n_min, long n_max);

/// Degree-preserving map W1 (x) L(U) -> W. Block (p, n) maps layer p of W1 tensor U t^n to layer p - n - 1 of W.
struct GradedHom {
  std::map<std::pair<long, long>, Matrix> blocks;
  bool is_zero() const;
  bool operator==(const GradedHom& o) const;
};

/// Map W1 (x) U -> completion of W. Block (p, q) maps layer p of W1 tensor U to layer q of W.
struct CompletedMap {
  std::map<std::pair<long, long>, Matrix> blocks;
  bool is_zero() const;
  bool operator==(const CompletedMap& o) const;
};

CompletedMap psi_hat(const GradedHom& psi, const Rational& z);
GradedHom phi_tilde(const CompletedMap& phi, const Rational& z);

/// Triple (W1, U, W) truncated to the depth of W1 and W.
struct IntertwinerSetting {
  GradedModule source;
  FiniteGModule eval;
  GradedModule target;
};

struct IntertwinerCheck {
  bool passed = true;
  long checked = 0;
  std::string failure;
};

/// a(m) psi = psi (a(m) (x) 1 + 1 (x) a(m)) on all blocks inside the window, |m| <= modes.
IntertwinerCheck check_graded_intertwiner(const IntertwinerSetting& S, const GradedHom& psi, long modes);
/// a(m) phi = phi (a(m) (x) 1) + z^m phi (1 (x) a) degreewise, |m| <= modes.
IntertwinerCheck check_completed_intertwiner(const IntertwinerSetting& S, const CompletedMap& phi, const Rational& z,
                                             long modes);

/// Basis of graded intertwiners within the window.
std::vector<GradedHom> solve_graded_intertwiners(const IntertwinerSetting& S, long modes);

struct RoundtripReport {
  bool passed = true;
  size_t solution_dim = 0;
  size_t sampled = 0;
  bool hat_intertwines = true;
  bool tilde_after_hat = true;
  bool hat_after_tilde = true;
  bool tilde_intertwines = true;
  bool injective = true;
  std::string failure;
};

/// Solves the intertwiner space, then checks both compositions on the basis plus `samples` random combinations.
RoundtripReport roundtrip_check(const IntertwinerSetting& S, const Rational& z, long modes, size_t samples,
                                unsigned long seed);

struct DegreeExtensionReport {
  bool infeasible = true;
  long equations = 0;
  size_t witness_element = 0;  // basis element a with a u != 0
  Vec witness_vector;          // u
  Vec witness_image;           // a u
};

DegreeExtensionReport check_no_degree_extension(const EvaluationModule& M);

struct FusionRow {
  long depth = 0;
  long modes = 0;
  size_t unknowns = 0;
  size_t rank = 0;
  size_t window_dim = 0;   // dimension of the truncated solution space
  size_t upper_bound = 0;  // its projection onto the top component
};

struct FusionReport {
  std::vector<FusionRow> rows;
  bool nonincreasing = true;
  std::optional<size_t> stabilized;
};

/// Upper bounds for dim Hom(W1 (x) U(z), completion of W) from truncations to depth 0..D.
FusionReport fusion_dim_modules(const GradedModule& W1, const FiniteGModule& U, const GradedModule& W,
                                const Rational& z, long modes);
FusionReport fusion_dim(AlgebraPtr alg, long level, const std::vector<long>& lambda, const std::vector<long>& mu,
                        const std::vector<long>& nu, long depth, long modes, const Rational& z = 1);

}  // namespace affrep
