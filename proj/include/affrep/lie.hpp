#pragma once
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "affrep/linalg.hpp"

namespace affrep {

struct RootEntry {
  Vec functional;              // values alpha(h_j) on the Cartan basis, in cartan_indices order
  std::vector<size_t> space;   // basis indices spanning the root space
  bool positive = false;
  bool simple = false;
};

struct LieAlgebraData {
  std::string name;
  size_t dim = 0;
  std::vector<std::string> basis_names;
  /// sc[i][j] = coordinates of [b_i, b_j]
  std::vector<std::vector<Vec>> sc;
  Matrix form;
  std::vector<size_t> cartan_indices;
  std::vector<RootEntry> roots;
  std::optional<size_t> theta_index;  // index into roots
  bool claimed_simple = false;
  /// Optional faithful matrix realization (the defining representation of the builders).
  std::vector<Matrix> defining;

  Vec basis(size_t i) const { return unit(dim, i); }
  Rational pair(const Vec& a, const Vec& b) const;  // invariant form
  std::optional<size_t> index_of(const std::string& name) const;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebraData>;

AlgebraPtr build_sl2();
AlgebraPtr build_sl3();
/// Builds an algebra from a matrix basis with the trace form and computed roots.
/// positive lists basis indices of positive root vectors; theta is the basis index of e_theta.
LieAlgebraData from_matrix_basis(std::string name, std::vector<std::string> names, const std::vector<Matrix>& mats,
                                 std::vector<size_t> cartan, const std::vector<size_t>& positive, size_t theta_vector);

Vec bracket(const LieAlgebraData& L, const Vec& a, const Vec& b);
Matrix ad_matrix(const LieAlgebraData& L, const Vec& a);

struct AlgebraReport {
  bool passed = true;
  std::string check;                 // name of the first failing check
  std::vector<size_t> witness;       // offending basis indices
  std::string detail;
};

AlgebraReport validate_algebra(const LieAlgebraData& L);

struct RootDecomposition {
  std::vector<size_t> cartan;
  std::vector<RootEntry> roots;       // computed, grouped by functional
  bool matches_declared = true;
};

RootDecomposition root_decomposition(const LieAlgebraData& L);

struct SL2Triple {
  Vec e, f, h;
};

/// Triple attached to the positive root roots[root], normalized so [h,e]=2e, [e,f]=h.
SL2Triple sl2_triple(const LieAlgebraData& L, size_t root);
/// e_alpha, f_alpha for every positive root, then f+h-e for every simple root.
std::vector<Vec> nilpotent_basis(const LieAlgebraData& L);
/// Smallest k with ad(a)^k = 0, or nullopt if none up to dim+1.
std::optional<size_t> ad_nilpotency_index(const LieAlgebraData& L, const Vec& a);
/// Coroot h_theta as an algebra element.
Vec theta_coroot(const LieAlgebraData& L);

/// Finite-dimensional representation by action matrices of the basis.
struct FiniteGModule {
  AlgebraPtr alg;
  size_t dim = 0;
  std::vector<Matrix> rho;

  Matrix action(const Vec& a) const;
  bool is_trivial() const;
  /// rho([a,b]) == [rho a, rho b] on all basis pairs.
  bool respects_bracket() const;
};

FiniteGModule trivial_module(AlgebraPtr alg, size_t dim = 1);
/// Irreducible module with highest weight given by values on the Cartan basis (Dynkin labels
/// for the shipped builders). For sl2, V_d has highest weight d-1.
FiniteGModule irreducible_module(AlgebraPtr alg, const std::vector<long>& highest_weight);
FiniteGModule sl2_irrep(AlgebraPtr alg, size_t d);
FiniteGModule tensor(const FiniteGModule& a, const FiniteGModule& b);
FiniteGModule direct_sum(const FiniteGModule& a, const FiniteGModule& b);
/// P rho P^{-1}
FiniteGModule conjugate(const FiniteGModule& m, const Matrix& P);
/// Restriction to an invariant subspace with the given basis.
FiniteGModule restrict_to(const FiniteGModule& m, const std::vector<Vec>& basis);

/// Joint highest-weight vectors (killed by positive simple root vectors) grouped by weight.
std::vector<std::pair<std::vector<Rational>, std::vector<Vec>>> highest_weight_vectors(const FiniteGModule& m);
/// Splits a subspace (given by a basis) into joint eigenspaces of commuting operators with integer
/// eigenvalues. Throws NotDiagonalizable if the eigenvalues do not account for the whole subspace.
std::vector<std::pair<std::vector<Rational>, std::vector<Vec>>> weight_decompose(const std::vector<Matrix>& hs,
                                                                                 const std::vector<Vec>& subspace);
/// Subspace generated from vectors under the action, as an independent basis of weight-compatible vectors.
std::vector<Vec> generate_submodule(const std::vector<Matrix>& ops, const std::vector<Vec>& seeds, size_t dim);

}  // namespace affrep
