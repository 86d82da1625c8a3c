#pragma once
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "affrep/lie.hpp"

namespace affrep {

/// Vector of a depth-truncated graded space: one component per layer 0..depth.
struct GVec {
  std::vector<Vec> layers;

  static GVec zero(const std::vector<size_t>& dims);
  static GVec unit(const std::vector<size_t>& dims, size_t layer, size_t i);
  bool is_zero() const;
  /// Highest layer with a nonzero component, or -1.
  long top_layer() const;
  Vec flatten() const;
  GVec& operator+=(const GVec& o);
  friend GVec operator+(GVec a, const GVec& b) { return a += b; }
  friend GVec operator*(const Rational& s, const GVec& a);
  bool operator==(const GVec& o) const { return layers == o.layers; }
};

/// Linear operator between graded spaces, stored blockwise per source layer.
/// A source layer whose image leaves the window is undefined (nullopt), never silently zero.
struct GOp {
  std::vector<std::optional<std::map<long, Matrix>>> src;

  static GOp zero(const std::vector<size_t>& dims);
  static GOp identity(const std::vector<size_t>& dims);
  bool defined_at(size_t p) const { return src[p].has_value(); }
  /// Block from layer p to layer q (zero matrix if absent). Requires defined_at(p).
  Matrix block(size_t p, long q, const std::vector<size_t>& dims) const;
  /// Stored block or nullptr (absent blocks are zero). Requires defined_at(p).
  const Matrix* find_block(size_t p, long q) const;
  void add_block(size_t p, long q, const Matrix& m);
};

/// nullopt signals OutOfWindow: the input touches an undefined source layer.
std::optional<GVec> apply(const GOp& op, const GVec& v);
/// Sum; undefined where either summand is.
GOp operator+(const GOp& a, const GOp& b);
GOp operator*(const Rational& s, const GOp& a);
/// a after b.
GOp compose(const GOp& a, const GOp& b, const std::vector<size_t>& dims);
/// a b - b a on the source layers where both compositions are defined.
GOp commutator(const GOp& a, const GOp& b, const std::vector<size_t>& dims);
/// Equality restricted to source layers where both are defined.
bool agree_where_defined(const GOp& a, const GOp& b, const std::vector<size_t>& dims);

/// A family of mode operators a(m) on a depth-truncated graded carrier.
struct GradedAction {
  AlgebraPtr alg;
  long depth = 0;
  std::vector<size_t> dims;
  Rational level;
  std::function<GOp(size_t, long)> basis_op;

  GOp op(const Vec& a, long m) const;
  size_t total_dim() const;
};

}  // namespace affrep
