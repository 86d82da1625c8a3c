#pragma once
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "affrep/rational.hpp"

namespace affrep {

using Vec = std::vector<Rational>;

bool is_zero(const Vec& v);
Vec zeros(size_t n);
Vec unit(size_t n, size_t i);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Rational& s);
/// a += s * b
void axpy(Vec& a, const Rational& s, const Vec& b);
inline Vec operator+(const Vec& a, const Vec& b) { return a.empty() ? b : b.empty() ? a : add(a, b); }
inline Vec operator*(const Rational& s, const Vec& a) { return scale(a, s); }

struct Matrix {
  size_t rows = 0, cols = 0;
  std::vector<Rational> a;

  Matrix() = default;
  Matrix(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}

  Rational& operator()(size_t i, size_t j) { return a[i * cols + j]; }
  const Rational& operator()(size_t i, size_t j) const { return a[i * cols + j]; }

  static Matrix identity(size_t n);
  static Matrix from_rows(const std::vector<Vec>& rows, size_t cols);
  static Matrix from_cols(const std::vector<Vec>& cols, size_t rows);

  bool is_zero() const;
  Vec row(size_t i) const;
  Vec col(size_t j) const;
  Matrix transpose() const;
  Vec flatten() const { return a; }

  bool operator==(const Matrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

Matrix operator+(const Matrix& x, const Matrix& y);
Matrix operator-(const Matrix& x, const Matrix& y);
Matrix operator*(const Matrix& x, const Matrix& y);
Matrix operator*(const Rational& s, const Matrix& x);
Vec operator*(const Matrix& x, const Vec& v);
Matrix& operator+=(Matrix& x, const Matrix& y);
Matrix kron(const Matrix& x, const Matrix& y);
Matrix commutator(const Matrix& x, const Matrix& y);

/// Incrementally grown row space kept in reduced echelon form.
class Echelon {
 public:
  explicit Echelon(size_t width) : width_(width) {}

  /// Reduces v in place against the stored rows; returns true if v is now 0.
  bool reduce(Vec& v) const;
  /// Inserts v if independent; returns whether it was.
  bool insert(Vec v);
  bool contains(Vec v) const { return reduce(v); }

  size_t rank() const { return rows_.size(); }
  size_t width() const { return width_; }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<size_t>& pivots() const { return pivots_; }
  /// Columns that carry no pivot, ascending.
  std::vector<size_t> free_columns() const;

 private:
  size_t width_;
  std::vector<Vec> rows_;
  std::vector<size_t> pivots_;
  std::map<size_t, size_t> pivot_row_;
};

size_t rank(const Matrix& m);
/// Basis of {x : m x = 0}.
std::vector<Vec> nullspace(const Matrix& m);
/// Basis of the joint kernel of a stack of matrices with a common column count.
std::vector<Vec> joint_kernel(const std::vector<Matrix>& ms, size_t cols);
/// Some x with m x = b, if one exists.
std::optional<Vec> solve(const Matrix& m, const Vec& b);
std::optional<Matrix> inverse(const Matrix& m);
/// Picks an independent subset of vs preserving order.
std::vector<Vec> independent_subset(const std::vector<Vec>& vs, size_t width);
/// Coordinates of v in the basis (columns), which must be independent and span v.
std::optional<Vec> coordinates(const std::vector<Vec>& basis, const Vec& v);

/// Sparse homogeneous system: collects rows, reports the solution space.
class SparseSystem {
 public:
  using Row = std::map<size_t, Rational>;
  explicit SparseSystem(size_t unknowns) : n_(unknowns) {}

  void add_row(Row r);
  size_t unknowns() const { return n_; }
  size_t rank() const;
  /// Basis of the solution space, one dense vector per free unknown.
  std::vector<Vec> solution_basis() const;
  /// Dimension of the projection of the solution space onto the given unknowns.
  size_t projected_dimension(const std::vector<size_t>& coords) const;

 private:
  void solve() const;
  size_t n_;
  std::vector<Row> raw_;
  mutable bool solved_ = false;
  mutable size_t rank_ = 0;
  mutable std::vector<Vec> basis_;
};

}  // namespace affrep
