#include "affrep/linalg.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <queue>

#include "affrep/error.hpp"
#include "modp.hpp"

namespace affrep {

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; });
}

Vec zeros(size_t n) { return Vec(n); }

Vec unit(size_t n, size_t i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

Vec add(const Vec& a, const Vec& b) {
  Vec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec scale(const Vec& a, const Rational& s) {
  Vec r(a);
  for (auto& x : r) x *= s;
  return r;
}

void axpy(Vec& a, const Rational& s, const Vec& b) {
  if (sgn(s) == 0) return;
  Rational t;
  for (size_t i = 0; i < a.size(); ++i) {
    if (sgn(b[i]) == 0) continue;
    t = s * b[i];
    a[i] += t;
  }
}

Matrix Matrix::identity(size_t n) {
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rs, size_t c) {
  Matrix m(rs.size(), c);
  for (size_t i = 0; i < rs.size(); ++i)
    for (size_t j = 0; j < c; ++j) m(i, j) = rs[i][j];
  return m;
}

Matrix Matrix::from_cols(const std::vector<Vec>& cs, size_t r) {
  Matrix m(r, cs.size());
  for (size_t j = 0; j < cs.size(); ++j)
    for (size_t i = 0; i < r; ++i) m(i, j) = cs[j][i];
  return m;
}

bool Matrix::is_zero() const { return affrep::is_zero(a); }

Vec Matrix::row(size_t i) const { return Vec(a.begin() + i * cols, a.begin() + (i + 1) * cols); }

Vec Matrix::col(size_t j) const {
  Vec v(rows);
  for (size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols, rows);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

static void check_same(const Matrix& x, const Matrix& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw Error(ErrorCode::DimensionMismatch, "matrix shapes differ");
}

Matrix operator+(const Matrix& x, const Matrix& y) {
  check_same(x, y);
  Matrix r(x);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

Matrix& operator+=(Matrix& x, const Matrix& y) {
  check_same(x, y);
  for (size_t i = 0; i < x.a.size(); ++i)
    if (sgn(y.a[i]) != 0) x.a[i] += y.a[i];
  return x;
}

Matrix operator-(const Matrix& x, const Matrix& y) {
  check_same(x, y);
  Matrix r(x);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  return r;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
  if (x.cols != y.rows) throw Error(ErrorCode::DimensionMismatch, "matrix product shapes");
  Matrix r(x.rows, y.cols);
  Rational t;
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t k = 0; k < x.cols; ++k) {
      const Rational& xik = x(i, k);
      if (sgn(xik) == 0) continue;
      for (size_t j = 0; j < y.cols; ++j) {
        const Rational& ykj = y(k, j);
        if (sgn(ykj) == 0) continue;
        t = xik * ykj;
        r(i, j) += t;
      }
    }
  return r;
}

Matrix operator*(const Rational& s, const Matrix& x) {
  Matrix r(x);
  for (auto& q : r.a) q *= s;
  return r;
}

Vec operator*(const Matrix& x, const Vec& v) {
  if (x.cols != v.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shapes");
  Vec r(x.rows);
  Rational t;
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t j = 0; j < x.cols; ++j) {
      if (sgn(x(i, j)) == 0 || sgn(v[j]) == 0) continue;
      t = x(i, j) * v[j];
      r[i] += t;
    }
  return r;
}

Matrix kron(const Matrix& x, const Matrix& y) {
  Matrix r(x.rows * y.rows, x.cols * y.cols);
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t j = 0; j < x.cols; ++j) {
      if (sgn(x(i, j)) == 0) continue;
      for (size_t k = 0; k < y.rows; ++k)
        for (size_t l = 0; l < y.cols; ++l)
          if (sgn(y(k, l)) != 0) r(i * y.rows + k, j * y.cols + l) = x(i, j) * y(k, l);
    }
  return r;
}

Matrix commutator(const Matrix& x, const Matrix& y) { return x * y - y * x; }

bool Echelon::reduce(Vec& v) const {
  for (size_t r = 0; r < rows_.size(); ++r) {
    size_t p = pivots_[r];
    if (sgn(v[p]) == 0) continue;
    Rational f = -v[p];
    axpy(v, f, rows_[r]);
  }
  return affrep::is_zero(v);
}

bool Echelon::insert(Vec v) {
  if (reduce(v)) return false;
  size_t p = 0;
  while (sgn(v[p]) == 0) ++p;
  Rational inv = 1 / v[p];
  for (auto& q : v) q *= inv;
  for (auto& row : rows_) {
    if (sgn(row[p]) == 0) continue;
    Rational f = -row[p];
    axpy(row, f, v);
  }
  pivot_row_[p] = rows_.size();
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

std::vector<size_t> Echelon::free_columns() const {
  std::vector<size_t> out;
  for (size_t c = 0; c < width_; ++c)
    if (!pivot_row_.count(c)) out.push_back(c);
  return out;
}

size_t rank(const Matrix& m) {
  Echelon e(m.cols);
  for (size_t i = 0; i < m.rows; ++i) e.insert(m.row(i));
  return e.rank();
}

std::vector<Vec> joint_kernel(const std::vector<Matrix>& ms, size_t cols) {
  Echelon e(cols);
  for (const auto& m : ms) {
    if (m.cols != cols) throw Error(ErrorCode::DimensionMismatch, "joint_kernel widths");
    for (size_t i = 0; i < m.rows; ++i) {
      if (e.rank() == cols) break;
      e.insert(m.row(i));
    }
  }
  std::vector<Vec> basis;
  std::map<size_t, size_t> prow;
  for (size_t r = 0; r < e.rank(); ++r) prow[e.pivots()[r]] = r;
  for (size_t f : e.free_columns()) {
    Vec x(cols);
    x[f] = 1;
    for (const auto& [p, r] : prow) x[p] = -e.rows()[r][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

std::vector<Vec> nullspace(const Matrix& m) { return joint_kernel({m}, m.cols); }

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  // Augmented elimination on [m | b].
  Echelon e(m.cols + 1);
  for (size_t i = 0; i < m.rows; ++i) {
    Vec r = m.row(i);
    r.push_back(b[i]);
    e.insert(std::move(r));
  }
  Vec x(m.cols);
  for (size_t r = 0; r < e.rank(); ++r) {
    size_t p = e.pivots()[r];
    if (p == m.cols) return std::nullopt;
    x[p] = e.rows()[r][m.cols];
  }
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows != m.cols) return std::nullopt;
  size_t n = m.rows;
  Echelon e(2 * n);
  for (size_t i = 0; i < n; ++i) {
    Vec r = m.row(i);
    r.resize(2 * n);
    r[n + i] = 1;
    e.insert(std::move(r));
  }
  Matrix inv(n, n);
  size_t found = 0;
  for (size_t r = 0; r < e.rank(); ++r) {
    size_t p = e.pivots()[r];
    if (p >= n) continue;
    ++found;
    for (size_t j = 0; j < n; ++j) inv(p, j) = e.rows()[r][n + j];
  }
  if (found != n) return std::nullopt;
  return inv;
}

std::vector<Vec> independent_subset(const std::vector<Vec>& vs, size_t width) {
  Echelon e(width);
  std::vector<Vec> out;
  for (const auto& v : vs)
    if (e.insert(v)) out.push_back(v);
  return out;
}

std::optional<Vec> coordinates(const std::vector<Vec>& basis, const Vec& v) {
  if (basis.empty()) {
    if (is_zero(v)) return Vec{};
    return std::nullopt;
  }
  Matrix m = Matrix::from_cols(basis, v.size());
  auto x = solve(m, v);
  return x;
}

namespace {

using Pivots = std::map<size_t, SparseSystem::Row>;

/// Reduces r against rows with unit leading entries; returns whether anything is left.
bool reduce_row(const Pivots& rows, SparseSystem::Row& r) {
  auto it = r.begin();
  while (it != r.end()) {
    auto pr = rows.find(it->first);
    if (pr == rows.end()) {
      ++it;
      continue;
    }
    size_t c = it->first;
    Rational f = it->second;
    for (const auto& [col, val] : pr->second) {
      auto [slot, inserted] = r.try_emplace(col, 0);
      slot->second -= f * val;
      if (sgn(slot->second) == 0) r.erase(slot);
    }
    it = r.lower_bound(c);
  }
  return !r.empty();
}

void insert_pivot(Pivots& rows, SparseSystem::Row r) {
  Rational inv = 1 / r.begin()->second;
  for (auto& [c, v] : r) v *= inv;
  size_t lead = r.begin()->first;
  rows.emplace(lead, std::move(r));
}

std::vector<Vec> back_substitute(const Pivots& rows, size_t n) {
  // Fully reduced form, largest pivot first.
  Pivots red;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    SparseSystem::Row r = it->second;
    auto jt = r.upper_bound(it->first);
    while (jt != r.end()) {
      auto pr = red.find(jt->first);
      if (pr == red.end()) {
        ++jt;
        continue;
      }
      size_t c = jt->first;
      Rational f = jt->second;
      for (const auto& [col, val] : pr->second) {
        auto [slot, ins] = r.try_emplace(col, 0);
        slot->second -= f * val;
        if (sgn(slot->second) == 0) r.erase(slot);
      }
      jt = r.upper_bound(c);
    }
    red.emplace(it->first, std::move(r));
  }
  std::vector<Vec> basis;
  for (size_t f = 0; f < n; ++f) {
    if (red.count(f)) continue;
    Vec x(n);
    x[f] = 1;
    for (const auto& [p, r] : red) {
      auto jt = r.find(f);
      if (jt != r.end()) x[p] = -jt->second;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Row echelon form modulo the prime, built greedily in row order.
struct ModularEchelon {
  std::vector<std::vector<std::pair<size_t, uint64_t>>> piv;  // leading column -> row with unit lead
  std::vector<char> has;
  std::vector<size_t> independent;  // independence modulo the prime implies rational independence
  bool complete = true;             // false if some row has a denominator divisible by the prime
};

ModularEchelon modular_echelon(const std::vector<SparseSystem::Row>& raw, size_t n) {
  using namespace modp;
  ModularEchelon E;
  E.piv.resize(n);
  E.has.assign(n, 0);
  std::vector<uint64_t> acc(n, 0);
  for (size_t k = 0; k < raw.size(); ++k) {
    std::priority_queue<size_t, std::vector<size_t>, std::greater<>> queue;
    std::vector<size_t> touched;
    bool ok = true;
    for (const auto& [c, v] : raw[k]) {
      auto m = reduce(v);
      if (!m) {
        ok = false;
        break;
      }
      acc[c] = *m;
      touched.push_back(c);
      queue.push(c);
    }
    if (!ok) {
      for (size_t c : touched) acc[c] = 0;
      E.independent.push_back(k);
      E.complete = false;
      continue;
    }
    std::vector<size_t> left;
    size_t last = SIZE_MAX;
    while (!queue.empty()) {
      size_t c = queue.top();
      queue.pop();
      if (c == last) continue;
      last = c;
      if (acc[c] == 0) continue;
      if (!E.has[c]) {
        left.push_back(c);
        continue;
      }
      uint64_t f = acc[c];
      for (const auto& [col, val] : E.piv[c]) {
        if (acc[col] == 0) {
          touched.push_back(col);
          queue.push(col);
        }
        acc[col] = submod(acc[col], mulmod(f, val));
      }
    }
    std::vector<std::pair<size_t, uint64_t>> row;
    for (size_t c : left)
      if (acc[c] != 0) row.emplace_back(c, acc[c]);
    for (size_t c : touched) acc[c] = 0;
    if (row.empty()) continue;
    uint64_t inv = invmod(row.front().second);
    for (auto& e : row) e.second = mulmod(e.second, inv);
    size_t lead = row.front().first;
    E.piv[lead] = std::move(row);
    E.has[lead] = 1;
    E.independent.push_back(k);
  }
  return E;
}

/// Smallest-height rational congruent to a modulo the prime, if both parts stay below sqrt(p / 2).
std::optional<Rational> reconstruct(uint64_t a) {
  using I = __int128;
  const I bound = 1073741823;  // floor(sqrt((2^61 - 1) / 2))
  I r0 = modp::kPrime, r1 = a, t0 = 0, t1 = 1;
  while (r1 > bound) {
    I q = r0 / r1;
    I r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1, r1 = r2, t0 = t1, t1 = t2;
  }
  if (t1 == 0 || t1 > bound || -t1 > bound) return std::nullopt;
  Rational x(static_cast<long>(r1), static_cast<long>(t1 < 0 ? -t1 : t1));
  if (t1 < 0) x = -x;
  return x;
}

/// Null space lifted from the modular echelon form; nullopt if some entry does not reconstruct.
std::optional<std::vector<Vec>> lifted_nullspace(const ModularEchelon& E, size_t n) {
  using namespace modp;
  std::vector<Vec> basis;
  std::vector<uint64_t> x(n);
  for (size_t f = 0; f < n; ++f) {
    if (E.has[f]) continue;
    std::fill(x.begin(), x.end(), 0);
    x[f] = 1;
    for (size_t p = n; p-- > 0;) {
      if (!E.has[p]) continue;
      uint64_t s = 0;
      for (size_t k = 1; k < E.piv[p].size(); ++k) {
        const auto& [c, v] = E.piv[p][k];
        if (x[c]) s = addmod(s, mulmod(v, x[c]));
      }
      x[p] = s ? kPrime - s : 0;
    }
    Vec v(n);
    for (size_t c = 0; c < n; ++c) {
      if (!x[c]) continue;
      auto q = reconstruct(x[c]);
      if (!q) return std::nullopt;
      v[c] = *q;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational dot(const SparseSystem::Row& r, const Vec& x) {
  Rational s = 0;
  for (const auto& [c, v] : r)
    if (sgn(x[c]) != 0) s += v * x[c];
  return s;
}

}  // namespace

void SparseSystem::add_row(Row r) {
  for (auto it = r.begin(); it != r.end();) {
    if (sgn(it->second) == 0) it = r.erase(it);
    else ++it;
  }
  if (r.empty()) return;
  raw_.push_back(std::move(r));
  solved_ = false;
}

void SparseSystem::solve() const {
  if (solved_) return;
  ModularEchelon E = modular_echelon(raw_, n_);
  // Lifted candidates: the modular nullity bounds the rational nullity from above,
  // so candidates that satisfy every row exactly form a basis.
  if (E.complete) {
    auto lifted = lifted_nullspace(E, n_);
    if (lifted && std::all_of(raw_.begin(), raw_.end(), [&](const Row& r) {
          return std::all_of(lifted->begin(), lifted->end(), [&](const Vec& x) { return sgn(dot(r, x)) == 0; });
        })) {
      basis_ = std::move(*lifted);
      rank_ = n_ - basis_.size();
      solved_ = true;
      return;
    }
  }
  Pivots rows;
  std::vector<char> used(raw_.size(), 0);
  for (size_t k : E.independent) {
    used[k] = 1;
    Row r = raw_[k];
    if (reduce_row(rows, r)) insert_pivot(rows, std::move(r));
  }
  // Rows dependent modulo the prime are checked exactly against the rational solutions.
  while (true) {
    basis_ = back_substitute(rows, n_);
    bool added = false;
    for (size_t k = 0; k < raw_.size(); ++k) {
      if (used[k]) continue;
      bool holds = std::all_of(basis_.begin(), basis_.end(), [&](const Vec& x) { return sgn(dot(raw_[k], x)) == 0; });
      if (holds) continue;
      used[k] = 1;
      Row r = raw_[k];
      if (reduce_row(rows, r)) {
        insert_pivot(rows, std::move(r));
        added = true;
      }
    }
    if (!added) break;
  }
  rank_ = rows.size();
  solved_ = true;
}

size_t SparseSystem::rank() const {
  solve();
  return rank_;
}

std::vector<Vec> SparseSystem::solution_basis() const {
  solve();
  return basis_;
}

size_t SparseSystem::projected_dimension(const std::vector<size_t>& coords) const {
  solve();
  if (basis_.empty() || coords.empty()) return 0;
  Matrix m(coords.size(), basis_.size());
  for (size_t j = 0; j < basis_.size(); ++j)
    for (size_t i = 0; i < coords.size(); ++i) m(i, j) = basis_[j][coords[i]];
  return affrep::rank(m);
}

}  // namespace affrep
