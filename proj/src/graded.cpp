#include "affrep/graded.hpp"

#include "affrep/error.hpp"

namespace affrep {

GVec GVec::zero(const std::vector<size_t>& dims) {
  GVec v;
  for (size_t d : dims) v.layers.emplace_back(d);
  return v;
}

GVec GVec::unit(const std::vector<size_t>& dims, size_t layer, size_t i) {
  GVec v = zero(dims);
  v.layers[layer][i] = 1;
  return v;
}

bool GVec::is_zero() const {
  for (const auto& l : layers)
    if (!affrep::is_zero(l)) return false;
  return true;
}

long GVec::top_layer() const {
  for (long p = static_cast<long>(layers.size()) - 1; p >= 0; --p)
    if (!affrep::is_zero(layers[p])) return p;
  return -1;
}

Vec GVec::flatten() const {
  Vec out;
  for (const auto& l : layers) out.insert(out.end(), l.begin(), l.end());
  return out;
}

GVec& GVec::operator+=(const GVec& o) {
  for (size_t p = 0; p < layers.size(); ++p)
    for (size_t i = 0; i < layers[p].size(); ++i) layers[p][i] += o.layers[p][i];
  return *this;
}

GVec operator*(const Rational& s, const GVec& a) {
  GVec r(a);
  for (auto& l : r.layers)
    for (auto& x : l) x *= s;
  return r;
}

GOp GOp::zero(const std::vector<size_t>& dims) {
  GOp g;
  g.src.assign(dims.size(), std::map<long, Matrix>{});
  return g;
}

GOp GOp::identity(const std::vector<size_t>& dims) {
  GOp g = zero(dims);
  for (size_t p = 0; p < dims.size(); ++p) (*g.src[p])[static_cast<long>(p)] = Matrix::identity(dims[p]);
  return g;
}

Matrix GOp::block(size_t p, long q, const std::vector<size_t>& dims) const {
  const auto& m = src.at(p);
  if (!m) throw Error(ErrorCode::WindowExhausted, "block requested from an undefined layer");
  auto it = m->find(q);
  if (it != m->end()) return it->second;
  size_t rows = (q >= 0 && q < static_cast<long>(dims.size())) ? dims[q] : 0;
  return Matrix(rows, dims[p]);
}

const Matrix* GOp::find_block(size_t p, long q) const {
  const auto& m = src.at(p);
  if (!m) throw Error(ErrorCode::WindowExhausted, "block requested from an undefined layer");
  auto it = m->find(q);
  return it == m->end() ? nullptr : &it->second;
}

void GOp::add_block(size_t p, long q, const Matrix& m) {
  if (!src[p]) return;
  auto it = src[p]->find(q);
  if (it == src[p]->end()) src[p]->emplace(q, m);
  else it->second += m;
}

std::optional<GVec> apply(const GOp& op, const GVec& v) {
  std::vector<size_t> dims;
  for (const auto& l : v.layers) dims.push_back(l.size());
  GVec out = GVec::zero(dims);
  for (size_t p = 0; p < v.layers.size(); ++p) {
    if (affrep::is_zero(v.layers[p])) continue;
    if (!op.src[p]) return std::nullopt;
    for (const auto& [q, m] : *op.src[p]) {
      if (q < 0 || q >= static_cast<long>(dims.size())) continue;
      Vec w = m * v.layers[p];
      for (size_t i = 0; i < w.size(); ++i) out.layers[q][i] += w[i];
    }
  }
  return out;
}

GOp operator+(const GOp& a, const GOp& b) {
  GOp r;
  r.src.resize(a.src.size());
  for (size_t p = 0; p < a.src.size(); ++p) {
    if (!a.src[p] || !b.src[p]) continue;
    r.src[p] = *a.src[p];
    for (const auto& [q, m] : *b.src[p]) r.add_block(p, q, m);
  }
  return r;
}

GOp operator*(const Rational& s, const GOp& a) {
  GOp r(a);
  for (auto& l : r.src)
    if (l)
      for (auto& [q, m] : *l) m = s * m;
  return r;
}

GOp compose(const GOp& a, const GOp& b, const std::vector<size_t>& dims) {
  GOp r;
  r.src.resize(b.src.size());
  for (size_t p = 0; p < b.src.size(); ++p) {
    if (!b.src[p]) continue;
    std::map<long, Matrix> acc;
    bool ok = true;
    for (const auto& [q, mb] : *b.src[p]) {
      if (q < 0 || q >= static_cast<long>(dims.size()) || mb.is_zero()) continue;
      if (!a.src[q]) {
        ok = false;
        break;
      }
      for (const auto& [t, ma] : *a.src[q]) {
        if (t < 0 || t >= static_cast<long>(dims.size())) continue;
        Matrix prod = ma * mb;
        auto it = acc.find(t);
        if (it == acc.end()) acc.emplace(t, std::move(prod));
        else it->second += prod;
      }
    }
    if (ok) r.src[p] = std::move(acc);
  }
  return r;
}

GOp commutator(const GOp& a, const GOp& b, const std::vector<size_t>& dims) {
  return compose(a, b, dims) + Rational(-1) * compose(b, a, dims);
}

bool agree_where_defined(const GOp& a, const GOp& b, const std::vector<size_t>& dims) {
  for (size_t p = 0; p < dims.size(); ++p) {
    if (!a.src[p] || !b.src[p]) continue;
    for (size_t q = 0; q < dims.size(); ++q)
      if (a.block(p, q, dims) != b.block(p, q, dims)) return false;
  }
  return true;
}

GOp GradedAction::op(const Vec& a, long m) const {
  GOp r = GOp::zero(dims);
  for (size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0) r = r + a[i] * basis_op(i, m);
  return r;
}

size_t GradedAction::total_dim() const {
  size_t s = 0;
  for (size_t d : dims) s += d;
  return s;
}

}  // namespace affrep
