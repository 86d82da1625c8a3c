#include "affrep/cat_r.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "affrep/error.hpp"

namespace affrep {

namespace {

GOp synthesized_op(const std::vector<size_t>& dims, long depth, long m) {
  GOp g = GOp::zero(dims);
  if (m < -depth)
    for (auto& s : g.src) s.reset();
  return g;
}

using Key = std::vector<std::pair<long, size_t>>;  // (n, index) of a(-n), in PBW order
using Elem = std::map<std::pair<Key, size_t>, Rational>;

void accumulate(Elem& acc, const Elem& x, const Rational& s) {
  for (const auto& [k, c] : x) {
    Rational& slot = acc[k];
    slot += s * c;
    if (sgn(slot) == 0) acc.erase(k);
  }
}

bool key_gen_less(const std::pair<long, size_t>& x, const std::pair<long, size_t>& y) {
  return generator_less({x.first, x.second}, {y.first, y.second});
}

/// Moves a(m) through an ordered monomial acting on a vector of U.
class Straightener {
 public:
  Straightener(const LieAlgebraData& L, const FiniteGModule& U, const Rational& level)
      : L_(L), U_(U), level_(level) {}

  Elem act(size_t i, long m, const Key& mono, size_t u) {
    auto key = std::make_tuple(i, m, mono, u);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Elem r = compute(i, m, mono, u);
    memo_.emplace(std::move(key), r);
    return r;
  }

  Elem act(size_t i, long m, const Elem& v) {
    Elem r;
    for (const auto& [k, c] : v) accumulate(r, act(i, m, k.first, k.second), c);
    return r;
  }

 private:
  Elem compute(size_t i, long m, const Key& mono, size_t u) {
    Elem r;
    if (m < 0 && (mono.empty() || !key_gen_less(mono[0], {-m, i}))) {
      Key k{{-m, i}};
      k.insert(k.end(), mono.begin(), mono.end());
      r[{k, u}] = 1;
      return r;
    }
    if (mono.empty()) {
      if (m > 0) return r;
      for (size_t t = 0; t < U_.dim; ++t)
        if (sgn(U_.rho[i](t, u)) != 0) r[{Key{}, t}] = U_.rho[i](t, u);
      return r;
    }
    auto [n, j] = mono[0];
    Key rest(mono.begin() + 1, mono.end());
    // x y rest = y (x rest) + [x, y] rest
    accumulate(r, act(j, -n, act(i, m, rest, u)), 1);
    const Vec& br = L_.sc[i][j];
    for (size_t k = 0; k < br.size(); ++k)
      if (sgn(br[k]) != 0) accumulate(r, act(k, m - n, rest, u), br[k]);
    if (m == n && sgn(L_.form(i, j)) != 0) {
      Rational c = Rational(m) * L_.form(i, j) * level_;
      if (sgn(c) != 0) accumulate(r, Elem{{{rest, u}, Rational(1)}}, c);
    }
    return r;
  }

  const LieAlgebraData& L_;
  const FiniteGModule& U_;
  Rational level_;
  std::map<std::tuple<size_t, long, Key, size_t>, Elem> memo_;
};

}  // namespace

GOp GradedModule::op(size_t i, long m) const {
  if (m >= -depth && m <= depth) return ops.at(i).at(m + depth);
  return synthesized_op(dims, depth, m);
}

GOp GradedModule::op(const Vec& a, long m) const { return action().op(a, m); }

GradedAction GradedModule::action() const {
  auto self = std::make_shared<GradedModule>(*this);
  return GradedAction{alg, depth, dims, level, [self](size_t i, long m) { return self->op(i, m); }};
}

size_t GradedModule::total_dim() const {
  size_t s = 0;
  for (size_t d : dims) s += d;
  return s;
}

GradedModule GradedModule::truncate(long d) const {
  if (d < 0 || d > depth) throw Error(ErrorCode::PreconditionViolation, "truncation depth outside the stored range");
  GradedModule T{alg, d, std::vector<size_t>(dims.begin(), dims.begin() + d + 1), level, d_shift, {}, {}};
  T.labels.assign(labels.begin(), labels.begin() + std::min<long>(d + 1, labels.size()));
  for (size_t i = 0; i < alg->dim; ++i) {
    std::vector<GOp> row;
    for (long m = -d; m <= d; ++m) {
      const GOp& g = ops[i][m + depth];
      GOp t;
      for (long p = 0; p <= d; ++p) {
        if (p - m > d) {
          t.src.emplace_back(std::nullopt);
          continue;
        }
        std::map<long, Matrix> blocks;
        if (g.src[p])
          for (const auto& [q, mat] : *g.src[p])
            if (q >= 0 && q <= d) blocks.emplace(q, mat);
        t.src.emplace_back(std::move(blocks));
      }
      row.push_back(std::move(t));
    }
    T.ops.push_back(std::move(row));
  }
  return T;
}

GradedModule weyl_module(AlgebraPtr alg, const Rational& level, const FiniteGModule& U, long depth) {
  if (depth < 0) throw Error(ErrorCode::PreconditionViolation, "depth must be nonnegative");
  const LieAlgebraData& L = *alg;
  GradedModule M{alg, depth, {}, level, 0, {}, {}};
  std::vector<std::vector<Key>> layer_keys(depth + 1);
  std::vector<std::map<Key, size_t>> index(depth + 1);
  for (const auto& mono : pbw_monomials(depth, L.dim)) {
    long deg = monomial_degree(mono);
    Key k;
    for (const auto& g : mono) k.emplace_back(g.n, g.index);
    index[deg][k] = layer_keys[deg].size();
    layer_keys[deg].push_back(k);
    for (size_t u = 0; u < U.dim; ++u) {
      if (M.labels.size() <= static_cast<size_t>(deg)) M.labels.resize(deg + 1);
      std::string s = mono.empty() ? std::string() : monomial_str(mono, L) + " ";
      M.labels[deg].push_back(s + "u" + std::to_string(u));
    }
  }
  M.labels.resize(depth + 1);
  for (long p = 0; p <= depth; ++p) M.dims.push_back(layer_keys[p].size() * U.dim);
  Straightener S(L, U, level);
  for (size_t i = 0; i < L.dim; ++i) {
    std::vector<GOp> row;
    for (long m = -depth; m <= depth; ++m) {
      GOp g = GOp::zero(M.dims);
      for (long p = 0; p <= depth; ++p) {
        long q = p - m;
        if (q > depth) {
          g.src[p].reset();
          continue;
        }
        if (q < 0) continue;
        Matrix mat(M.dims[q], M.dims[p]);
        for (size_t b = 0; b < layer_keys[p].size(); ++b)
          for (size_t u = 0; u < U.dim; ++u) {
            size_t col = b * U.dim + u;
            for (const auto& [k, c] : S.act(i, m, layer_keys[p][b], u)) {
              size_t row_idx = index[q].at(k.first) * U.dim + k.second;
              mat(row_idx, col) = c;
            }
          }
        g.add_block(p, q, mat);
      }
      row.push_back(std::move(g));
    }
    M.ops.push_back(std::move(row));
  }
  return M;
}

std::optional<GVec> act(const GradedAction& M, const Vec& a, long m, const GVec& w) { return apply(M.op(a, m), w); }

std::vector<SingularVector> singular_vectors(const GradedAction& M, long n) {
  if (n < 0 || n > M.depth - 1)
    throw Error(ErrorCode::DepthTooSmall, "singular vectors need layer n <= depth - 1");
  const LieAlgebraData& L = *M.alg;
  std::vector<Matrix> cons;
  for (size_t i = 0; i < L.dim; ++i)
    for (long m = 1; m <= n; ++m) cons.push_back(M.basis_op(i, m).block(n, n - m, M.dims));
  for (const auto& r : L.roots)
    if (r.positive)
      for (size_t s : r.space) cons.push_back(M.basis_op(s, 0).block(n, n, M.dims));
  auto ker = joint_kernel(cons, M.dims[n]);
  std::vector<Matrix> hs;
  for (size_t c : L.cartan_indices) hs.push_back(M.basis_op(c, 0).block(n, n, M.dims));
  std::vector<SingularVector> out;
  for (auto& [wt, vecs] : weight_decompose(hs, ker))
    for (auto& v : vecs) out.push_back({n, std::move(v), wt});
  return out;
}

std::vector<Echelon> generated_submodule(const GradedAction& M, const std::vector<GVec>& seeds) {
  long D = M.depth;
  std::vector<Echelon> ech;
  for (size_t d : M.dims) ech.emplace_back(d);
  // Blocks cached per (i, m).
  std::map<std::pair<size_t, long>, GOp> cache;
  auto op = [&](size_t i, long m) -> const GOp& {
    auto it = cache.find({i, m});
    if (it == cache.end()) it = cache.emplace(std::make_pair(i, m), M.basis_op(i, m)).first;
    return it->second;
  };
  std::vector<std::pair<long, Vec>> queue;
  for (const auto& s : seeds)
    for (long p = 0; p <= D; ++p)
      if (!is_zero(s.layers[p]) && ech[p].insert(s.layers[p])) queue.emplace_back(p, s.layers[p]);
  for (size_t k = 0; k < queue.size(); ++k) {
    auto [p, v] = queue[k];
    for (size_t i = 0; i < M.alg->dim; ++i)
      for (long m = p - D; m <= p; ++m) {
        long q = p - m;
        if (ech[q].rank() == M.dims[q]) continue;
        const Matrix* blk = op(i, m).find_block(p, q);
        if (!blk) continue;
        Vec w = *blk * v;
        if (ech[q].insert(w)) queue.emplace_back(q, std::move(w));
      }
  }
  return ech;
}

GradedModule quotient(const GradedModule& M, const std::vector<GVec>& seeds) {
  auto sub = generated_submodule(M.action(), seeds);
  long D = M.depth;
  std::vector<std::vector<size_t>> keep;
  GradedModule Q{M.alg, D, {}, M.level, M.d_shift, {}, {}};
  for (long p = 0; p <= D; ++p) {
    keep.push_back(sub[p].free_columns());
    Q.dims.push_back(keep.back().size());
    std::vector<std::string> lab;
    for (size_t c : keep.back()) lab.push_back(p < static_cast<long>(M.labels.size()) ? M.labels[p][c] : "");
    Q.labels.push_back(std::move(lab));
  }
  for (size_t i = 0; i < M.alg->dim; ++i) {
    std::vector<GOp> row;
    for (long m = -D; m <= D; ++m) {
      const GOp& g = M.ops[i][m + D];
      GOp t = GOp::zero(Q.dims);
      for (long p = 0; p <= D; ++p) {
        if (!g.src[p]) {
          t.src[p].reset();
          continue;
        }
        long q = p - m;
        if (q < 0 || q > D) continue;
        Matrix big = g.block(p, q, M.dims);
        Matrix mat(Q.dims[q], Q.dims[p]);
        for (size_t c = 0; c < keep[p].size(); ++c) {
          Vec w = big.col(keep[p][c]);
          sub[q].reduce(w);
          for (size_t r = 0; r < keep[q].size(); ++r) mat(r, c) = w[keep[q][r]];
        }
        t.add_block(p, q, mat);
      }
      row.push_back(std::move(t));
    }
    Q.ops.push_back(std::move(row));
  }
  return Q;
}

Rational theta_pairing(const FiniteGModule& U) {
  auto hw = highest_weight_vectors(U);
  if (hw.empty()) throw Error(ErrorCode::PreconditionViolation, "module has no highest-weight vector");
  const Vec& v = hw[0].second[0];
  Vec hv = U.action(theta_coroot(*U.alg)) * v;
  for (size_t k = 0; k < v.size(); ++k)
    if (sgn(v[k]) != 0) return hv[k] / v[k];
  return 0;
}

GradedModule irreducible_quotient(AlgebraPtr alg, long level, const std::vector<long>& lambda, long depth) {
  if (level < 0) throw Error(ErrorCode::PreconditionViolation, "level must be a nonnegative integer");
  FiniteGModule U = irreducible_module(alg, lambda);
  Rational c = theta_pairing(U);
  if (c > level) throw Error(ErrorCode::PreconditionViolation, "highest weight violates the integrability bound");
  GradedModule W = weyl_module(alg, Rational(level), U, depth);
  if (depth == 0) return W;
  Rational gen_layer = Rational(level) - c + 1;
  if (gen_layer == depth)
    throw Error(ErrorCode::DepthTooSmall, "the generating singular vector sits in the top layer; increase depth");
  for (long round = 0; round <= depth; ++round) {
    std::vector<GVec> seeds;
    GradedAction A = W.action();
    for (long n = 1; n <= depth - 1; ++n)
      for (const auto& s : singular_vectors(A, n)) {
        GVec g = GVec::zero(W.dims);
        g.layers[n] = s.vector;
        seeds.push_back(std::move(g));
      }
    if (seeds.empty()) return W;
    W = quotient(W, seeds);
  }
  throw Error(ErrorCode::PreconditionViolation, "singular vectors persist after repeated quotients");
}

GradedModule direct_sum(const GradedModule& a, const GradedModule& b) {
  if (a.depth != b.depth || a.level != b.level || a.alg->name != b.alg->name)
    throw Error(ErrorCode::DimensionMismatch, "direct sum needs equal algebra, depth and level");
  long D = a.depth;
  GradedModule S{a.alg, D, {}, a.level, a.d_shift, {}, {}};
  for (long p = 0; p <= D; ++p) {
    S.dims.push_back(a.dims[p] + b.dims[p]);
    std::vector<std::string> lab;
    for (const auto& s : a.labels.at(p)) lab.push_back("A:" + s);
    for (const auto& s : b.labels.at(p)) lab.push_back("B:" + s);
    S.labels.push_back(std::move(lab));
  }
  for (size_t i = 0; i < a.alg->dim; ++i) {
    std::vector<GOp> row;
    for (long m = -D; m <= D; ++m) {
      const GOp &x = a.ops[i][m + D], &y = b.ops[i][m + D];
      GOp t = GOp::zero(S.dims);
      for (long p = 0; p <= D; ++p) {
        if (!x.src[p] || !y.src[p]) {
          t.src[p].reset();
          continue;
        }
        long q = p - m;
        if (q < 0 || q > D) continue;
        Matrix bx = x.block(p, q, a.dims), by = y.block(p, q, b.dims);
        Matrix mat(S.dims[q], S.dims[p]);
        for (size_t r = 0; r < bx.rows; ++r)
          for (size_t c = 0; c < bx.cols; ++c) mat(r, c) = bx(r, c);
        for (size_t r = 0; r < by.rows; ++r)
          for (size_t c = 0; c < by.cols; ++c) mat(a.dims[q] + r, a.dims[p] + c) = by(r, c);
        t.add_block(p, q, mat);
      }
      row.push_back(std::move(t));
    }
    S.ops.push_back(std::move(row));
  }
  return S;
}

std::vector<std::vector<Vec>> vacuum_space(const GradedAction& M) {
  std::vector<std::vector<Vec>> out;
  for (long p = 0; p <= std::max<long>(0, M.depth - 1); ++p) {
    std::vector<Matrix> cons;
    for (size_t i = 0; i < M.alg->dim; ++i)
      for (long m = 1; m <= p; ++m) cons.push_back(M.basis_op(i, m).block(p, p - m, M.dims));
    if (cons.empty()) {
      std::vector<Vec> all;
      for (size_t k = 0; k < M.dims[p]; ++k) all.push_back(unit(M.dims[p], k));
      out.push_back(std::move(all));
    } else {
      out.push_back(joint_kernel(cons, M.dims[p]));
    }
  }
  return out;
}

bool in_vacuum_space(const GradedAction& M, const GVec& u) {
  auto omega = vacuum_space(M);
  for (size_t p = 0; p < u.layers.size(); ++p) {
    if (is_zero(u.layers[p])) continue;
    if (p >= omega.size()) return false;
    Echelon e(M.dims[p]);
    for (const auto& v : omega[p]) e.insert(v);
    if (!e.contains(u.layers[p])) return false;
  }
  return true;
}

long d_value(const GradedAction& M, const GVec& u) {
  std::vector<Vec> imgs;
  for (long n = 1; n <= std::max<long>(0, u.top_layer()); ++n)
    for (size_t i = 0; i < M.alg->dim; ++i) {
      auto w = apply(M.basis_op(i, n), u);
      if (w && !w->is_zero()) imgs.push_back(w->flatten());
    }
  return static_cast<long>(independent_subset(imgs, M.total_dim()).size());
}

VacuumDescent find_vacuum_vector(const GradedAction& M, const GVec& start) {
  if (start.is_zero()) throw Error(ErrorCode::PreconditionViolation, "starting vector must be nonzero");
  auto nil = nilpotent_basis(*M.alg);
  VacuumDescent out;
  GVec u = start;
  long d = d_value(M, u);
  out.d_trace.push_back(d);
  while (d > 0) {
    DescentStep step;
    step.d = d;
    for (long k = u.top_layer(); k >= 1 && step.mode == 0; --k)
      for (size_t i = 0; i < M.alg->dim; ++i) {
        auto w = apply(M.basis_op(i, k), u);
        if (w && !w->is_zero()) {
          step.mode = k;
          break;
        }
      }
    bool found = false;
    for (size_t e = 0; e < nil.size() && !found; ++e) {
      GOp op = M.op(nil[e], step.mode);
      GVec v = u;
      long power = 0;
      while (true) {
        auto w = apply(op, v);
        if (!w) throw Error(ErrorCode::WindowExhausted, "descent left the window");
        if (w->is_zero()) break;
        v = std::move(*w);
        ++power;
      }
      if (power == 0) continue;
      found = true;
      step.element = e;
      step.power = power;
      u = std::move(v);
    }
    if (!found) throw Error(ErrorCode::PreconditionViolation, "no nilpotent-basis element acts nontrivially");
    long nd = d_value(M, u);
    if (nd >= d) throw Error(ErrorCode::WindowExhausted, "d(u) failed to decrease within the window");
    out.steps.push_back(step);
    out.d_trace.push_back(nd);
    d = nd;
  }
  out.vector = std::move(u);
  return out;
}

IntegrabilityReport check_integrable(const GradedAction& M, long N, long B, std::optional<long> max_layer) {
  IntegrabilityReport rep;
  rep.mode_bound = N;
  rep.power_bound = B;
  rep.max_layer = max_layer ? *max_layer : std::max<long>(0, M.depth - 1);
  auto nil = nilpotent_basis(*M.alg);
  for (size_t e = 0; e < nil.size(); ++e)
    for (long m = -N; m <= N; ++m) {
      GOp op = M.op(nil[e], m);
      bool unwitnessed = false;
      for (long p = 0; p <= rep.max_layer; ++p)
        for (size_t b = 0; b < M.dims[p]; ++b) {
          GVec v = GVec::unit(M.dims, p, b);
          PowerOutcome out = PowerOutcome::Fail;
          long j = 1;
          for (; j <= B; ++j) {
            auto w = apply(op, v);
            if (!w) {
              out = PowerOutcome::OutOfWindow;
              break;
            }
            if (w->is_zero()) {
              out = PowerOutcome::Zero;
              break;
            }
            v = std::move(*w);
          }
          // A raising mode leaves the finite window eventually, so an exhausted power bound is unwitnessed.
          if (out == PowerOutcome::Fail && m < 0) out = PowerOutcome::OutOfWindow;
          switch (out) {
            case PowerOutcome::Zero:
              ++rep.zero;
              rep.max_power = std::max(rep.max_power, j);
              break;
            case PowerOutcome::OutOfWindow:
              ++rep.out_of_window;
              if (p == 0) unwitnessed = true;
              break;
            case PowerOutcome::Fail:
              ++rep.fail;
              rep.passed = false;
              if (rep.failures.size() < 20)
                rep.failures.push_back("element " + std::to_string(e) + " mode " + std::to_string(m) + " layer " +
                                       std::to_string(p) + " vector " + std::to_string(b));
              break;
          }
        }
      if (unwitnessed) rep.not_witnessed.emplace_back(e, m);
    }
  return rep;
}

BracketReport check_bracket_fidelity(const GradedAction& M, long bound) {
  BracketReport rep;
  const LieAlgebraData& L = *M.alg;
  std::map<std::pair<size_t, long>, GOp> cache;
  auto op = [&](size_t i, long m) -> const GOp& {
    auto it = cache.find({i, m});
    if (it == cache.end()) it = cache.emplace(std::make_pair(i, m), M.basis_op(i, m)).first;
    return it->second;
  };
  for (size_t i = 0; i < L.dim; ++i)
    for (size_t j = 0; j < L.dim; ++j)
      for (long m = -bound; m <= bound; ++m)
        for (long n = -bound; n <= bound; ++n) {
          GOp lhs = commutator(op(i, m), op(j, n), M.dims);
          GOp rhs = M.op(L.sc[i][j], m + n);
          if (m + n == 0) rhs = rhs + (Rational(m) * L.form(i, j) * M.level) * GOp::identity(M.dims);
          ++rep.checked;
          if (!agree_where_defined(lhs, rhs, M.dims)) {
            rep.passed = false;
            if (rep.failure.empty())
              rep.failure = "[" + L.basis_names[i] + "(" + std::to_string(m) + ")," + L.basis_names[j] + "(" +
                            std::to_string(n) + ")]";
          }
        }
  return rep;
}

}  // namespace affrep
