#include "affrep/fusion.hpp"

#include <random>

#include "affrep/error.hpp"

namespace affrep {

std::optional<Matrix> LoopModule::action(const Vec& a, long m, long n) const {
  if (n < n_min || n > n_max) throw Error(ErrorCode::PreconditionViolation, "t-power outside the loop range");
  if (n + m < n_min || n + m > n_max) return std::nullopt;
  return base.action(a);
}

LoopModule loop_module(const FiniteGModule& U, long n_min, long n_max) {
  if (n_min > n_max) throw Error(ErrorCode::PreconditionViolation, "empty t-range");
  return LoopModule{U.alg, U, n_min, n_max};
}

namespace {

bool blocks_equal(const std::map<std::pair<long, long>, Matrix>& a, const std::map<std::pair<long, long>, Matrix>& b) {
  for (const auto& [k, m] : a) {
    auto it = b.find(k);
    if (it == b.end() ? !m.is_zero() : !(it->second == m)) return false;
  }
  for (const auto& [k, m] : b)
    if (!a.count(k) && !m.is_zero()) return false;
  return true;
}

bool blocks_zero(const std::map<std::pair<long, long>, Matrix>& a) {
  for (const auto& [k, m] : a)
    if (!m.is_zero()) return false;
  return true;
}

Vec flatten_blocks(const std::map<std::pair<long, long>, Matrix>& a) {
  Vec out;
  for (const auto& [k, m] : a) out.insert(out.end(), m.a.begin(), m.a.end());
  return out;
}

}  // namespace

bool GradedHom::is_zero() const { return blocks_zero(blocks); }
bool GradedHom::operator==(const GradedHom& o) const { return blocks_equal(blocks, o.blocks); }
bool CompletedMap::is_zero() const { return blocks_zero(blocks); }
bool CompletedMap::operator==(const CompletedMap& o) const { return blocks_equal(blocks, o.blocks); }

CompletedMap psi_hat(const GradedHom& psi, const Rational& z) {
  if (sgn(z) == 0) throw Error(ErrorCode::ZeroEvaluationPoint, "z must be nonzero");
  CompletedMap phi;
  for (const auto& [k, m] : psi.blocks) {
    auto [p, n] = k;
    phi.blocks.emplace(std::make_pair(p, p - n - 1), pow(z, -n - 1) * m);
  }
  return phi;
}

GradedHom phi_tilde(const CompletedMap& phi, const Rational& z) {
  if (sgn(z) == 0) throw Error(ErrorCode::ZeroEvaluationPoint, "z must be nonzero");
  GradedHom psi;
  for (const auto& [k, m] : phi.blocks) {
    auto [p, q] = k;
    long n = p - q - 1;
    psi.blocks.emplace(std::make_pair(p, n), pow(z, n + 1) * m);
  }
  return psi;
}

namespace {

struct Ops {
  std::map<std::pair<size_t, long>, GOp> src, tgt;
  const IntertwinerSetting& S;
  explicit Ops(const IntertwinerSetting& s) : S(s) {}
  const GOp& source(size_t i, long m) {
    auto it = src.find({i, m});
    if (it == src.end()) it = src.emplace(std::make_pair(i, m), S.source.op(i, m)).first;
    return it->second;
  }
  const GOp& target(size_t i, long m) {
    auto it = tgt.find({i, m});
    if (it == tgt.end()) it = tgt.emplace(std::make_pair(i, m), S.target.op(i, m)).first;
    return it->second;
  }
};

Matrix block_or_zero(const std::map<std::pair<long, long>, Matrix>& b, long x, long y, size_t rows, size_t cols) {
  auto it = b.find({x, y});
  return it == b.end() ? Matrix(rows, cols) : it->second;
}

/// Visits every degreewise equation (i, m, p, q) of the completed form: the map W1_p (x) U -> W_q after a(m).
template <class F>
void for_each_equation(const IntertwinerSetting& S, long modes, F&& visit) {
  long D1 = S.source.depth, D = S.target.depth;
  for (size_t i = 0; i < S.source.alg->dim; ++i)
    for (long m = -modes; m <= modes; ++m)
      for (long p = 0; p <= D1; ++p)
        for (long q = 0; q <= D; ++q) {
          if (q + m > D || p - m > D1) continue;
          visit(i, m, p, q);
        }
}

}  // namespace

IntertwinerCheck check_completed_intertwiner(const IntertwinerSetting& S, const CompletedMap& phi, const Rational& z,
                                             long modes) {
  IntertwinerCheck rep;
  Ops ops(S);
  const auto &d1 = S.source.dims, &d = S.target.dims;
  size_t du = S.eval.dim;
  if (S.source.level != S.target.level && !phi.is_zero()) {
    rep.passed = false;
    rep.failure = "levels differ but the map is nonzero";
  }
  for_each_equation(S, modes, [&](size_t i, long m, long p, long q) {
    size_t cols = d1[p] * du;
    Matrix lhs(d[q], cols), rhs(d[q], cols);
    if (q + m >= 0) {
      const Matrix* A = ops.target(i, m).find_block(q + m, q);
      if (A) lhs = *A * block_or_zero(phi.blocks, p, q + m, d[q + m], cols);
    }
    if (p - m >= 0) {
      const Matrix* B = ops.source(i, m).find_block(p, p - m);
      if (B) rhs += block_or_zero(phi.blocks, p - m, q, d[q], d1[p - m] * du) * kron(*B, Matrix::identity(du));
    }
    rhs += pow(z, m) * (block_or_zero(phi.blocks, p, q, d[q], cols) *
                        kron(Matrix::identity(d1[p]), S.eval.rho[i]));
    ++rep.checked;
    if (!(lhs == rhs) && rep.passed) {
      rep.passed = false;
      rep.failure = S.source.alg->basis_names[i] + "(" + std::to_string(m) + ") at source layer " +
                    std::to_string(p) + ", target layer " + std::to_string(q);
    }
  });
  return rep;
}

IntertwinerCheck check_graded_intertwiner(const IntertwinerSetting& S, const GradedHom& psi, long modes) {
  IntertwinerCheck rep;
  Ops ops(S);
  const auto &d1 = S.source.dims, &d = S.target.dims;
  size_t du = S.eval.dim;
  long D1 = S.source.depth, D = S.target.depth;
  if (S.source.level != S.target.level && !psi.is_zero()) {
    rep.passed = false;
    rep.failure = "levels differ but the map is nonzero";
  }
  for (size_t i = 0; i < S.source.alg->dim; ++i)
    for (long m = -modes; m <= modes; ++m)
      for (long p = 0; p <= D1; ++p) {
        if (p - m > D1) continue;
        for (long tq = 0; tq <= D; ++tq) {
          // psi(w1 (x) u (x) t^n) lands in layer p - n - 1; after a(m) in layer tq.
          long n = p - 1 - m - tq, q = tq + m;
          if (q > D) continue;
          size_t cols = d1[p] * du;
          Matrix lhs(d[tq], cols), rhs(d[tq], cols);
          if (q >= 0) {
            const Matrix* A = ops.target(i, m).find_block(q, tq);
            if (A) lhs = *A * block_or_zero(psi.blocks, p, n, d[q], cols);
          }
          if (p - m >= 0) {
            const Matrix* B = ops.source(i, m).find_block(p, p - m);
            if (B) rhs += block_or_zero(psi.blocks, p - m, n, d[tq], d1[p - m] * du) * kron(*B, Matrix::identity(du));
          }
          rhs += block_or_zero(psi.blocks, p, n + m, d[tq], cols) * kron(Matrix::identity(d1[p]), S.eval.rho[i]);
          ++rep.checked;
          if (!(lhs == rhs) && rep.passed) {
            rep.passed = false;
            rep.failure = S.source.alg->basis_names[i] + "(" + std::to_string(m) + ") on layer " +
                          std::to_string(p) + " (x) t^" + std::to_string(n);
          }
        }
      }
  return rep;
}

namespace {

/// Cartan eigenvalues of each basis vector per layer, or nullopt if some basis vector is not a weight vector.
std::optional<std::vector<std::vector<Vec>>> layer_weights(const GradedModule& M) {
  std::vector<std::vector<Vec>> out(M.depth + 1);
  for (long p = 0; p <= M.depth; ++p) out[p].assign(M.dims[p], Vec{});
  for (size_t c : M.alg->cartan_indices) {
    GOp h = M.op(c, 0);
    for (long p = 0; p <= M.depth; ++p) {
      Matrix b = h.block(p, p, M.dims);
      for (size_t j = 0; j < M.dims[p]; ++j) {
        for (size_t r = 0; r < M.dims[p]; ++r)
          if (r != j && sgn(b(r, j)) != 0) return std::nullopt;
        out[p][j].push_back(b(j, j));
      }
    }
  }
  return out;
}

std::optional<std::vector<Vec>> module_weights(const FiniteGModule& U) {
  std::vector<Vec> out(U.dim);
  for (size_t c : U.alg->cartan_indices) {
    const Matrix& b = U.rho[c];
    for (size_t j = 0; j < U.dim; ++j) {
      for (size_t r = 0; r < U.dim; ++r)
        if (r != j && sgn(b(r, j)) != 0) return std::nullopt;
      out[j].push_back(b(j, j));
    }
  }
  return out;
}

/// Unknown entries of the blocks (p, q); entries excluded by weights are fixed to zero.
struct UnknownMap {
  std::map<std::pair<long, long>, std::vector<long>> index;  // entry r * cols + c -> unknown or -1
  size_t count = 0;
  long at(long p, long q, size_t r, size_t c, size_t cols) const {
    auto it = index.find({p, q});
    return it == index.end() ? -1 : it->second[r * cols + c];
  }
};

UnknownMap make_unknowns(const IntertwinerSetting& S, bool filter) {
  UnknownMap u;
  size_t du = S.eval.dim;
  std::optional<std::vector<std::vector<Vec>>> w1, w;
  std::optional<std::vector<Vec>> wu;
  if (filter) {
    w1 = layer_weights(S.source);
    w = layer_weights(S.target);
    wu = module_weights(S.eval);
  }
  bool use = filter && w1 && w && wu;
  for (long p = 0; p <= S.source.depth; ++p)
    for (long q = 0; q <= S.target.depth; ++q) {
      size_t cols = S.source.dims[p] * du, rows = S.target.dims[q];
      std::vector<long> idx(rows * cols, -1);
      for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) {
          if (use) {
            const Vec &a = (*w1)[p][c / du], &b = (*wu)[c % du], &t = (*w)[q][r];
            bool ok = true;
            for (size_t k = 0; k < t.size(); ++k) ok = ok && (a[k] + b[k] == t[k]);
            if (!ok) continue;
          }
          idx[r * cols + c] = static_cast<long>(u.count++);
        }
      u.index.emplace(std::make_pair(p, q), std::move(idx));
    }
  return u;
}

SparseSystem build_system(const IntertwinerSetting& S, const UnknownMap& U, const Rational& z, long modes) {
  SparseSystem sys(U.count);
  size_t du = S.eval.dim;
  const auto &d1 = S.source.dims, &d = S.target.dims;
  if (S.source.level != S.target.level) {
    for (size_t k = 0; k < U.count; ++k) sys.add_row({{k, Rational(1)}});
    return sys;
  }
  Ops ops(S);
  for_each_equation(S, modes, [&](size_t i, long m, long p, long q) {
    size_t cols = d1[p] * du;
    const Matrix* A = q + m >= 0 ? ops.target(i, m).find_block(q + m, q) : nullptr;
    const Matrix* B = p - m >= 0 ? ops.source(i, m).find_block(p, p - m) : nullptr;
    const Matrix& rho = S.eval.rho[i];
    Rational zm = pow(z, m);
    for (size_t r = 0; r < d[q]; ++r)
      for (size_t c = 0; c < cols; ++c) {
        SparseSystem::Row row;
        auto add = [&](long k, const Rational& v) {
          if (k < 0 || sgn(v) == 0) return;
          Rational& slot = row[static_cast<size_t>(k)];
          slot += v;
        };
        // (A Phi_{p,q+m})[r,c]
        if (A)
          for (size_t r2 = 0; r2 < d[q + m]; ++r2)
            if (sgn((*A)(r, r2)) != 0) add(U.at(p, q + m, r2, c, cols), (*A)(r, r2));
        // -(Phi_{p-m,q} (B (x) 1))[r,c]
        if (B) {
          size_t b = c / du, u = c % du, cols2 = d1[p - m] * du;
          for (size_t b2 = 0; b2 < d1[p - m]; ++b2)
            if (sgn((*B)(b2, b)) != 0) add(U.at(p - m, q, r, b2 * du + u, cols2), -(*B)(b2, b));
        }
        // -z^m (Phi_{p,q} (1 (x) rho))[r,c]
        {
          size_t b = c / du, u = c % du;
          for (size_t u2 = 0; u2 < du; ++u2)
            if (sgn(rho(u2, u)) != 0) add(U.at(p, q, r, b * du + u2, cols), -zm * rho(u2, u));
        }
        for (auto it = row.begin(); it != row.end();)
          it = sgn(it->second) == 0 ? row.erase(it) : std::next(it);
        if (!row.empty()) sys.add_row(std::move(row));
      }
  });
  return sys;
}

CompletedMap unpack(const IntertwinerSetting& S, const UnknownMap& U, const Vec& x) {
  CompletedMap phi;
  size_t du = S.eval.dim;
  for (const auto& [k, idx] : U.index) {
    auto [p, q] = k;
    size_t cols = S.source.dims[p] * du, rows = S.target.dims[q];
    Matrix m(rows, cols);
    for (size_t r = 0; r < rows; ++r)
      for (size_t c = 0; c < cols; ++c) {
        long j = idx[r * cols + c];
        if (j >= 0) m(r, c) = x[j];
      }
    phi.blocks.emplace(k, std::move(m));
  }
  return phi;
}

}  // namespace

std::vector<GradedHom> solve_graded_intertwiners(const IntertwinerSetting& S, long modes) {
  UnknownMap U = make_unknowns(S, true);
  SparseSystem sys = build_system(S, U, Rational(1), modes);
  std::vector<GradedHom> out;
  // At z = 1 the completed and graded forms carry the same blocks.
  for (const auto& x : sys.solution_basis()) out.push_back(phi_tilde(unpack(S, U, x), Rational(1)));
  return out;
}

RoundtripReport roundtrip_check(const IntertwinerSetting& S, const Rational& z, long modes, size_t samples,
                                unsigned long seed) {
  RoundtripReport rep;
  auto basis = solve_graded_intertwiners(S, modes);
  rep.solution_dim = basis.size();
  std::vector<GradedHom> pool = basis;
  pool.push_back(GradedHom{});
  for (const auto& [k, m] : basis.empty() ? std::map<std::pair<long, long>, Matrix>{} : basis[0].blocks)
    pool.back().blocks.emplace(k, Matrix(m.rows, m.cols));
  std::mt19937_64 rng(seed);
  for (size_t s = 0; s < samples && !basis.empty(); ++s) {
    GradedHom g = pool.back();
    for (const auto& b : basis) {
      Rational c(static_cast<long>(rng() % 7) - 3);
      for (const auto& [k, m] : b.blocks) g.blocks[k] = g.blocks[k] + c * m;
    }
    pool.push_back(std::move(g));
  }
  auto note = [&](bool& flag, bool ok, const std::string& what) {
    if (ok) return;
    flag = false;
    if (rep.failure.empty()) rep.failure = what;
  };
  std::vector<Vec> hats;
  for (size_t idx = 0; idx < pool.size(); ++idx) {
    const GradedHom& psi = pool[idx];
    CompletedMap phi = psi_hat(psi, z);
    std::string tag = " (sample " + std::to_string(idx) + ")";
    auto hc = check_completed_intertwiner(S, phi, z, modes);
    note(rep.hat_intertwines, hc.passed, "hat map fails to intertwine: " + hc.failure + tag);
    GradedHom back = phi_tilde(phi, z);
    note(rep.tilde_after_hat, back == psi, "tilde after hat differs" + tag);
    note(rep.hat_after_tilde, psi_hat(back, z) == phi, "hat after tilde differs" + tag);
    auto tc = check_graded_intertwiner(S, back, modes);
    note(rep.tilde_intertwines, tc.passed, "tilde map fails to intertwine: " + tc.failure + tag);
    note(rep.injective, psi.is_zero() || !phi.is_zero(), "nonzero map with zero hat" + tag);
    if (idx < basis.size()) hats.push_back(flatten_blocks(phi.blocks));
  }
  if (!hats.empty()) note(rep.injective, independent_subset(hats, hats[0].size()).size() == basis.size(),
                          "hat maps of the basis are dependent");
  rep.sampled = pool.size();
  rep.passed = rep.hat_intertwines && rep.tilde_after_hat && rep.hat_after_tilde && rep.tilde_intertwines &&
               rep.injective;
  return rep;
}

DegreeExtensionReport check_no_degree_extension(const EvaluationModule& M) {
  const LieAlgebraData& L = *M.alg;
  size_t n = M.dim;
  DegreeExtensionReport rep;
  bool found = false;
  for (size_t i = 0; i < L.dim && !found; ++i) {
    Matrix A = evaluation_action(M, L.basis(i), 0);
    for (size_t c = 0; c < n && !found; ++c) {
      Vec img = A.col(c);
      if (is_zero(img)) continue;
      found = true;
      rep.witness_element = i;
      rep.witness_vector = unit(n, c);
      rep.witness_image = img;
    }
  }
  if (!found) throw Error(ErrorCode::PreconditionViolation, "the base module is trivial");
  // Unknowns: entries of d (row-major), then t scaling the right-hand side. Feasible iff some solution has t != 0.
  size_t t = n * n;
  SparseSystem sys(t + 1);
  for (size_t i = 0; i < L.dim; ++i)
    for (long m = -2; m <= 2; ++m) {
      Matrix A = evaluation_action(M, L.basis(i), m);
      for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) {
          SparseSystem::Row row;
          for (size_t k = 0; k < n; ++k) {
            if (sgn(A(k, c)) != 0) row[r * n + k] += A(k, c);
            if (sgn(A(r, k)) != 0) row[k * n + c] -= A(r, k);
          }
          if (m != 0 && sgn(A(r, c)) != 0) row[t] -= Rational(m) * A(r, c);
          for (auto it = row.begin(); it != row.end();)
            it = sgn(it->second) == 0 ? row.erase(it) : std::next(it);
          ++rep.equations;
          if (!row.empty()) sys.add_row(std::move(row));
        }
    }
  rep.infeasible = sys.projected_dimension({t}) == 0;
  return rep;
}

FusionReport fusion_dim_modules(const GradedModule& W1, const FiniteGModule& U, const GradedModule& W,
                                const Rational& z, long modes) {
  if (sgn(z) == 0) throw Error(ErrorCode::ZeroEvaluationPoint, "z must be nonzero");
  FusionReport rep;
  long D = std::min(W1.depth, W.depth);
  for (long d = 0; d <= D; ++d) {
    IntertwinerSetting S{W1.truncate(d), U, W.truncate(d)};
    UnknownMap un = make_unknowns(S, true);
    SparseSystem sys = build_system(S, un, z, modes);
    FusionRow row;
    row.depth = d;
    row.modes = modes;
    row.unknowns = un.count;
    row.rank = sys.rank();
    row.window_dim = un.count - sys.rank();
    std::vector<size_t> top;
    for (long k : un.index.at({0, 0}))
      if (k >= 0) top.push_back(static_cast<size_t>(k));
    row.upper_bound = sys.projected_dimension(top);
    if (!rep.rows.empty() && row.upper_bound > rep.rows.back().upper_bound) rep.nonincreasing = false;
    rep.rows.push_back(row);
  }
  if (rep.rows.size() >= 2 && rep.rows[rep.rows.size() - 1].upper_bound == rep.rows[rep.rows.size() - 2].upper_bound)
    rep.stabilized = rep.rows.back().upper_bound;
  return rep;
}

FusionReport fusion_dim(AlgebraPtr alg, long level, const std::vector<long>& lambda, const std::vector<long>& mu,
                        const std::vector<long>& nu, long depth, long modes, const Rational& z) {
  if (level <= 0) throw Error(ErrorCode::PreconditionViolation, "level must be a positive integer");
  GradedModule W1 = irreducible_quotient(alg, level, lambda, depth);
  GradedModule W = irreducible_quotient(alg, level, nu, depth);
  return fusion_dim_modules(W1, irreducible_module(alg, mu), W, z, modes);
}

}  // namespace affrep
