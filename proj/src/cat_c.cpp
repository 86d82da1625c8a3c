#include "affrep/cat_c.hpp"

#include <algorithm>
#include <climits>
#include <memory>

#include "affrep/error.hpp"

namespace affrep {

namespace {

using OpCache = std::shared_ptr<std::map<std::pair<size_t, long>, GOp>>;

std::function<GOp(size_t, long)> cached(std::function<GOp(size_t, long)> f) {
  OpCache cache = std::make_shared<std::map<std::pair<size_t, long>, GOp>>();
  return [cache, f](size_t i, long m) {
    auto it = cache->find({i, m});
    if (it == cache->end()) it = cache->emplace(std::make_pair(i, m), f(i, m)).first;
    return it->second;
  };
}

}  // namespace

GradedAction restricted_tensor_part(const GradedModule& W, size_t eval_dim) {
  std::vector<size_t> dims;
  for (size_t d : W.dims) dims.push_back(d * eval_dim);
  auto Wp = std::make_shared<GradedModule>(W);
  auto f = [Wp, dims, eval_dim](size_t i, long m) {
    GOp src = Wp->op(i, m);
    GOp g;
    Matrix I = Matrix::identity(eval_dim);
    for (size_t p = 0; p < dims.size(); ++p) {
      if (!src.src[p]) {
        g.src.emplace_back(std::nullopt);
        continue;
      }
      std::map<long, Matrix> blocks;
      for (const auto& [q, mat] : *src.src[p])
        if (q >= 0 && q < static_cast<long>(dims.size())) blocks.emplace(q, kron(mat, I));
      g.src.emplace_back(std::move(blocks));
    }
    return g;
  };
  return GradedAction{W.alg, W.depth, dims, W.level, cached(f)};
}

GradedAction evaluation_tensor_part(const GradedModule& W, const EModule& M) {
  std::vector<size_t> dims;
  for (size_t d : W.dims) dims.push_back(d * M.dim);
  auto Mp = std::make_shared<EModule>(M);
  std::vector<size_t> wd = W.dims;
  auto f = [Mp, dims, wd](size_t i, long m) {
    GOp g = GOp::zero(dims);
    Matrix A = Mp->mode(i, m);
    if (A.is_zero()) return g;
    for (size_t p = 0; p < dims.size(); ++p)
      if (wd[p] > 0) g.add_block(p, static_cast<long>(p), kron(Matrix::identity(wd[p]), A));
    return g;
  };
  return GradedAction{W.alg, W.depth, dims, Rational(0), cached(f)};
}

CategoryCAction tensor_with_emodule(const GradedModule& W, const EModule& M) {
  GradedAction R = restricted_tensor_part(W, M.dim), E = evaluation_tensor_part(W, M);
  auto f = [R, E](size_t i, long m) { return R.basis_op(i, m) + E.basis_op(i, m); };
  CategoryCAction A{W.alg, W.depth, R.dims, W.level, annihilator_poly(M), {}};
  A.pi = GradedAction{W.alg, W.depth, R.dims, W.level, cached(f)};
  return A;
}

CategoryCAction tensor_with_eval(const GradedModule& W, const EvaluationModule& M) {
  return tensor_with_emodule(W, to_emodule(M));
}

PsiCoefficient psi_r_coefficient(const CategoryCAction& A, const Vec& a, long n, const GVec& w) {
  PsiCoefficient out;
  out.value = GVec::zero(A.dims);
  long T = w.top_layer();
  out.k = T + 1;
  if (T < 0 || n > T) return out;
  auto [s, ft] = A.cert.normalize_monomial();
  long N = T - n;
  out.beta = expand_inverse(ft, N).coeffs;
  for (long i = 0; i <= N; ++i)
    for (const auto& [j, fj] : A.cert.terms()) {
      Rational& g = out.gamma[n + i + j - s];
      g += out.beta[i] * fj;
    }
  for (auto it = out.gamma.begin(); it != out.gamma.end();) {
    if (sgn(it->second) == 0) {
      it = out.gamma.erase(it);
      continue;
    }
    auto img = apply(A.pi.op(a, it->first), w);
    if (!img) throw Error(ErrorCode::WindowUnderflow, "mode " + std::to_string(it->first) + " leaves the window");
    out.value += it->second * *img;
    ++it;
  }
  return out;
}

SeriesWindow<GVec> psi_r_apply(const CategoryCAction& A, const Vec& a, const GVec& w, long lo, long hi) {
  GVec zero = GVec::zero(A.dims);
  SeriesWindow<GVec> out(lo, hi, zero);
  long T = w.top_layer();
  if (T < 0) return out;
  auto [s, ft] = A.cert.normalize_monomial();
  long trunc = s - 1 - T;  // f(x)a(x)w has no exponent below this
  const long pad = 2;
  long aw_lo = trunc - A.cert.max_exp() - pad, aw_hi = std::max(hi, trunc);
  SeriesWindow<GVec> aw(aw_lo, aw_hi, zero);
  for (long e = aw_lo; e <= aw_hi; ++e) {
    auto img = apply(A.pi.op(a, -e - 1), w);
    if (!img) throw Error(ErrorCode::WindowUnderflow, "a(" + std::to_string(-e - 1) + ")w leaves the window");
    aw.at(e) = std::move(*img);
  }
  SeriesWindow<GVec> faw = multiply(A.cert, aw);
  for (long e = faw.lo; e < trunc; ++e)
    if (!faw.at(e).is_zero()) throw Error(ErrorCode::PreconditionViolation, "certificate does not truncate a(x)w");
  long N = std::max<long>(0, hi + s - trunc);
  auto beta = expand_inverse(ft, N).coeffs;
  for (long E = lo; E <= hi; ++E) {
    GVec acc = zero;
    for (long i = 0; E + s - i >= trunc; ++i) acc += beta[i] * faw.at(E + s - i);
    out.at(E) = std::move(acc);
  }
  return out;
}

FactoredAction factorize(const CategoryCAction& A) {
  long D = A.depth;
  size_t dimg = A.alg->dim;
  auto table = std::make_shared<std::vector<std::vector<GOp>>>(dimg);
  for (size_t i = 0; i < dimg; ++i)
    for (long m = -D; m <= D; ++m) {
      GOp full = A.pi.basis_op(i, m);
      GOp g = GOp::zero(A.dims);
      for (size_t p = 0; p < A.dims.size(); ++p) {
        if (!full.src[p]) {
          g.src[p].reset();
          continue;
        }
        std::map<long, Matrix> blocks;
        bool ok = true;
        for (size_t b = 0; b < A.dims[p] && ok; ++b) {
          GVec w = GVec::unit(A.dims, p, b);
          try {
            GVec v = psi_r_coefficient(A, unit(dimg, i), m, w).value;
            for (size_t q = 0; q < v.layers.size(); ++q) {
              if (is_zero(v.layers[q])) continue;
              auto it = blocks.try_emplace(static_cast<long>(q), A.dims[q], A.dims[p]).first;
              for (size_t r = 0; r < A.dims[q]; ++r) it->second(r, b) = v.layers[q][r];
            }
          } catch (const Error& e) {
            if (e.code() != ErrorCode::WindowUnderflow) throw;
            ok = false;
          }
        }
        if (ok) g.src[p] = std::move(blocks);
        else g.src[p].reset();
      }
      (*table)[i].push_back(std::move(g));
    }
  std::vector<size_t> dims = A.dims;
  auto r_op = [table, D, dims](size_t i, long m) {
    if (m >= -D && m <= D) return (*table)[i][m + D];
    GOp g = GOp::zero(dims);
    if (m < -D)
      for (auto& s : g.src) s.reset();
    return g;
  };
  GradedAction pi = A.pi;
  auto e_op = [pi, r_op](size_t i, long m) { return pi.basis_op(i, m) + Rational(-1) * r_op(i, m); };
  FactoredAction F{A, GradedAction{A.alg, D, A.dims, A.level, r_op}, GradedAction{A.alg, D, A.dims, 0, cached(e_op)}};
  return F;
}

CommuteReport check_commuting_factors(const FactoredAction& F, long window) {
  CommuteReport rep;
  const LieAlgebraData& L = *F.source.alg;
  GOp zero = GOp::zero(F.pi_R.dims);
  for (size_t i = 0; i < L.dim; ++i)
    for (size_t j = 0; j < L.dim; ++j)
      for (long m = -window; m <= window; ++m)
        for (long n = -window; n <= window; ++n) {
          ++rep.checked;
          GOp c = commutator(F.pi_R.basis_op(i, m), F.pi_E.basis_op(j, n), F.pi_R.dims);
          if (!agree_where_defined(c, zero, F.pi_R.dims)) {
            rep.commuting = false;
            if (rep.failure.empty())
              rep.failure = "[R " + L.basis_names[i] + "(" + std::to_string(m) + "), E " + L.basis_names[j] + "(" +
                            std::to_string(n) + ")] != 0";
          }
        }
  auto r = check_bracket_fidelity(F.pi_R, window);
  auto e = check_bracket_fidelity(F.pi_E, window);
  rep.r_bracket = r.passed;
  rep.e_bracket = e.passed;
  rep.checked += r.checked + e.checked;
  if (rep.failure.empty() && !r.passed) rep.failure = "restricted part bracket " + r.failure;
  if (rep.failure.empty() && !e.passed) rep.failure = "evaluation part bracket " + e.failure;
  rep.passed = rep.commuting && rep.r_bracket && rep.e_bracket;
  return rep;
}

SeriesWindow<Matrix> EbarElement::restricted_series(long lo, long hi) const {
  SeriesWindow<Matrix> s(lo, hi, Matrix(dim, dim));
  for (const auto& [e, m] : restricted)
    if (s.contains(e)) s.at(e) = m;
  return s;
}

SeriesWindow<Matrix> EbarElement::delta_series(long lo, long hi) const {
  SeriesWindow<Matrix> s(lo, hi, Matrix(dim, dim));
  for (const auto& t : delta) {
    auto c = delta_coefficients(t.z, t.j, lo, hi);
    for (long e = lo; e <= hi; ++e)
      if (sgn(c.at(e)) != 0) s.at(e) += c.at(e) * t.coefficient;
  }
  return s;
}

SeriesWindow<Matrix> EbarElement::series(long lo, long hi) const {
  SeriesWindow<Matrix> s = restricted_series(lo, hi), d = delta_series(lo, hi);
  for (long e = lo; e <= hi; ++e) s.at(e) += d.at(e);
  return s;
}

LaurentPoly EbarElement::certificate() const {
  std::map<Rational, long> order;
  for (const auto& t : delta)
    if (!t.coefficient.is_zero()) order[t.z] = std::max(order[t.z], t.j + 1);
  LaurentPoly f(1);
  for (const auto& [z, k] : order)
    for (long i = 0; i < k; ++i) f = f * LaurentPoly::linear_root(z);
  return f;
}

SeriesWindow<Matrix> psi_r_series(const LaurentPoly& f, const SeriesWindow<Matrix>& y, long lower) {
  SeriesWindow<Matrix> g = multiply(f, y);
  if (g.hi < g.lo) throw Error(ErrorCode::WindowUnderflow, "window too small for the certificate");
  if (lower < g.lo) throw Error(ErrorCode::WindowUnderflow, "truncation bound below the window");
  for (long e = g.lo; e < std::min(lower, g.hi + 1); ++e)
    if (!g.at(e).is_zero()) throw Error(ErrorCode::PreconditionViolation, "series is not truncated at the bound");
  auto [s, ft] = f.normalize_monomial();
  long N = std::max<long>(0, g.hi - lower);
  auto beta = expand_inverse(ft, N).coeffs;
  SeriesWindow<Matrix> out(g.lo - s, g.hi - s, y.zero);
  for (long E = out.lo; E <= out.hi; ++E) {
    Matrix acc = y.zero;
    for (long i = 0; E + s - i >= lower; ++i) acc += beta[i] * g.at(E + s - i);
    out.at(E) = std::move(acc);
  }
  return out;
}

namespace {

template <class V>
SeriesWindow<V> series_sub(const SeriesWindow<V>& a, const SeriesWindow<V>& b) {
  long l = std::max(a.lo, b.lo), h = std::min(a.hi, b.hi);
  SeriesWindow<V> r(l, h, a.zero);
  for (long e = l; e <= h; ++e) r.at(e) = a.at(e) + Rational(-1) * b.at(e);
  return r;
}

bool all_zero(const SeriesWindow<Matrix>& s) {
  for (const auto& m : s.c)
    if (!m.is_zero()) return false;
  return true;
}

long overlap(const SeriesWindow<Matrix>& a, const SeriesWindow<Matrix>& b) {
  return std::max<long>(0, std::min(a.hi, b.hi) - std::max(a.lo, b.lo) + 1);
}

}  // namespace

ProjectionReport verify_projection(const std::vector<EbarElement>& family, long lo, long hi) {
  ProjectionReport rep;
  for (size_t idx = 0; idx < family.size(); ++idx) {
    const EbarElement& X = family[idx];
    LaurentPoly f = X.certificate();
    // f * restricted part vanishes below `lower`; the padding keeps that bound inside the window of f * psi_R X.
    long lower = X.restricted.empty() ? lo : std::min(lo, X.restricted.begin()->first) + f.min_exp();
    long wlo = lower - f.min_exp() - 2 * f.max_exp();
    SeriesWindow<Matrix> Y = X.series(wlo, hi);
    SeriesWindow<Matrix> PR = psi_r_series(f, Y, lower);
    SeriesWindow<Matrix> PE = series_sub(Y, PR);
    auto note = [&](bool& flag, bool ok, const char* what) {
      if (ok) return;
      flag = false;
      if (rep.failure.empty()) rep.failure = std::string(what) + " fails on element " + std::to_string(idx);
    };
    note(rep.recovered, equal_on_overlap(PR, X.restricted_series(wlo, hi)), "restricted recovery");
    note(rep.recovered, equal_on_overlap(PE, X.delta_series(wlo, hi)), "delta recovery");
    rep.checked += 2 * overlap(PR, Y);
    SeriesWindow<Matrix> PR2 = psi_r_series(f, PR, lower);
    note(rep.idempotent, equal_on_overlap(PR2, PR), "idempotence");
    note(rep.annihilates, all_zero(series_sub(PR, PR2)), "psi_E psi_R = 0");
    SeriesWindow<Matrix> RE = psi_r_series(f, PE, PE.lo + f.max_exp());
    note(rep.annihilates, all_zero(RE), "psi_R psi_E = 0");
    SeriesWindow<Matrix> sum = PR;
    for (long e = sum.lo; e <= sum.hi; ++e)
      if (PE.contains(e)) sum.at(e) += PE.at(e);
    note(rep.complement, equal_on_overlap(sum, Y), "psi_R + psi_E = id");
    rep.checked += overlap(PR2, PR) + overlap(RE, RE) + overlap(sum, Y);
  }
  rep.passed = rep.idempotent && rep.complement && rep.annihilates && rep.recovered;
  return rep;
}

HomReport hom_preserves_factors(const std::vector<Matrix>& f, const FactoredAction& A1, const FactoredAction& A2,
                                long window) {
  const auto& dims = A1.source.dims;
  if (dims != A2.source.dims || f.size() != dims.size())
    throw Error(ErrorCode::DimensionMismatch, "carriers must share layer dimensions");
  GOp F = GOp::zero(dims);
  for (size_t p = 0; p < dims.size(); ++p) F.add_block(p, static_cast<long>(p), f[p]);
  const LieAlgebraData& L = *A1.source.alg;
  auto intertwines = [&](const GradedAction& x, const GradedAction& y, size_t i, long m) {
    return agree_where_defined(compose(F, x.basis_op(i, m), dims), compose(y.basis_op(i, m), F, dims), dims);
  };
  for (size_t i = 0; i < L.dim; ++i)
    for (long m = -window; m <= window; ++m)
      if (!intertwines(A1.source.pi, A2.source.pi, i, m))
        throw Error(ErrorCode::NotAHomomorphism,
                    "map does not intertwine " + L.basis_names[i] + "(" + std::to_string(m) + ")");
  HomReport rep;
  for (size_t i = 0; i < L.dim; ++i)
    for (long m = -window; m <= window; ++m) {
      rep.checked += 2;
      if (!intertwines(A1.pi_R, A2.pi_R, i, m)) {
        rep.restricted_ok = false;
        if (rep.failure.empty()) rep.failure = "restricted part, " + L.basis_names[i] + "(" + std::to_string(m) + ")";
      }
      if (!intertwines(A1.pi_E, A2.pi_E, i, m)) {
        rep.evaluation_ok = false;
        if (rep.failure.empty()) rep.failure = "evaluation part, " + L.basis_names[i] + "(" + std::to_string(m) + ")";
      }
    }
  rep.passed = rep.restricted_ok && rep.evaluation_ok;
  return rep;
}

TransferReport integrability_transfer(const FactoredAction& F, long N, long B) {
  TransferReport rep;
  rep.full = check_integrable(F.source.pi, N, B);
  rep.restricted = check_integrable(F.pi_R, N, B);
  rep.evaluation = check_integrable(F.pi_E, N, B);
  // Span of the finite sum expressing psi_R(a(n))w through a(n), ..., a(n + r) over the window.
  rep.r = F.source.depth + F.source.cert.degree() + N;
  rep.k = rep.full.max_power;
  rep.bound_r1 = rep.k * (rep.r + 1);
  rep.bound_r2 = rep.k * (rep.r + 2);
  rep.within_bound = rep.restricted.max_power <= rep.bound_r1 && rep.evaluation.max_power <= rep.bound_r2;
  rep.passed = rep.full.passed && rep.restricted.passed && rep.evaluation.passed && rep.within_bound;
  return rep;
}

}  // namespace affrep
