#include "btlab/rep.hpp"

#include <algorithm>

namespace btlab {

// ---------------------------------------------------------------- iwasawa

IwasawaExact iwasawa_exact(const ExactMat& g, long p) {
  const int n = g.n();
  ExactMat b = g;
  ExactMat k = ExactMat::identity(n);  // accumulates C^{-1}
  for (int i = n - 1; i >= 0; --i) {
    int piv = -1;
    long best = 0;
    for (int j = 0; j <= i; ++j) {
      if (b.at(i, j) == 0) continue;
      long v = val_p(b.at(i, j), p);
      if (piv < 0 || v < best) {
        piv = j;
        best = v;
      }
    }
    if (piv < 0) throw DomainError("iwasawa_exact: singular matrix");
    if (piv != i) {
      for (int r = 0; r < n; ++r) std::swap(b.at(r, piv), b.at(r, i));
      for (int c = 0; c < n; ++c) std::swap(k.at(piv, c), k.at(i, c));
    }
    for (int j = 0; j < i; ++j) {
      if (b.at(i, j) == 0) continue;
      mpq_class f = b.at(i, j) / b.at(i, i);
      for (int r = 0; r <= i; ++r) b.at(r, j) -= f * b.at(r, i);
      for (int c = 0; c < n; ++c) k.at(i, c) += f * k.at(j, c);
    }
  }
  return IwasawaExact{b, k};
}

// ---------------------------------------------------------------- model

FiniteLevelRep::FiniteLevelRep(int n_, long p_, const TorusCharacter& chi_,
                               int m_, std::uint64_t guard)
    : n(n_), p(p_), m(m_), chi(chi_), ctx(n_, p_, m_) {
  if (chi.n != n || chi.p != p)
    throw InvalidArgument("FiniteLevelRep: character mismatch");
  if (chi.max_depth() > m)
    throw DomainError("FiniteLevelRep: character depth exceeds precision");
  basis = ctx.enumerate_classes(guard);
  for (size_t i = 0; i < basis.size(); ++i)
    index[ctx.encode(basis[i])] = (int)i;
}

ExactMat FiniteLevelRep::lift(int c) const {
  ExactMat g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g.at(i, j) = mpq_class((unsigned long)basis[c][i * n + j]);
  return g;
}

namespace {

Cyc borel_character(const TorusCharacter& chi, const FlagContext& ctx,
                    const FlagContext::Mat& bbar) {
  Cyc v = Cyc::integer(1);
  for (int i = 0; i < ctx.n; ++i) {
    if (chi.comp[i].depth == 0) continue;
    std::uint64_t u =
        bbar[i * ctx.n + i] % pow_u64(ctx.p, chi.comp[i].depth);
    v = v * chi.eval_unit(i, u);
  }
  return v;
}

}  // namespace

FiniteLevelRep::Monomial FiniteLevelRep::sampled_integral(
    const FlagContext::Mat& gbar) const {
  Monomial s;
  s.target.resize(dim());
  s.val.resize(dim());
  for (int c = 0; c < dim(); ++c) {
    FlagContext::Mat prod = ctx.mul(basis[c], gbar);
    FlagContext::Mat canon = ctx.canonical_flag(prod);
    auto it = index.find(ctx.encode(canon));
    if (it == index.end())
      throw DomainError("sampled_integral: class outside the model");
    s.target[c] = it->second;
    s.val[c] = borel_character(chi, ctx, ctx.borel_part(prod, canon));
  }
  return s;
}

FiniteLevelRep::Monomial FiniteLevelRep::sampled_op(const ExactMat& g) const {
  // integral unit-determinant fast path through the finite quotient
  bool integral = true;
  for (int i = 0; i < n && integral; ++i)
    for (int j = 0; j < n && integral; ++j)
      if (g.at(i, j) != 0 && val_p(g.at(i, j), p) < 0) integral = false;
  if (integral) {
    mpq_class d = g.det();
    if (d == 0) throw DomainError("sampled_op: singular");
    if (val_p(d, p) == 0) {
      FlagContext::Mat gbar(n * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          gbar[i * n + j] = (std::uint32_t)residue_mod_pk(g.at(i, j), p, m);
      return sampled_integral(gbar);
    }
  }
  // general certified element: value e_{c'}(x_c g) through the exact Iwasawa
  // decomposition x_c g = b k
  Monomial s;
  s.target.resize(dim());
  s.val.resize(dim());
  for (int c = 0; c < dim(); ++c) {
    ExactMat y = lift(c) * g;
    IwasawaExact bk = iwasawa_exact(y, p);
    Cyc bval = Cyc::integer(1);
    for (int i = 0; i < n; ++i) bval = bval * chi.eval_entry(i, bk.b.at(i, i));
    FlagContext::Mat kbar(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        kbar[i * n + j] = (std::uint32_t)residue_mod_pk(bk.k.at(i, j), p, m);
    FlagContext::Mat canon = ctx.canonical_flag(kbar);
    auto it = index.find(ctx.encode(canon));
    if (it == index.end()) throw DomainError("sampled_op: class not found");
    s.target[c] = it->second;
    s.val[c] = bval * borel_character(chi, ctx, ctx.borel_part(kbar, canon));
  }
  return s;
}

CMat FiniteLevelRep::to_matrix(const Monomial& s) const {
  CMat mat(dim(), dim());
  for (int c = 0; c < dim(); ++c) mat.at(c, s.target[c]) = s.val[c];
  return mat;
}

Cyc FiniteLevelRep::trace_with(const Monomial& s, const CMat& e) const {
  // tr(S e) = sum_c S_{c, t(c)} e_{t(c), c}
  Cyc t;
  for (int c = 0; c < dim(); ++c) t = t + s.val[c] * e.at(s.target[c], c);
  return t;
}

CMat FiniteLevelRep::act(const ExactMat& g) const {
  // split g = D g' with D = diag(p^{v_i}) by row valuations
  std::vector<long> rowval(n);
  for (int i = 0; i < n; ++i) {
    bool any = false;
    long v = 0;
    for (int j = 0; j < n; ++j) {
      if (g.at(i, j) == 0) continue;
      long t = val_p(g.at(i, j), p);
      if (!any || t < v) v = t;
      any = true;
    }
    if (!any) throw DomainError("act: singular element");
    rowval[i] = v;
  }
  bool all_zero = true;
  for (long v : rowval) all_zero = all_zero && v == 0;
  ExactMat gp = g;
  if (!all_zero) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        mpq_class pw = 1;
        for (long t = 0; t < std::abs(rowval[i]); ++t) pw *= p;
        if (rowval[i] >= 0)
          gp.at(i, j) = g.at(i, j) / pw;
        else
          gp.at(i, j) = g.at(i, j) * pw;
      }
  }
  mpq_class d = gp.det();
  if (d == 0 || val_p(d, p) != 0)
    throw DomainError("act: element not supported (no D * GL_n(O) split)");
  CMat S = to_matrix(sampled_op(gp));
  if (all_zero) return S;
  // Pi(D): average of sampled operators over D^{-1} K(m) D modulo K(m)
  std::vector<std::pair<int, int>> neg;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && rowval[j] < rowval[i]) neg.push_back({i, j});
  std::vector<mpq_class> dents(n);
  for (int i = 0; i < n; ++i) {
    mpq_class pw = 1;
    for (long t = 0; t < std::abs(rowval[i]); ++t) pw *= p;
    if (rowval[i] >= 0)
      dents[i] = pw;
    else
      dents[i] = mpq_class(1) / pw;
  }
  ExactMat D = ExactMat::diagonal(dents);
  // enumerate digit products across negative slots
  std::vector<std::uint64_t> counts;
  for (auto [i, j] : neg)
    counts.push_back(ipow_u64(p, (unsigned)(rowval[i] - rowval[j])));
  std::uint64_t total = 1;
  for (auto c : counts) total *= c;
  CMat acc(dim(), dim());
  std::vector<std::uint64_t> idx(neg.size(), 0);
  for (std::uint64_t it = 0; it < total; ++it) {
    ExactMat r = ExactMat::identity(n);
    for (size_t s = 0; s < neg.size(); ++s) {
      auto [i, j] = neg[s];
      // u_ij(t p^{m - (v_i - v_j)}), t a digit block
      long a = m - (rowval[i] - rowval[j]);
      mpq_class pw = 1;
      for (long t = 0; t < std::abs(a); ++t) pw *= p;
      mpq_class step = a >= 0 ? pw : mpq_class(mpq_class(1) / pw);
      r.at(i, j) += mpq_class((unsigned long)idx[s]) * step;
    }
    acc = acc + to_matrix(sampled_op(D * r));
    size_t s = 0;
    while (s < neg.size() && ++idx[s] == counts[s]) idx[s++] = 0;
  }
  Cyc inv_total = Cyc::rational(mpq_class(1, (unsigned long)total));
  return acc.scaled(inv_total) * S;
}

// ---------------------------------------------------------------- idempotents

CMat FiniteLevelRep::idempotent(const CongruenceSpec& K) const {
  if (K.n != n || K.p != p) throw InvalidArgument("idempotent: spec mismatch");
  if (K.max_exponent() > m)
    throw DomainError("idempotent: K(m) not contained in the group (precision)");
  for (long d : K.diag)
    if (d < 1) throw InvalidArgument("idempotent: pro-p diagonal required");
  // integral part H: clamp off-diagonal exponents at 0
  CongruenceSpec H = K;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) H.off_at(i, j) = std::max(0L, K.off_at(i, j));
  // E_H as an ordered product of piece averages (unique decomposition into
  // diagonal and root pieces)
  CMat E = CMat::identity(dim());
  auto piece_avg = [&](const std::function<ExactMat(std::uint64_t)>& elt,
                       std::uint64_t count) {
    CMat acc(dim(), dim());
    for (std::uint64_t t = 0; t < count; ++t)
      acc = acc + to_matrix(sampled_op(elt(t)));
    return acc.scaled(Cyc::rational(mpq_class(1, (unsigned long)count)));
  };
  // diagonal pieces 1 + p^{d_i} t
  for (int i = 0; i < n; ++i) {
    long a = H.diag[i];
    if (a >= m) continue;
    std::uint64_t count = ipow_u64(p, (unsigned)(m - a));
    mpq_class pa = 1;
    for (long t = 0; t < a; ++t) pa *= p;
    E = E * piece_avg(
                [&](std::uint64_t t) {
                  ExactMat g = ExactMat::identity(n);
                  g.at(i, i) = 1 + mpq_class((unsigned long)t) * pa;
                  return g;
                },
                count);
  }
  // off-diagonal pieces u_ij(p^{a} t)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      long a = H.off_at(i, j);
      if (a >= m) continue;
      std::uint64_t count = ipow_u64(p, (unsigned)(m - a));
      mpq_class pa = 1;
      for (long t = 0; t < a; ++t) pa *= p;
      E = E * piece_avg(
                  [&](std::uint64_t t) {
                    return ExactMat::elementary(
                        n, i + 1, j + 1, mpq_class((unsigned long)t) * pa);
                  },
                  count);
    }
  bool has_neg = !(H.off == K.off);
  if (has_neg) {
    // transversal of K / H across the negative slots
    std::vector<std::pair<int, int>> neg;
    std::vector<std::uint64_t> counts;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && K.off_at(i, j) < 0) {
          neg.push_back({i, j});
          counts.push_back(ipow_u64(p, (unsigned)(-K.off_at(i, j))));
        }
    std::uint64_t total = 1;
    for (auto c : counts) total *= c;
    CMat acc(dim(), dim());
    std::vector<std::uint64_t> idx(neg.size(), 0);
    for (std::uint64_t it = 0; it < total; ++it) {
      ExactMat r = ExactMat::identity(n);
      for (size_t s = 0; s < neg.size(); ++s) {
        auto [i, j] = neg[s];
        long a = K.off_at(i, j);
        mpq_class pw = 1;
        for (long t = 0; t < -a; ++t) pw *= p;
        r.at(i, j) = mpq_class((unsigned long)idx[s]) / pw;
      }
      acc = acc + to_matrix(sampled_op(r)) * E;
      size_t s = 0;
      while (s < neg.size() && ++idx[s] == counts[s]) idx[s++] = 0;
    }
    E = acc.scaled(Cyc::rational(mpq_class(1, (unsigned long)total)));
    if (neg.size() > 1 && !((E * E) == E))
      throw DomainError("idempotent: transversal failed idempotency check");
  }
  return E;
}

CMat FiniteLevelRep::idempotent_conj(const CongruenceSpec& K,
                                     const ExactMat& u) const {
  CMat S = to_matrix(sampled_op(u));
  CMat Sinv = to_matrix(sampled_op(u.inverse()));
  return S * idempotent(K) * Sinv;
}

CMat FiniteLevelRep::idempotent_vertex(const VertexLattice& v, long e) const {
  if (v.in_apartment()) {
    auto a = v.diag_exponents();
    CongruenceSpec spec;
    spec.n = n;
    spec.p = p;
    spec.off.assign(n * n, 0);
    spec.diag.assign(n, e + 1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) spec.off_at(i, j) = e + 1 + a[i] - a[j];
    spec.provenance = "U_v^(" + std::to_string(e) + ")";
    return idempotent(spec);
  }
  if (n != 2)
    throw InvalidArgument("idempotent_vertex: off-apartment needs n = 2");
  TreeWitness w = tree_witness(v);
  CongruenceSpec spec;
  spec.n = n;
  spec.p = p;
  spec.off.assign(n * n, 0);
  spec.diag.assign(n, e + 1);
  spec.off_at(0, 1) = e + 1 + w.diag[0] - w.diag[1];
  spec.off_at(1, 0) = e + 1 + w.diag[1] - w.diag[0];
  spec.provenance = "U_v^(" + std::to_string(e) + ") conj";
  return idempotent_conj(spec, w.u);
}

CMat FiniteLevelRep::idempotent_K0(std::uint64_t guard) const {
  const int nn = n * n;
  std::uint64_t space = 1;
  for (int k = 0; k < nn; ++k) {
    space *= ctx.M;
    check_guard(space, guard, "idempotent_K0 enumeration");
  }
  CMat acc(dim(), dim());
  std::uint64_t count = 0;
  FlagContext::Mat a(nn);
  for (std::uint64_t code = 0; code < space; ++code) {
    std::uint64_t c = code;
    for (int k = 0; k < nn; ++k) {
      a[k] = (std::uint32_t)(c % ctx.M);
      c /= ctx.M;
    }
    if (ctx.det(a) % p == 0) continue;
    acc = acc + to_matrix(sampled_integral(a));
    ++count;
  }
  return acc.scaled(Cyc::rational(mpq_class(1) / mpq_class((unsigned long)count)));
}

long FiniteLevelRep::invariants_dim(const CongruenceSpec& K) const {
  return rank(idempotent(K));
}

}  // namespace btlab
