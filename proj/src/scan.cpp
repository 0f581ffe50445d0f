#include "btlab/scan.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace btlab {

Cyc chi_K(const FiniteLevelRep& rep, const CongruenceSpec& K,
          const ExactMat& g) {
  CMat E = rep.idempotent(K);
  CMat A = rep.act(g);
  // tr(e_K pi(g) e_K) = tr(pi(g) e_K) by cyclicity and idempotency
  return (A * E).trace();
}

ConstancyReport character_scan(const FiniteLevelRep& rep,
                               const std::vector<mpq_class>& gamma, long e,
                               const std::vector<long>& s_range,
                               int sample_budget, std::uint64_t seed) {
  const int n = rep.n;
  const long p = rep.p;
  const int m = rep.m;
  RootSystem rs = build_root_system(n);
  DepthReport dr = singular_depth(rs, gamma, p);
  if (!dr.regular) throw DomainError("character_scan: irregular gamma");
  ConstancyReport out;
  long v0 = val_p(gamma[0], p);
  out.gamma_compact = true;
  for (const auto& g : gamma)
    if (val_p(g, p) != v0) out.gamma_compact = false;
  out.sd = *dr.sd;
  out.r = dr.r_split(e);
  out.s_values = s_range;

  // chi_{K_s}(gamma) across s
  std::vector<Cyc> base_vals;
  std::vector<CMat> Es;
  CMat A = rep.act(ExactMat::diagonal(gamma));
  for (long s : s_range) {
    if (s + 1 > m) throw PrecisionError("character_scan: s exceeds precision");
    CongruenceSpec Ks = principal_congruence(n, p, s + 1);
    Ks.p = p;
    CMat E = rep.idempotent(Ks);
    Es.push_back(E);
    base_vals.push_back((A * E).trace());
    out.chi_values.push_back(base_vals.back().str());
  }
  out.stable_in_s = true;
  for (size_t i = 1; i < base_vals.size(); ++i)
    if (!(base_vals[i] == base_vals[0])) out.stable_in_s = false;

  if (!out.gamma_compact) {
    // non-compact: stabilization is the whole report
    out.torus_slice_constant = true;
    out.neighbourhood_constant = true;
    return out;
  }

  // every coset representative h of (H_{r+} cap T) / (level m)
  long hr = out.r + 1;  // ceil exponent of r+
  if (hr >= m)
    throw PrecisionError("character_scan: no torus digits at this precision");
  std::uint64_t per = ipow_u64(p, (unsigned)(m - hr));
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= per;
  out.torus_slice_constant = true;
  mpq_class phr = 1;
  for (long t = 0; t < hr; ++t) phr *= p;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    std::vector<mpq_class> gh(n);
    for (int i = 0; i < n; ++i) {
      gh[i] = gamma[i] * (1 + mpq_class((unsigned long)(c % per)) * phr);
      c /= per;
    }
    ExactMat G = ExactMat::diagonal(gh);
    for (size_t si = 0; si < Es.size(); ++si) {
      Cyc v = rep.trace_with(rep.sampled_op(G), Es[si]);
      if (!(v == base_vals[si])) out.torus_slice_constant = false;
    }
    ++out.torus_cosets_checked;
  }

  // sampled u gamma u' with u, u' in U_o^{(r)} = K(r+1)
  Rng rng(seed);
  auto random_kr = [&]() {
    ExactMat u = ExactMat::identity(n);
    std::uint64_t digits = ipow_u64(p, (unsigned)(m - hr));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        mpq_class t = mpq_class((unsigned long)rng.below(digits)) * phr;
        if (i == j)
          u.at(i, i) = 1 + t;
        else
          u.at(i, j) = t;
      }
    return u;
  };
  out.neighbourhood_constant = true;
  for (int s = 0; s < sample_budget; ++s) {
    ExactMat u = random_kr(), up = random_kr();
    ExactMat g = u * ExactMat::diagonal(gamma) * up;
    for (size_t si = 0; si < Es.size(); ++si) {
      Cyc v = rep.trace_with(rep.sampled_op(g), Es[si]);
      if (!(v == base_vals[si])) out.neighbourhood_constant = false;
    }
    ++out.samples_checked;
  }
  return out;
}

mpz_class ball_orbit_count(const CongruenceSpec& K, const LatticeBall& ball) {
  const int n = ball.n;
  const long p = ball.p;
  // generator set of the congruence group sufficient at every finite level:
  // additive pieces are cyclic under a single elementary element, the
  // multiplicative 1+P^a pieces need the extra generators at p = 2, a = 1
  std::vector<ExactMat> gens;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      long a = K.off_at(i, j);
      mpq_class t = 1;
      for (long k = 0; k < std::abs(a); ++k) t *= p;
      if (a < 0) t = 1 / t;
      gens.push_back(ExactMat::elementary(n, i + 1, j + 1, t));
    }
  for (int i = 0; i < n; ++i) {
    long a = K.diag[i];
    mpq_class t = 1;
    for (long k = 0; k < a; ++k) t *= p;
    ExactMat d = ExactMat::identity(n);
    d.at(i, i) = 1 + t;
    gens.push_back(d);
    if (p == 2 && a == 1) {
      ExactMat d2 = ExactMat::identity(n);
      d2.at(i, i) = -1;
      gens.push_back(d2);
      ExactMat d3 = ExactMat::identity(n);
      d3.at(i, i) = 5;
      gens.push_back(d3);
    }
  }
  // union-find over ball vertices
  std::vector<int> parent(ball.vertices.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = (int)i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < ball.vertices.size(); ++i)
    for (const auto& g : gens) {
      VertexLattice img = act_vertex(g, ball.vertices[i]);
      int j = ball.find(img);
      if (j < 0) continue;  // image outside the ball: ignored for counting
      int a = find((int)i), b = find(j);
      if (a != b) parent[a] = b;
    }
  std::set<int> roots;
  for (size_t i = 0; i < parent.size(); ++i) roots.insert(find((int)i));
  return mpz_class((long)roots.size());
}

std::vector<GrowthRow> growth_table(int n, long p, long e_max,
                                    std::uint64_t guard) {
  std::vector<GrowthRow> rows;
  for (long e = 0; e <= e_max; ++e) {
    GrowthRow row;
    row.e = e;
    DoubleCosets dc = double_coset_count(n, p, e, guard);
    row.coset_count = dc.count;
    row.coset_closed = flag_count_closed_form(n, p, e + 1);
    mpz_class qpow;
    mpz_class pz = p;
    mpz_pow_ui(qpow.get_mpz_t(), pz.get_mpz_t(),
               (unsigned long)(e * n * (n - 1) / 2));
    row.ratio_qpow = mpq_class(row.coset_count) / mpq_class(qpow);
    // trivial character: dim V^{K_e} equals the flag count at level e+1
    row.dim_VKe = (long)dc.count.get_ui();
    // level-0 representation: m_V = dim V^{U_x^{(0)}} = flag count level 1
    row.m_V = (long)flag_count_closed_form(n, p, 1).get_ui();
    mpz_class Qe;
    mpz_pow_ui(Qe.get_mpz_t(), pz.get_mpz_t(),
               (unsigned long)(e * n * (n - 1) / 2));
    mpq_class bound = mpq_class(row.m_V);
    for (int k = 0; k < n - 1; ++k) bound *= (e + 1);
    bound *= mpq_class(Qe);
    row.bound = bound;
    row.measured_C = mpq_class(row.dim_VKe) / bound;
    CongruenceSpec Ke = principal_congruence(n, p, e + 1);
    Ke.p = p;
    row.mu_dim = haar_weight(Ke) * mpq_class(row.dim_VKe);
    if (n == 2) {
      LatticeBall ball = vertices_in_ball(n, p, (int)e, guard);
      row.ball_vertices = (long)ball.vertices.size();
      row.orbit_count = ball_orbit_count(Ke, ball);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace btlab
