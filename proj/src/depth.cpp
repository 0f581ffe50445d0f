#include "btlab/depth.hpp"

#include <algorithm>

namespace btlab {

long DepthReport::r_split(long e) const {
  if (!sd) throw DomainError("r_split: irregular element");
  return std::max(*sd, e);
}

long DepthReport::r_general(long e) const {
  if (!sd) throw DomainError("r_general: irregular element");
  return std::max(hgt_phi * *sd, e + d_gamma);
}

std::optional<long> sd_root(const std::vector<mpq_class>& gamma, long p,
                            const Root& a) {
  mpq_class q = gamma[a.i - 1] / gamma[a.j - 1] - 1;
  if (q == 0) return std::nullopt;
  return val_p(q, p);
}

DepthReport singular_depth(const RootSystem& rs,
                           const std::vector<mpq_class>& gamma, long p) {
  if ((int)gamma.size() != rs.n)
    throw InvalidArgument("singular_depth: size mismatch");
  for (const auto& g : gamma)
    if (g == 0) throw DomainError("singular_depth: singular diagonal");
  DepthReport rep;
  rep.hgt_phi = rs.max_height();
  bool regular = true;
  long mx = 0, mxpos = 0;
  bool any = false, anypos = false;
  for (const Root& a : rs.roots) {
    auto v = sd_root(gamma, p, a);
    rep.sd_alpha[{a.i, a.j}] = v;
    if (!v) {
      regular = false;
      continue;
    }
    if (!any || *v > mx) mx = *v;
    any = true;
    if (a.positive()) {
      if (!anypos || *v > mxpos) mxpos = *v;
      anypos = true;
    }
  }
  rep.regular = regular;
  if (regular) {
    rep.sd = mx;
    rep.N = mxpos;
  }
  return rep;
}

FixedSetReport fixed_vertices(const RootSystem& rs,
                              const std::vector<mpq_class>& gamma, long p,
                              int radius, std::uint64_t guard) {
  if ((int)gamma.size() != rs.n)
    throw InvalidArgument("fixed_vertices: size mismatch");
  // central normalization: entries must share a common valuation
  long v0 = val_p(gamma[0], p);
  for (const auto& g : gamma)
    if (val_p(g, p) != v0)
      throw DomainError("fixed_vertices: element not compact mod center");
  std::vector<mpq_class> gam = gamma;
  // homothety-invariant action: no explicit scaling needed on classes
  FixedSetReport out;
  out.radius = radius;
  out.ball = vertices_in_ball(rs.n, p, radius, guard);
  ExactMat g = ExactMat::diagonal(gam);
  for (int i = 0; i < (int)out.ball.vertices.size(); ++i)
    if (act_vertex(g, out.ball.vertices[i]) == out.ball.vertices[i])
      out.fixed.push_back(i);
  for (int i = 0; i < (int)out.ball.vertices.size(); ++i)
    if (out.ball.vertices[i].in_apartment() &&
        std::find(out.fixed.begin(), out.fixed.end(), i) == out.fixed.end())
      out.contains_apartment = false;
  return out;
}

FixpointBoundsReport verify_fixpoint_bounds(const RootSystem& rs,
                                            const std::vector<mpq_class>& gamma,
                                            long p, int radius,
                                            std::uint64_t guard) {
  if (rs.n != 2)
    throw InvalidArgument("verify_fixpoint_bounds: n = 2 witnesses only");
  DepthReport dr = singular_depth(rs, gamma, p);
  if (!dr.regular) throw DomainError("verify_fixpoint_bounds: irregular");
  FixedSetReport fs = fixed_vertices(rs, gamma, p, radius, guard);
  FixpointBoundsReport out;
  for (int idx : fs.fixed) {
    const VertexLattice& v = fs.ball.vertices[idx];
    FixpointBoundsReport::PerVertex pv;
    pv.key = v.key();
    pv.d_T = torus_distance(v);
    pv.bound_dT = pv.d_T <= dr.hgt_phi * *dr.sd;
    if (!v.in_apartment()) {
      TreeWitness w = tree_witness(v);
      // the witness root: e1 - e2 for the upper form, e2 - e1 for the lower
      Root aw = w.upper ? Root{1, 2} : Root{2, 1};
      long alpha_y = w.upper ? witness_alpha_coord(w) : -witness_alpha_coord(w);
      long vl = val_p(w.lambda, p);
      auto sda = sd_root(gamma, p, aw);
      long sdv = sda ? *sda : 0;
      pv.bound_b = vl >= -alpha_y - sdv;
      // rank one: hgt(alpha) = 1 and N is taken in the positive system
      // adapted to the witness side
      pv.bound_c = vl >= -alpha_y - 1 * sdv;
    }
    out.vertices.push_back(pv);
  }
  return out;
}

HairStability hair_stability(const RootSystem& rs,
                             const std::vector<mpq_class>& gamma,
                             const std::vector<mpq_class>& h, long p,
                             int radius, std::uint64_t guard) {
  DepthReport dg = singular_depth(rs, gamma, p);
  if (!dg.regular) throw DomainError("hair_stability: irregular gamma");
  HairStability out;
  out.hypothesis_met = true;
  for (const Root& a : rs.roots) {
    auto sdh = sd_root(h, p, a);
    long bound = dg.hgt_phi * *dg.sd;
    if (sdh && *sdh <= bound) out.hypothesis_met = false;
  }
  std::vector<mpq_class> gh(gamma.size());
  for (size_t i = 0; i < gamma.size(); ++i) gh[i] = gamma[i] * h[i];
  FixedSetReport a = fixed_vertices(rs, gamma, p, radius, guard);
  FixedSetReport b = fixed_vertices(rs, gh, p, radius, guard);
  out.equal = a.fixed == b.fixed;
  return out;
}

// ---------------------------------------------------------------- solver

PadicMatrix solve_commutator(const RootSystem& rs, const PadicMatrix& v,
                             const std::vector<PadicScalar>& gamma,
                             bool upper) {
  const int n = rs.n;
  const long p = v.p();
  if ((int)gamma.size() != n)
    throw InvalidArgument("solve_commutator: gamma size");
  // alpha(gamma) - 1 must be certified nonzero for the relevant roots
  PadicMatrix gmat(n, p);
  for (int i = 0; i < n; ++i) gmat.at(i, i) = gamma[i];
  PadicMatrix ginv = gmat.inverse();
  auto one = [&](int rel) { return PadicScalar::from_int(p, 1, rel); };

  PadicMatrix u = PadicMatrix::identity(n, p, 62);
  for (int h = 1; h <= rs.max_height(); ++h) {
    // w = [u, gamma]; target = w^{-1} v, read the height-h diagonal
    PadicMatrix w = u * gmat * u.inverse() * ginv;
    PadicMatrix target = w.inverse() * v;
    PadicMatrix uh = PadicMatrix::identity(n, p, 62);
    for (int i = 0; i < n - h; ++i) {
      int r = upper ? i : i + h;
      int c = upper ? i + h : i;
      const PadicScalar& coord = target.at(r, c);
      if (coord.is_zero()) continue;
      // 1 - alpha(gamma) for alpha = e_{r+1} - e_{c+1}
      PadicScalar am = gamma[r] / gamma[c];
      PadicScalar denom = one(62) - am;
      if (denom.is_zero() || denom.is_vague())
        throw DomainError("solve_commutator: irregular gamma (division)");
      uh.at(r, c) = coord / denom;
    }
    u = uh * u;
  }
  return u;
}

ConjugationWitness conjugate_into_torus(const RootSystem& rs,
                                        const PadicMatrix& y,
                                        const std::vector<mpq_class>& gamma,
                                        const ApartmentPoint& x, long r,
                                        int floor_level) {
  const int n = rs.n;
  const long p = y.p();
  DepthReport dr = singular_depth(rs, gamma, p);
  if (!dr.regular) throw DomainError("conjugate_into_torus: irregular gamma");
  if (r < *dr.sd)
    throw InvalidArgument("conjugate_into_torus: need r >= sd(gamma)");
  const int rel = 62;
  PadicMatrix gmat(n, p);
  std::vector<PadicScalar> gsc(n);
  for (int i = 0; i < n; ++i) {
    gsc[i] = to_padic_scalar(gamma[i], p, rel);
    gmat.at(i, i) = gsc[i];
  }
  PadicMatrix ginv = gmat.inverse();

  // thresholds of U_x^{(floor_level)} per root, for the stopping rule
  auto floor_threshold = [&](int i, int j) {
    // exponent of entry (i,j) in U_x^{(floor)}
    Frac t = x.coords[j] - x.coords[i] + Frac{floor_level};
    return ExtendedLevel::plus(t).ceil_exponent();
  };

  PadicMatrix cur = y;
  PadicMatrix g_acc = PadicMatrix::identity(n, p, rel);
  ConjugationWitness out{PadicMatrix::identity(n, p, rel),
                         PadicMatrix::identity(n, p, rel), 0, 0};
  for (int iter = 0; iter < 200; ++iter) {
    PadicMatrix B = cur * ginv;  // in U_x-neighbourhood of H
    // B = u+ u- h (torus part last): upper-first triangular factorization
    // over truncated p-adics
    PadicMatrix W = B;
    PadicMatrix M = PadicMatrix::identity(n, p, rel);
    for (int k = n - 1; k >= 1; --k) {
      for (int i = 0; i < k; ++i) {
        PadicScalar f = W.at(i, k) / W.at(k, k);
        if (W.at(i, k).is_zero()) continue;
        for (int c = 0; c < n; ++c) {
          W.at(i, c) = W.at(i, c) - f * W.at(k, c);
          M.at(i, c) = M.at(i, c) - f * M.at(k, c);
        }
      }
    }
    PadicMatrix uplus = M.inverse();  // B = uplus * W, W lower triangular
    PadicMatrix h(n, p), uminus = PadicMatrix::identity(n, p, rel);
    for (int j = 0; j < n; ++j) {
      h.at(j, j) = W.at(j, j);
      for (int i = j + 1; i < n; ++i) uminus.at(i, j) = W.at(i, j) / W.at(j, j);
    }
    // stop when both unipotent parts are inside U_x^{(floor_level)}
    bool done = true;
    for (int i = 0; i < n && done; ++i)
      for (int j = 0; j < n && done; ++j) {
        if (i == j) continue;
        const PadicScalar& t = i < j ? uplus.at(i, j) : uminus.at(i, j);
        if (t.is_zero()) continue;
        if (t.val_lower_bound() < floor_threshold(i, j)) done = false;
      }
    if (done) {
      out.iterations = iter;
      out.g = g_acc;
      out.t = h * gmat;
      PadicMatrix resid = g_acc * out.t * g_acc.inverse() - y;
      long floor_val = 1000;
      bool any = false;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const PadicScalar& s = resid.at(i, j);
          if (s.is_zero()) continue;
          floor_val = std::min(floor_val, s.val_lower_bound());
          any = true;
        }
      out.residual_floor = any ? floor_val : 1000;
      return out;
    }
    // y0 = h gamma; solve the two one-sided commutator problems and refine
    PadicMatrix y0 = h * gmat;
    std::vector<PadicScalar> y0diag(n);
    for (int i = 0; i < n; ++i) y0diag[i] = y0.at(i, i);
    PadicMatrix up = solve_commutator(rs, uplus, y0diag, true);
    PadicMatrix um = solve_commutator(rs, uminus, y0diag, false);
    PadicMatrix g1 = um * up;
    g_acc = g_acc * g1;
    cur = g1.inverse() * cur * g1;
  }
  throw PrecisionError("conjugate_into_torus: no convergence before floor");
}

}  // namespace btlab
