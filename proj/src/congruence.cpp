#include "btlab/congruence.hpp"

#include <algorithm>
#include <sstream>

#include "btlab/kernels.hpp"

namespace btlab {

// ---------------------------------------------------------------- spec

long CongruenceSpec::max_exponent() const {
  long m = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m = std::max(m, i == j ? diag[i] : off_at(i, j));
  return m;
}

bool CongruenceSpec::integral() const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && off_at(i, j) < 0) return false;
  return true;
}

bool CongruenceSpec::contains(const CongruenceSpec& s) const {
  if (n != s.n || p != s.p) return false;
  for (int i = 0; i < n; ++i) {
    if (s.diag[i] < diag[i]) return false;
    for (int j = 0; j < n; ++j)
      if (i != j && s.off_at(i, j) < off_at(i, j)) return false;
  }
  if (unit_det && !s.unit_det) {
    // smaller group must still have unit determinants: true when its diagonal
    // is 1+P and off-diagonal entries are integral
    if (!s.integral()) return false;
    for (int i = 0; i < n; ++i)
      if (s.diag[i] < 1) return false;
  }
  return true;
}

mpz_class CongruenceSpec::index_of(const CongruenceSpec& s) const {
  if (!contains(s)) throw InvalidArgument("index_of: no containment");
  for (int i = 0; i < n; ++i)
    if (diag[i] < 1 || s.diag[i] < 1)
      throw InvalidArgument("index_of: closed form needs pro-p diagonals");
  mpz_class idx = 1;
  mpz_class pz = (long)p;
  for (int i = 0; i < n; ++i) {
    mpz_class t;
    mpz_pow_ui(t.get_mpz_t(), pz.get_mpz_t(), (unsigned long)(s.diag[i] - diag[i]));
    idx *= t;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      mpz_class u;
      mpz_pow_ui(u.get_mpz_t(), pz.get_mpz_t(),
                 (unsigned long)(s.off_at(i, j) - off_at(i, j)));
      idx *= u;
    }
  }
  return idx;
}

std::string CongruenceSpec::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j)
        os << "1+P^" << diag[i];
      else
        os << "P^" << off_at(i, j);
      os << (j + 1 < n ? " " : "");
    }
    os << (i + 1 < n ? "; " : "");
  }
  os << "]" << (unit_det ? " det-unit" : "");
  return os.str();
}

// ---------------------------------------------------------------- builders

namespace {

CongruenceSpec from_fstar(const RootSystem& rs,
                          const std::function<ExtendedLevel(const Root&)>& fs,
                          const ExtendedLevel& e) {
  if (e < ExtendedLevel::finite(Frac{0}))
    throw InvalidArgument("filtration_spec: need e >= 0");
  CongruenceSpec cs;
  cs.n = rs.n;
  cs.p = 0;  // filled by caller
  cs.off.assign(rs.n * rs.n, 0);
  cs.diag.assign(rs.n, 0);
  // entry (i,j), i != j, carries the root subgroup of alpha = e_i - e_j:
  // threshold f*_Omega(alpha) + e realized as the ideal P^ceil
  for (int i = 1; i <= rs.n; ++i)
    for (int j = 1; j <= rs.n; ++j) {
      if (i == j) continue;
      ExtendedLevel t = fs(Root{i, j}) + e;
      cs.off_at(i - 1, j - 1) = t.ceil_exponent();
    }
  // diagonal part H_{f*(0)+e} with f*(0) = 0+
  ExtendedLevel d = f_star_zero() + e;
  long de = d.ceil_exponent();
  for (int i = 0; i < rs.n; ++i) cs.diag[i] = de;
  return cs;
}

}  // namespace

CongruenceSpec filtration_spec(const RootSystem& rs,
                               const std::vector<ApartmentPoint>& omega,
                               const ExtendedLevel& e) {
  auto cs = from_fstar(
      rs, [&](const Root& a) { return f_star(rs, omega, a); }, e);
  cs.provenance = "U_Omega^(" + e.str() + "), |Omega|=" +
                  std::to_string(omega.size());
  return cs;
}

CongruenceSpec filtration_spec(const RootSystem& rs, const Facet& sigma,
                               const ExtendedLevel& e) {
  auto cs = from_fstar(
      rs, [&](const Root& a) { return f_star(rs, sigma, a); }, e);
  cs.provenance = "U_sigma^(" + e.str() + "), dim=" + std::to_string(sigma.dim());
  return cs;
}

CongruenceSpec filtration_spec_point(const RootSystem& rs,
                                     const ApartmentPoint& x, long e) {
  return filtration_spec(rs, std::vector<ApartmentPoint>{x},
                         ExtendedLevel::finite(Frac{e}));
}

CongruenceSpec principal_congruence(int n, long p, long level) {
  if (level < 1) throw InvalidArgument("principal_congruence: level >= 1");
  CongruenceSpec cs;
  cs.n = n;
  cs.p = p;
  cs.off.assign(n * n, level);
  cs.diag.assign(n, level);
  cs.provenance = "K(" + std::to_string(level) + ")";
  return cs;
}

CongruenceSpec parahoric_spec(const RootSystem& rs, const ApartmentPoint& x) {
  CongruenceSpec cs;
  cs.n = rs.n;
  cs.p = 0;
  cs.off.assign(rs.n * rs.n, 0);
  cs.diag.assign(rs.n, 0);
  for (int i = 1; i <= rs.n; ++i)
    for (int j = 1; j <= rs.n; ++j) {
      if (i == j) continue;
      // entry (i,j) holds u_alpha for alpha = e_i - e_j with valuation
      // >= ceil(x_j - x_i) (no plus: the stabilizer is the closed condition)
      Frac t = x.coords[j - 1] - x.coords[i - 1];
      cs.off_at(i - 1, j - 1) = t.ceil();
    }
  cs.unit_det = true;
  cs.provenance = "parahoric";
  return cs;
}

CongruenceSpec torus_spec(int n, long p, const ExtendedLevel& r) {
  CongruenceSpec cs;
  cs.n = n;
  cs.p = p;
  cs.off.assign(n * n, 1000000);  // off-diagonal forced to (virtually) zero
  cs.diag.assign(n, std::max(0LL, (long long)r.ceil_exponent()));
  cs.provenance = "H_" + r.str();
  return cs;
}

// ---------------------------------------------------------------- membership

Membership membership(const PadicMatrix& g, const CongruenceSpec& spec) {
  const int n = spec.n;
  if (g.n() != n) throw InvalidArgument("membership: size mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        if (spec.diag[i] == 0) {
          // unit entry
          const PadicScalar& x = g.at(i, i);
          if (x.is_zero()) return Membership::Out;
          if (x.is_vague())
            throw PrecisionError("membership: diagonal unit not certified");
          if (x.val() != 0) return Membership::Out;
        } else {
          PadicScalar d = g.at(i, i) -
                          PadicScalar::from_int(g.p(), 1, 62);
          if (!d.require_val_at_least(spec.diag[i])) return Membership::Out;
        }
      } else {
        if (!g.at(i, j).require_val_at_least(spec.off_at(i, j)))
          return Membership::Out;
      }
    }
  if (spec.unit_det) {
    if (g.det().val() != 0) return Membership::Out;
  }
  return Membership::In;
}

bool is_member(const ExactMat& g, const CongruenceSpec& spec) {
  const int n = spec.n;
  const long p = spec.p;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const mpq_class& x = g.at(i, j);
      if (i == j) {
        if (spec.diag[i] == 0) {
          if (x == 0 || val_p(x, p) != 0) return false;
        } else {
          mpq_class d = x - 1;
          if (d != 0 && val_p(d, p) < spec.diag[i]) return false;
        }
      } else {
        if (x != 0 && val_p(x, p) < spec.off_at(i, j)) return false;
      }
    }
  if (spec.unit_det) {
    mpq_class d = g.det();
    if (d == 0 || val_p(d, p) != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------- iwahori

IwahoriParts iwahori_factor(const ExactMat& g, const CongruenceSpec& spec,
                            bool lower_first) {
  const int n = g.n();
  if (!is_member(g, spec))
    throw DomainError("iwahori_factor: element not in the spec group");
  if (lower_first) {
    // Doolittle LDU: g = L D U with unit-triangular L (lower), U (upper)
    ExactMat a = g;
    ExactMat L = ExactMat::identity(n);
    for (int k = 0; k < n; ++k) {
      if (a.at(k, k) == 0)
        throw DomainError("iwahori_factor: vanishing pivot");
      for (int r = k + 1; r < n; ++r) {
        mpq_class f = a.at(r, k) / a.at(k, k);
        L.at(r, k) = f;
        for (int c = k; c < n; ++c) a.at(r, c) -= f * a.at(k, c);
      }
    }
    ExactMat D(n), U = ExactMat::identity(n);
    for (int i = 0; i < n; ++i) {
      D.at(i, i) = a.at(i, i);
      for (int j = i + 1; j < n; ++j) U.at(i, j) = a.at(i, j) / a.at(i, i);
    }
    return IwahoriParts{L, D, U};
  }
  // upper_first: g = U (L D); clear above-diagonal entries with row
  // operations from below, processed right to left
  ExactMat B = g;
  ExactMat M = ExactMat::identity(n);  // accumulated row ops: B = M * g
  for (int k = n - 1; k >= 1; --k) {
    if (B.at(k, k) == 0) throw DomainError("iwahori_factor: vanishing pivot");
    for (int i = 0; i < k; ++i) {
      mpq_class f = B.at(i, k) / B.at(k, k);
      if (f == 0) continue;
      for (int c = 0; c < n; ++c) {
        B.at(i, c) -= f * B.at(k, c);
        M.at(i, c) -= f * M.at(k, c);
      }
    }
  }
  ExactMat U = M.inverse();  // g = U * B, B lower triangular
  ExactMat D(n), L = ExactMat::identity(n);
  for (int j = 0; j < n; ++j) {
    D.at(j, j) = B.at(j, j);
    for (int i = j + 1; i < n; ++i) L.at(i, j) = B.at(i, j) / B.at(j, j);
  }
  return IwahoriParts{L, D, U};
}

std::map<std::pair<int, int>, mpq_class> unipotent_coordinates(
    const ExactMat& u, bool upper) {
  const int n = u.n();
  std::map<std::pair<int, int>, mpq_class> out;
  ExactMat cur = u;
  for (int h = 1; h < n; ++h) {
    std::vector<std::pair<std::pair<int, int>, mpq_class>> level;
    for (int i = 0; i < n - h; ++i) {
      int r = upper ? i : i + h;
      int c = upper ? i + h : i;
      level.push_back({{r + 1, c + 1}, cur.at(r, c)});
    }
    ExactMat strip = ExactMat::identity(n);
    for (auto& [rc, t] : level) {
      out[rc] = t;
      strip.at(rc.first - 1, rc.second - 1) = -t;
    }
    // one height at a time: the strip matrix removes the whole level
    cur = upper ? cur * strip : strip * cur;
  }
  return out;
}

// ---------------------------------------------------------------- cosets

CosetSystem quotient_cosets(const CongruenceSpec& big,
                            const CongruenceSpec& small) {
  if (!big.contains(small))
    throw InvalidArgument("quotient_cosets: small not contained in big");
  CosetSystem cs;
  cs.n = big.n;
  cs.p = big.p;
  cs.index = big.index_of(small);
  for (int i = 0; i < big.n; ++i)
    for (int j = 0; j < big.n; ++j) {
      if (i == j) continue;
      if (small.off_at(i, j) > big.off_at(i, j))
        cs.slots.push_back({0, i, j, big.off_at(i, j), small.off_at(i, j)});
    }
  for (int i = 0; i < big.n; ++i)
    if (small.diag[i] > big.diag[i])
      cs.slots.push_back({1, i, i, big.diag[i], small.diag[i]});
  return cs;
}

void CosetSystem::each(const std::function<void(const ExactMat&)>& fn) const {
  // digit counters per slot
  std::vector<std::uint64_t> counts;
  for (const auto& s : slots) counts.push_back(ipow_u64(p, (unsigned)(s.to - s.from)));
  std::vector<std::uint64_t> idx(slots.size(), 0);
  mpq_class pq((long)p);
  auto pw = [&](long e) {
    mpq_class r = 1;
    for (long t = 0; t < std::abs(e); ++t) r *= pq;
    if (e < 0) return mpq_class(1 / r);
    return r;
  };
  for (;;) {
    ExactMat g = ExactMat::identity(n);
    for (size_t s = 0; s < slots.size(); ++s) {
      const Slot& sl = slots[s];
      mpq_class t = mpq_class((unsigned long)idx[s]) * pw(sl.from);
      ExactMat f = ExactMat::identity(n);
      if (sl.kind == 0)
        f.at(sl.i, sl.j) = t;
      else
        f.at(sl.i, sl.i) = 1 + t;
      g = g * f;
    }
    fn(g);
    size_t s = 0;
    while (s < slots.size() && ++idx[s] == counts[s]) idx[s++] = 0;
    if (s == slots.size()) break;
    if (slots.empty()) break;
  }
}

std::vector<ExactMat> CosetSystem::materialize(std::uint64_t guard) const {
  if (!index.fits_ulong_p() || index.get_ui() > guard)
    throw ResourceGuard("coset representatives exceed guard");
  std::vector<ExactMat> out;
  out.reserve(index.get_ui());
  each([&](const ExactMat& g) { out.push_back(g); });
  return out;
}

mpz_class gl_order_mod_p(int n, long p) {
  // |GL_n(F_p)| = prod (p^n - p^k)
  mpz_class r = 1, pn = 1, pz = (long)p;
  mpz_pow_ui(pn.get_mpz_t(), pz.get_mpz_t(), (unsigned long)n);
  mpz_class pk = 1;
  for (int k = 0; k < n; ++k) {
    r *= (pn - pk);
    pk *= pz;
  }
  return r;
}

mpz_class index_in_K0(const CongruenceSpec& spec) {
  if (!spec.integral())
    throw InvalidArgument("index_in_K0: spec not contained in K_0");
  for (long d : spec.diag)
    if (d < 1) throw InvalidArgument("index_in_K0: need pro-p diagonal");
  // [K_0 : K(1)] * [K(1) : spec]
  mpz_class idx = gl_order_mod_p(spec.n, spec.p);
  idx *= principal_congruence(spec.n, spec.p, 1).index_of(spec);
  return idx;
}

mpq_class haar_weight(const CongruenceSpec& spec) {
  mpq_class w(1);
  w /= mpq_class(index_in_K0(spec));
  return w;
}

// ---------------------------------------------------------------- flags

mpz_class flag_count_closed_form(int n, long p, long level) {
  // |GL_n(R)| / |B(R)| for R = O/P^level
  mpz_class pz = (long)p;
  mpz_class gl = gl_order_mod_p(n, p);
  mpz_class t;
  mpz_pow_ui(t.get_mpz_t(), pz.get_mpz_t(),
             (unsigned long)((level - 1) * n * n));
  gl *= t;
  // |B(R)| = (p^(level-1)(p-1))^n * p^(level * n(n-1)/2)
  mpz_class b = 1;
  mpz_pow_ui(t.get_mpz_t(), pz.get_mpz_t(), (unsigned long)(level - 1));
  mpz_class phi = t * (p - 1);
  for (int i = 0; i < n; ++i) b *= phi;
  mpz_pow_ui(t.get_mpz_t(), pz.get_mpz_t(),
             (unsigned long)(level * n * (n - 1) / 2));
  b *= t;
  return gl / b;
}

ContractedParabolic contracted_parabolic(const RootSystem& rs,
                                         const std::vector<mpq_class>& gamma,
                                         long p) {
  if ((int)gamma.size() != rs.n)
    throw InvalidArgument("contracted_parabolic: size mismatch");
  ContractedParabolic cp;
  std::vector<long> v(rs.n);
  for (int i = 0; i < rs.n; ++i) {
    if (gamma[i] == 0) throw DomainError("contracted_parabolic: singular");
    v[i] = val_p(gamma[i], p);
  }
  for (const Root& a : rs.roots)
    if (v[a.i - 1] - v[a.j - 1] >= 0) cp.roots.push_back(a);
  // Levi blocks: indices with equal valuation
  std::map<long, std::vector<int>> blocks;
  for (int i = 0; i < rs.n; ++i) blocks[v[i]].push_back(i + 1);
  for (auto& [val, idxs] : blocks) cp.levi_blocks.push_back(idxs);
  return cp;
}

}  // namespace btlab
