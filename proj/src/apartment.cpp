#include "btlab/apartment.hpp"

#include <algorithm>
#include <set>

namespace btlab {

// ---------------------------------------------------------------- levels

ExtendedLevel ExtendedLevel::operator+(const ExtendedLevel& o) const {
  if (is_infinite() || o.is_infinite()) return infinity();
  Kind k = (has_plus() || o.has_plus()) ? Kind::FinitePlus : Kind::Finite;
  return {k, value + o.value};
}

ExtendedLevel ExtendedLevel::scale(const Frac& c) const {
  if (!(Frac{0} < c)) throw InvalidArgument("ExtendedLevel::scale: need c > 0");
  if (is_infinite()) return *this;
  return {kind, value * c};
}

long long ExtendedLevel::ceil_exponent() const {
  if (is_infinite())
    throw DomainError("ceil_exponent: infinite level has no finite exponent");
  if (has_plus()) return value.floor() + 1;
  return value.ceil();
}

bool operator<(const ExtendedLevel& a, const ExtendedLevel& b) {
  if (a.is_infinite()) return false;
  if (b.is_infinite()) return true;
  if (a.value != b.value) return a.value < b.value;
  return !a.has_plus() && b.has_plus();
}

std::string ExtendedLevel::str() const {
  if (is_infinite()) return "inf";
  return value.str() + (has_plus() ? "+" : "");
}

// ---------------------------------------------------------------- points

ApartmentPoint ApartmentPoint::canonical(std::vector<Frac> raw) {
  if (raw.empty()) throw InvalidArgument("ApartmentPoint: empty");
  Frac last = raw.back();
  for (auto& c : raw) c = c - last;
  return ApartmentPoint{std::move(raw)};
}

ApartmentPoint ApartmentPoint::origin(int n) {
  return ApartmentPoint{std::vector<Frac>(n, Frac{0})};
}

// ---------------------------------------------------------------- facets

ApartmentPoint Facet::barycenter() const {
  if (vertices.empty()) throw InvalidArgument("Facet: empty");
  int nn = n();
  std::vector<Frac> c(nn, Frac{0});
  for (const auto& v : vertices)
    for (int i = 0; i < nn; ++i) c[i] = c[i] + Frac{v[i]};
  for (int i = 0; i < nn; ++i) c[i] = c[i] / Frac{(long long)vertices.size()};
  return ApartmentPoint::canonical(c);
}

namespace {

long long eval_vertex(const VertexCoords& v, const Root& a) {
  return v[a.i - 1] - v[a.j - 1];
}

std::vector<RootConstraint> constraints_from_vertices(
    const RootSystem& rs, const std::vector<VertexCoords>& verts) {
  std::vector<RootConstraint> cons;
  cons.reserve(rs.positive_roots.size());
  for (const Root& a : rs.positive_roots) {
    long long lo = eval_vertex(verts[0], a), hi = lo;
    for (const auto& v : verts) {
      long long t = eval_vertex(v, a);
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    if (hi - lo > 1)
      throw InvalidArgument("facet: vertex set spans more than one unit strip");
    cons.push_back(RootConstraint{hi == lo, lo});
  }
  return cons;
}

}  // namespace

Facet facet_from_vertices(const RootSystem& rs,
                          std::vector<VertexCoords> verts) {
  if (verts.empty()) throw InvalidArgument("facet_from_vertices: empty");
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  Facet f;
  f.constraints = constraints_from_vertices(rs, verts);
  f.vertices = std::move(verts);
  return f;
}

Facet facet_of(const RootSystem& rs, const ApartmentPoint& x) {
  const int n = rs.n;
  if (x.n() != n) throw InvalidArgument("facet_of: dimension mismatch");
  // constraint pattern of x per positive root
  std::vector<RootConstraint> cons;
  cons.reserve(rs.positive_roots.size());
  for (const Root& a : rs.positive_roots) {
    Frac v = x.pairing(a);
    if (v.is_integer())
      cons.push_back(RootConstraint{true, v.num});
    else
      cons.push_back(RootConstraint{false, v.floor()});
  }
  // vertices of the closure: integer points satisfying the closed constraints.
  // Coordinates y_i (y_n = 0) are pinned within {k} or {k, k+1} by the root
  // (i, n); remaining roots filter the candidates.
  std::vector<std::vector<long long>> choices(n - 1);
  for (int i = 1; i < n; ++i) {
    // index of root (i, n) in positive_roots
    const Root r{i, n};
    int idx = 0;
    for (; idx < (int)rs.positive_roots.size(); ++idx)
      if (rs.positive_roots[idx] == r) break;
    const RootConstraint& c = cons[idx];
    if (c.exact)
      choices[i - 1] = {c.lo};
    else
      choices[i - 1] = {c.lo, c.lo + 1};
  }
  std::vector<VertexCoords> verts;
  std::vector<long long> y(n, 0);
  std::vector<int> pick(n - 1, 0);
  for (;;) {
    for (int i = 0; i < n - 1; ++i) y[i] = choices[i][pick[i]];
    bool ok = true;
    for (size_t t = 0; t < rs.positive_roots.size() && ok; ++t) {
      long long v = eval_vertex(y, rs.positive_roots[t]);
      const RootConstraint& c = cons[t];
      if (c.exact ? (v != c.lo) : (v < c.lo || v > c.lo + 1)) ok = false;
    }
    if (ok) verts.push_back(y);
    int i = 0;
    while (i < n - 1 && ++pick[i] == (int)choices[i].size()) pick[i++] = 0;
    if (i == n - 1) break;
  }
  std::sort(verts.begin(), verts.end());
  Facet f;
  f.vertices = std::move(verts);
  f.constraints = std::move(cons);
  return f;
}

// ---------------------------------------------------------------- f*

ExtendedLevel f_star(const RootSystem& rs,
                     const std::vector<ApartmentPoint>& omega, const Root& a) {
  if (omega.empty()) throw InvalidArgument("f_star: empty Omega");
  (void)rs;
  Frac sup = -omega[0].pairing(a);
  bool constant = true;
  for (const auto& x : omega) {
    Frac v = -x.pairing(a);
    if (v != sup) constant = false;
    if (sup < v) sup = v;
  }
  return constant ? ExtendedLevel::plus(sup) : ExtendedLevel::finite(sup);
}

ExtendedLevel f_star(const RootSystem& rs, const Facet& sigma, const Root& a) {
  if (sigma.vertices.empty()) throw InvalidArgument("f_star: empty facet");
  (void)rs;
  long long lo = -eval_vertex(sigma.vertices[0], a), hi = lo;
  for (const auto& v : sigma.vertices) {
    long long t = -eval_vertex(v, a);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  // alpha constant on the open cell iff constant on the vertex set; otherwise
  // the sup over the open cell equals the max over vertices, not attained.
  return lo == hi ? ExtendedLevel::plus(Frac{hi}) : ExtendedLevel::finite(Frac{hi});
}

// ---------------------------------------------------------------- ball

SignRegion sign_region(const RootSystem& rs, const Facet& f, long long m) {
  SignRegion r;
  r.threshold = m;
  r.eps.reserve(f.constraints.size());
  for (const RootConstraint& c : f.constraints) {
    int e;
    if (c.exact)
      e = c.lo > m ? 1 : (c.lo < -m ? -1 : 0);
    else
      e = c.lo >= m ? 1 : (c.lo + 1 <= -m ? -1 : 0);
    r.eps.push_back(e);
  }
  // bounded iff the zero-sign roots span the dual of the apartment
  std::vector<std::vector<long long>> vecs;
  for (size_t t = 0; t < r.eps.size(); ++t)
    if (r.eps[t] == 0) {
      const Root& a = rs.positive_roots[t];
      std::vector<long long> v(rs.n, 0);
      v[a.i - 1] = 1;
      v[a.j - 1] = -1;
      vecs.push_back(v);
    }
  // rank over Q by fraction-free elimination
  int rank = 0;
  int cols = rs.n;
  for (int col = 0; col < cols && rank < (int)vecs.size(); ++col) {
    int piv = -1;
    for (int row = rank; row < (int)vecs.size(); ++row)
      if (vecs[row][col] != 0) {
        piv = row;
        break;
      }
    if (piv < 0) continue;
    std::swap(vecs[rank], vecs[piv]);
    for (int row = 0; row < (int)vecs.size(); ++row) {
      if (row == rank || vecs[row][col] == 0) continue;
      long long a = vecs[rank][col], b = vecs[row][col];
      for (int cc = 0; cc < cols; ++cc)
        vecs[row][cc] = vecs[row][cc] * a - vecs[rank][cc] * b;
    }
    ++rank;
  }
  r.bounded = rank == rs.n - 1;
  return r;
}

namespace {

VertexCoords canon_vertex(VertexCoords v) {
  long long last = v.back();
  for (auto& c : v) c -= last;
  return v;
}

// Reflect vertex v across the wall spanned by the other alcove vertices.
// The wall is an affine root hyperplane {<., a> = k}.
VertexCoords reflect_vertex(const RootSystem& rs,
                            const std::vector<VertexCoords>& wall,
                            const VertexCoords& v) {
  for (const Root& a : rs.positive_roots) {
    long long k = eval_vertex(wall[0], a);
    bool on = true;
    for (const auto& w : wall)
      if (eval_vertex(w, a) != k) {
        on = false;
        break;
      }
    if (!on) continue;
    long long d = eval_vertex(v, a) - k;
    if (d == 0) continue;  // v on the same hyperplane: not the separating wall
    VertexCoords r = v;
    r[a.i - 1] -= d;
    r[a.j - 1] += d;
    return canon_vertex(r);
  }
  throw InvalidArgument("reflect_vertex: no wall hyperplane found");
}

}  // namespace

BallComplex ball_complex(const RootSystem& rs, long long m,
                         std::uint64_t guard) {
  if (m < 0) throw InvalidArgument("ball_complex: need m >= 0");
  const int n = rs.n;
  const long long box = (n - 1) * (m + 1) + 1;

  // fundamental alcove: vertices 0, e_1, e_1+e_2, ..., e_1+...+e_{n-1}
  std::vector<VertexCoords> seed;
  for (int k = 0; k < n; ++k) {
    VertexCoords v(n, 0);
    for (int i = 0; i < k; ++i) v[i] = 1;
    seed.push_back(canon_vertex(v));
  }
  std::sort(seed.begin(), seed.end());

  auto in_box = [&](const std::vector<VertexCoords>& verts) {
    for (const auto& v : verts)
      for (const Root& a : rs.positive_roots)
        if (std::llabs(eval_vertex(v, a)) > box) return false;
    return true;
  };

  // BFS over alcoves within the box
  std::set<std::vector<VertexCoords>> alcoves;
  std::vector<std::vector<VertexCoords>> queue{seed};
  alcoves.insert(seed);
  while (!queue.empty()) {
    check_guard(alcoves.size(), guard, "ball_complex alcove enumeration");
    auto alc = queue.back();
    queue.pop_back();
    for (int drop = 0; drop < n; ++drop) {
      std::vector<VertexCoords> wall;
      for (int t = 0; t < n; ++t)
        if (t != drop) wall.push_back(alc[t]);
      VertexCoords refl = reflect_vertex(rs, wall, alc[drop]);
      auto nxt = wall;
      nxt.push_back(refl);
      std::sort(nxt.begin(), nxt.end());
      if (!in_box(nxt)) continue;
      if (alcoves.insert(nxt).second) queue.push_back(nxt);
    }
  }

  // collect faces in bounded sign regions at threshold m
  std::set<std::vector<VertexCoords>> kept;
  for (const auto& alc : alcoves) {
    const int cnt = 1 << n;
    for (int mask = 1; mask < cnt; ++mask) {
      std::vector<VertexCoords> sub;
      for (int t = 0; t < n; ++t)
        if (mask & (1 << t)) sub.push_back(alc[t]);
      kept.insert(sub);  // already sorted as a subsequence
    }
  }
  BallComplex bc;
  bc.n = n;
  bc.radius = m;
  std::set<VertexCoords> vset;
  for (const auto& verts : kept) {
    Facet f;
    f.vertices = verts;
    f.constraints = constraints_from_vertices(rs, verts);
    if (!sign_region(rs, f, m).bounded) continue;
    bc.facets.push_back(std::move(f));
    for (const auto& v : verts) vset.insert(v);
  }
  std::sort(bc.facets.begin(), bc.facets.end());
  bc.vertex_list.assign(vset.begin(), vset.end());
  return bc;
}

std::vector<Facet> BallComplex::facets_of_dim(int d) const {
  std::vector<Facet> out;
  for (const auto& f : facets)
    if (f.dim() == d) out.push_back(f);
  return out;
}

// ---------------------------------------------------------------- boundary

std::vector<SignedFace> boundary_chain(const RootSystem& rs, const Facet& f) {
  std::vector<SignedFace> out;
  if (f.dim() < 1) return out;  // vertices have empty boundary
  for (size_t i = 0; i < f.vertices.size(); ++i) {
    std::vector<VertexCoords> verts;
    for (size_t t = 0; t < f.vertices.size(); ++t)
      if (t != i) verts.push_back(f.vertices[t]);
    SignedFace sf;
    sf.face = facet_from_vertices(rs, std::move(verts));
    sf.sign = (i % 2 == 0) ? 1 : -1;
    out.push_back(std::move(sf));
  }
  return out;
}

// ---------------------------------------------------------------- segments

std::vector<Facet> segment_facets(const RootSystem& rs, const ApartmentPoint& x,
                                  const ApartmentPoint& z) {
  if (x.n() != rs.n || z.n() != rs.n)
    throw InvalidArgument("segment_facets: dimension mismatch");
  // breakpoints: t in (0,1) where some root value crosses an integer
  std::set<Frac> times;
  times.insert(Frac{0});
  times.insert(Frac{1});
  for (const Root& a : rs.positive_roots) {
    Frac va = x.pairing(a), vb = z.pairing(a);
    if (va == vb) continue;
    Frac lo = va < vb ? va : vb, hi = va < vb ? vb : va;
    for (long long k = lo.floor(); k <= hi.ceil(); ++k) {
      // solve va + t (vb - va) = k
      Frac t = (Frac{k} - va) / (vb - va);
      if (Frac{0} < t && t < Frac{1}) times.insert(t);
    }
  }
  std::vector<Frac> ts(times.begin(), times.end());
  auto point_at = [&](const Frac& t) {
    std::vector<Frac> c(rs.n);
    for (int i = 0; i < rs.n; ++i)
      c[i] = x.coords[i] + t * (z.coords[i] - x.coords[i]);
    return ApartmentPoint::canonical(c);
  };
  std::vector<Facet> out;
  auto push = [&](const Facet& f) {
    if (out.empty() || !(out.back() == f)) out.push_back(f);
  };
  for (size_t i = 0; i < ts.size(); ++i) {
    push(facet_of(rs, point_at(ts[i])));
    if (i + 1 < ts.size()) {
      Frac mid = (ts[i] + ts[i + 1]) / Frac{2};
      push(facet_of(rs, point_at(mid)));
    }
  }
  return out;
}

}  // namespace btlab
