#include "btlab/lattice.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace btlab {

namespace {

long vmin_entry(const std::vector<mpq_class>& a, long p) {
  bool any = false;
  long v = 0;
  for (const auto& x : a) {
    if (x == 0) continue;
    long t = val_p(x, p);
    if (!any || t < v) v = t;
    any = true;
  }
  if (!any) throw DomainError("lattice: zero matrix");
  return v;
}

mpq_class p_power(long p, long e) {
  mpq_class r = 1;
  for (long i = 0; i < std::abs(e); ++i) r *= p;
  if (e < 0) return 1 / r;
  return r;
}

}  // namespace

bool VertexLattice::in_apartment() const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && at(i, j) != 0) return false;
  return true;
}

std::vector<long> VertexLattice::diag_exponents() const {
  if (!in_apartment()) throw DomainError("diag_exponents: not in apartment");
  std::vector<long> a(n);
  for (int i = 0; i < n; ++i) a[i] = val_p(mpq_class(at(i, i)), p);
  return a;
}

std::string VertexLattice::key() const {
  std::ostringstream os;
  for (const auto& x : h) os << x.get_str() << ",";
  return os.str();
}

ExactMat VertexLattice::as_matrix() const {
  ExactMat g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.at(i, j) = mpq_class(at(i, j));
  return g;
}

VertexLattice origin_vertex(int n, long p) {
  VertexLattice v;
  v.n = n;
  v.p = p;
  v.h.assign(n * n, 0);
  for (int i = 0; i < n; ++i) v.h[i * n + i] = 1;
  return v;
}

VertexLattice apartment_vertex(int n, long p, const std::vector<long>& a) {
  long mn = *std::min_element(a.begin(), a.end());
  VertexLattice v;
  v.n = n;
  v.p = p;
  v.h.assign(n * n, 0);
  for (int i = 0; i < n; ++i) {
    mpz_class t;
    mpz_class pz = p;
    mpz_pow_ui(t.get_mpz_t(), pz.get_mpz_t(), (unsigned long)(a[i] - mn));
    v.h[i * n + i] = t;
  }
  return v;
}

// Column Hermite form over Z_(p) of an n x k generating matrix (k >= n),
// then homothety normalization.
VertexLattice lattice_class(const ExactMat& g, long p) {
  const int n = g.n();
  std::vector<std::vector<mpq_class>> cols(n, std::vector<mpq_class>(n));
  {
    // scale the class representative integral first so that every pivot and
    // digit reduction happens over Z_(p)
    std::vector<mpq_class> flat;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) flat.push_back(g.at(i, j));
    long vm = vmin_entry(flat, p);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) cols[j][i] = g.at(i, j) / p_power(p, vm);
  }
  return [&cols, n, p]() {
    // triangularize bottom-up
    int k = (int)cols.size();
    for (int i = n - 1; i >= 0; --i) {
      int last = i + k - n;
      int piv = -1;
      long best = 0;
      for (int j = 0; j <= last; ++j) {
        if (cols[j][i] == 0) continue;
        long v = val_p(cols[j][i], p);
        if (piv < 0 || v < best) {
          piv = j;
          best = v;
        }
      }
      if (piv < 0) throw DomainError("lattice_class: singular generators");
      std::swap(cols[piv], cols[last]);
      // scale to make entry exactly p^best
      mpq_class scale = p_power(p, best) / cols[last][i];
      for (int r = 0; r <= i; ++r) cols[last][r] *= scale;
      cols[last][i] = p_power(p, best);  // exact
      for (int r = i + 1; r < n; ++r) cols[last][r] = 0;  // cleared earlier
      for (int j = 0; j < last; ++j) {
        if (cols[j][i] == 0) continue;
        mpq_class f = cols[j][i] / cols[last][i];
        for (int r = 0; r <= i; ++r) cols[j][r] -= f * cols[last][r];
        cols[j][i] = 0;
      }
    }
    // drop the k - n zero columns on the left
    int off = k - n;
    std::vector<std::vector<mpq_class>> sq(cols.begin() + off, cols.end());
    // reduce above-diagonal entries: column j, rows i < j, i descending
    std::vector<long> a(n);
    for (int i = 0; i < n; ++i) a[i] = val_p(sq[i][i], p);
    for (int j = 1; j < n; ++j)
      for (int i = j - 1; i >= 0; --i) {
        mpq_class e = sq[j][i];
        if (e == 0) continue;
        if (a[i] > 62)
          throw ResourceGuard("lattice_class: pivot exponent too large");
        std::uint64_t r = residue_mod_pk(e, p, (int)a[i]);
        mpq_class red((unsigned long)r);
        mpq_class q = (e - red) / sq[i][i];
        for (int rr = 0; rr <= i; ++rr) sq[j][rr] -= q * sq[i][rr];
      }
    // homothety normalization
    std::vector<mpq_class> flat;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) flat.push_back(sq[j][i]);
    long vm = vmin_entry(flat, p);
    VertexLattice v;
    v.n = n;
    v.p = p;
    v.h.assign(n * n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        mpq_class x = sq[j][i] / p_power(p, vm);
        if (x.get_den() != 1)
          throw DomainError("lattice_class: non-integral canonical entry");
        v.h[i * n + j] = x.get_num();
      }
    return v;
  }();
}

VertexLattice act_vertex(const ExactMat& g, const VertexLattice& v) {
  if (g.det() == 0) throw DomainError("act_vertex: singular element");
  return lattice_class(g * v.as_matrix(), v.p);
}

std::vector<VertexLattice> vertex_neighbors(const VertexLattice& v,
                                            std::uint64_t guard) {
  const int n = v.n;
  const long p = v.p;
  // subspaces of L/pL of dimension 1..n-1; neighbour = class of pL + W-lift
  std::vector<std::vector<std::vector<int>>> subspaces;
  // dimension 1: lines, canonical reps
  {
    std::vector<std::vector<int>> vecs;
    std::vector<int> w(n, 0);
    // vectors with leading coordinate 1
    for (int lead = 0; lead < n; ++lead) {
      std::vector<int> tail_sizes(n - lead - 1, (int)p);
      std::uint64_t cnt = 1;
      for (int t = lead + 1; t < n; ++t) cnt *= p;
      for (std::uint64_t c = 0; c < cnt; ++c) {
        std::vector<int> vec(n, 0);
        vec[lead] = 1;
        std::uint64_t x = c;
        for (int t = lead + 1; t < n; ++t) {
          vec[t] = (int)(x % p);
          x /= p;
        }
        vecs.push_back(vec);
      }
    }
    for (auto& vec : vecs) subspaces.push_back({vec});
  }
  if (n == 3) {
    // planes: kernels of nonzero functionals up to scalar; basis by solving
    for (int lead = 0; lead < 3; ++lead) {
      std::uint64_t cnt = 1;
      for (int t = lead + 1; t < 3; ++t) cnt *= p;
      for (std::uint64_t c = 0; c < cnt; ++c) {
        std::vector<int> f(3, 0);
        f[lead] = 1;
        std::uint64_t x = c;
        for (int t = lead + 1; t < 3; ++t) {
          f[t] = (int)(x % p);
          x /= p;
        }
        // two independent solutions of f.w = 0 mod p
        std::vector<std::vector<int>> basis;
        for (int t = 0; t < 3 && (int)basis.size() < 2; ++t) {
          if (t == lead) continue;
          std::vector<int> w(3, 0);
          w[t] = 1;
          w[lead] = (int)((p - f[t] % p) % p);
          basis.push_back(w);
        }
        subspaces.push_back(basis);
      }
    }
  } else if (n > 3) {
    throw InvalidArgument("vertex_neighbors: n <= 3 supported");
  }
  check_guard(subspaces.size(), guard, "vertex_neighbors");

  ExactMat H = v.as_matrix();
  std::set<std::string> seen;
  std::vector<VertexLattice> out;
  for (const auto& W : subspaces) {
    // generators: p*H columns plus H*w for w in the subspace basis
    int k = n + (int)W.size();
    // build an n x k matrix; reuse lattice_class by embedding in ExactMat of
    // size n with extra columns handled through a rectangular pass
    std::vector<std::vector<mpq_class>> cols;
    for (int j = 0; j < n; ++j) {
      std::vector<mpq_class> c(n);
      for (int i = 0; i < n; ++i) c[i] = mpq_class(p) * H.at(i, j);
      cols.push_back(c);
    }
    for (const auto& w : W) {
      std::vector<mpq_class> c(n, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c[i] += H.at(i, j) * w[j];
      cols.push_back(c);
    }
    (void)k;
    // rectangular Hermite: use a temporary square matrix trick by
    // triangularizing the n x k system directly
    // (duplicate of lattice_class with k columns)
    {
      int kk = (int)cols.size();
      for (int i = n - 1; i >= 0; --i) {
        int last = i + kk - n;
        int piv = -1;
        long best = 0;
        for (int j = 0; j <= last; ++j) {
          if (cols[j][i] == 0) continue;
          long vv = val_p(cols[j][i], v.p);
          if (piv < 0 || vv < best) {
            piv = j;
            best = vv;
          }
        }
        if (piv < 0) throw DomainError("vertex_neighbors: singular");
        std::swap(cols[piv], cols[last]);
        mpq_class scale = p_power(v.p, best) / cols[last][i];
        for (int r = 0; r <= i; ++r) cols[last][r] *= scale;
        cols[last][i] = p_power(v.p, best);
        for (int j = 0; j < last; ++j) {
          if (cols[j][i] == 0) continue;
          mpq_class f = cols[j][i] / cols[last][i];
          for (int r = 0; r <= i; ++r) cols[j][r] -= f * cols[last][r];
          cols[j][i] = 0;
        }
      }
      ExactMat sq(n);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) sq.at(i, j) = cols[kk - n + j][i];
      VertexLattice nb = lattice_class(sq, v.p);
      if (nb == v) continue;
      if (seen.insert(nb.key()).second) out.push_back(nb);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

LatticeBall vertices_in_ball(int n, long p, int radius, std::uint64_t guard) {
  if (radius < 0) throw InvalidArgument("vertices_in_ball: radius >= 0");
  LatticeBall ball;
  ball.n = n;
  ball.p = p;
  ball.radius = radius;
  VertexLattice o = origin_vertex(n, p);
  ball.vertices.push_back(o);
  ball.dist.push_back(0);
  ball.index[o.key()] = 0;
  std::deque<int> q{0};
  while (!q.empty()) {
    int cur = q.front();
    q.pop_front();
    if (ball.dist[cur] == radius) continue;
    for (const auto& nb : vertex_neighbors(ball.vertices[cur], guard)) {
      auto it = ball.index.find(nb.key());
      if (it != ball.index.end()) {
        if (it->second > cur) {
          // record the edge once, from the earlier vertex
        }
        continue;
      }
      check_guard(ball.vertices.size() + 1, guard, "vertices_in_ball");
      int idx = (int)ball.vertices.size();
      ball.vertices.push_back(nb);
      ball.dist.push_back(ball.dist[cur] + 1);
      ball.index[nb.key()] = idx;
      ball.edges.push_back({cur, idx});
      q.push_back(idx);
    }
  }
  // complete the edge set: adjacent pairs both inside the ball
  std::set<std::pair<int, int>> eset(ball.edges.begin(), ball.edges.end());
  for (int i = 0; i < (int)ball.vertices.size(); ++i)
    for (const auto& nb : vertex_neighbors(ball.vertices[i], guard)) {
      int j = ball.find(nb);
      if (j < 0 || j == i) continue;
      eset.insert({std::min(i, j), std::max(i, j)});
    }
  ball.edges.assign(eset.begin(), eset.end());
  return ball;
}

int LatticeBall::find(const VertexLattice& v) const {
  auto it = index.find(v.key());
  return it == index.end() ? -1 : it->second;
}

TreeWitness tree_witness(const VertexLattice& v) {
  if (v.n != 2) throw InvalidArgument("tree_witness: n = 2 only");
  const long p = v.p;
  mpz_class A = v.at(0, 0), C = v.at(0, 1), B = v.at(1, 1);
  long a = val_p(mpq_class(A), p);
  long b = val_p(mpq_class(B), p);
  TreeWitness w;
  if (C == 0 || b == 0) {
    // upper witness: v = (1 + lambda E12) * diag(p^a, p^b), lambda = C / p^b
    w.upper = true;
    w.lambda = mpq_class(C) / p_power(p, b);
    w.diag = {a, b};
    w.u = ExactMat::elementary(2, 1, 2, w.lambda);
  } else {
    // canonical form with C a unit and b > 0: lower witness
    // v = (1 + mu E21) * diag(1, p^{a+b}) with mu = p^b / C
    w.upper = false;
    w.lambda = p_power(p, b) / mpq_class(C);
    w.diag = {0, a + b};
    w.u = ExactMat::elementary(2, 2, 1, w.lambda);
  }
  if (w.lambda != 0 && val_p(w.lambda, p) < 0)
    throw DomainError("tree_witness: non-integral witness");
  // sanity: the witness reproduces the vertex
  std::vector<mpq_class> d = {p_power(p, w.diag[0]), p_power(p, w.diag[1])};
  if (!(act_vertex(w.u * ExactMat::diagonal(d), origin_vertex(2, p)) == v))
    throw DomainError("tree_witness: decomposition check failed");
  return w;
}

long witness_alpha_coord(const TreeWitness& w) {
  // apartment vertex diag(p^{a1}, p^{a2}) sits at x = (-a1, -a2):
  // <x, e1 - e2> = a2 - a1
  return w.diag[1] - w.diag[0];
}

long torus_distance(const VertexLattice& v) {
  if (v.n != 2) throw InvalidArgument("torus_distance: n = 2 only");
  TreeWitness w = tree_witness(v);
  if (w.lambda == 0) return 0;
  long vl = val_p(w.lambda, v.p);
  long c = witness_alpha_coord(w);
  // u in U_{alpha, v(lambda)} fixes {<x, alpha> >= -v(lambda)} (and the
  // mirror statement on the lower side); distance = overshoot along the ray
  long d = w.upper ? (-vl - c) : (-vl + c);
  return std::max(0L, d);
}

}  // namespace btlab
