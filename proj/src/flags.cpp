#include "btlab/flags.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "btlab/kernels.hpp"

namespace btlab {

FlagContext::FlagContext(int n_, long p_, int m_) : n(n_), p(p_), m(m_) {
  std::uint64_t MM = ipow_u64((std::uint64_t)p, (unsigned)m);
  if (MM >= (1ull << 31))
    throw InvalidArgument("FlagContext: p^m exceeds 2^31");
  M = (std::uint32_t)MM;
  bits = 1;
  while ((1u << bits) < M) ++bits;
  if ((std::uint64_t)bits * n * n > 62)
    throw InvalidArgument("FlagContext: matrices too wide for u64 encoding");
}

FlagContext::Mat FlagContext::identity() const {
  Mat a(n * n, 0);
  for (int i = 0; i < n; ++i) a[i * n + i] = 1;
  return a;
}

FlagContext::Mat FlagContext::mul(const Mat& a, const Mat& b) const {
  Mat c(n * n, 0);
  kernels::active().matmul_fixedB(a.data(), b.data(), c.data(), 1, n, M);
  return c;
}

std::uint32_t FlagContext::det(const Mat& a) const {
  auto sub = [&](std::uint64_t x, std::uint64_t y) {
    return (std::uint32_t)((x + M - y % M) % M);
  };
  if (n == 1) return a[0] % M;
  if (n == 2)
    return sub((std::uint64_t)a[0] * a[3] % M, (std::uint64_t)a[1] * a[2] % M);
  if (n == 3) {
    std::uint64_t pos = ((std::uint64_t)a[0] * a[4] % M) * a[8] % M;
    pos = (pos + ((std::uint64_t)a[1] * a[5] % M) * a[6]) % M;
    pos = (pos + ((std::uint64_t)a[2] * a[3] % M) * a[7]) % M;
    std::uint64_t neg = ((std::uint64_t)a[2] * a[4] % M) * a[6] % M;
    neg = (neg + ((std::uint64_t)a[0] * a[5] % M) * a[7]) % M;
    neg = (neg + ((std::uint64_t)a[1] * a[3] % M) * a[8]) % M;
    return sub(pos, neg);
  }
  throw InvalidArgument("FlagContext::det: n <= 3 only");
}

int FlagContext::val(std::uint32_t x) const {
  if (x % M == 0) return m;
  int v = 0;
  x %= M;
  while (x % p == 0) {
    x /= (std::uint32_t)p;
    ++v;
  }
  return v;
}

std::uint32_t FlagContext::inv_unit(std::uint32_t u) const {
  return (std::uint32_t)inv_mod_pk(u, p, m);
}

FlagContext::Mat FlagContext::inverse(const Mat& a) const {
  // Gauss-Jordan with unit pivots (valid for invertible matrices over R)
  Mat w = a, inv = identity();
  std::vector<int> rows(n);
  for (int i = 0; i < n; ++i) rows[i] = i;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (w[rows[r] * n + c] % p != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw DomainError("FlagContext::inverse: not invertible");
    std::swap(rows[piv], rows[c]);
    std::uint32_t f = inv_unit(w[rows[c] * n + c]);
    for (int cc = 0; cc < n; ++cc) {
      w[rows[c] * n + cc] = (std::uint32_t)((std::uint64_t)w[rows[c] * n + cc] * f % M);
      inv[rows[c] * n + cc] =
          (std::uint32_t)((std::uint64_t)inv[rows[c] * n + cc] * f % M);
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      std::uint64_t g = w[rows[r] * n + c];
      if (g == 0) continue;
      for (int cc = 0; cc < n; ++cc) {
        w[rows[r] * n + cc] = (std::uint32_t)(
            (w[rows[r] * n + cc] + M - g * w[rows[c] * n + cc] % M) % M);
        inv[rows[r] * n + cc] = (std::uint32_t)(
            (inv[rows[r] * n + cc] + M - g * inv[rows[c] * n + cc] % M) % M);
      }
    }
  }
  Mat out(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i * n + j] = inv[rows[i] * n + j];
  return out;
}

std::uint64_t FlagContext::encode(const Mat& a) const {
  std::uint64_t code = 0;
  for (int k = n * n - 1; k >= 0; --k) code = (code << bits) | a[k];
  return code;
}

FlagContext::Mat FlagContext::decode(std::uint64_t code) const {
  Mat a(n * n);
  std::uint32_t mask = (1u << bits) - 1;
  for (int k = 0; k < n * n; ++k) {
    a[k] = (std::uint32_t)(code & mask);
    code >>= bits;
  }
  return a;
}

FlagContext::Mat FlagContext::canonical_flag(Mat a) const {
  std::vector<int> pivcol(n, -1);
  std::vector<bool> used(n, false);
  for (int i = n - 1; i >= 0; --i) {
    // clear the pivot columns of the rows below
    for (int k = i + 1; k < n; ++k) {
      std::uint64_t f = a[i * n + pivcol[k]];
      if (f == 0) continue;
      for (int c = 0; c < n; ++c)
        a[i * n + c] =
            (std::uint32_t)((a[i * n + c] + M - f * a[k * n + c] % M) % M);
    }
    // leftmost unused column with a unit entry
    int pc = -1;
    for (int c = 0; c < n; ++c)
      if (!used[c] && a[i * n + c] % p != 0) {
        pc = c;
        break;
      }
    if (pc < 0) throw DomainError("canonical_flag: matrix not invertible");
    pivcol[i] = pc;
    used[pc] = true;
    std::uint32_t f = inv_unit(a[i * n + pc]);
    for (int c = 0; c < n; ++c)
      a[i * n + c] = (std::uint32_t)((std::uint64_t)a[i * n + c] * f % M);
  }
  return a;
}

FlagContext::Mat FlagContext::borel_part(const Mat& a, const Mat& canon) const {
  Mat b = mul(a, inverse(canon));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (b[i * n + j] != 0)
        throw DomainError("borel_part: result not upper triangular");
  return b;
}

std::vector<FlagContext::Mat> FlagContext::unit_generators() const {
  std::vector<std::uint32_t> gens;
  if (p == 2) {
    if (m == 1)
      gens = {1};
    else if (m == 2)
      gens = {3};
    else
      gens = {M - 1, 5};
  } else {
    // a primitive root mod p^2 generates the units mod every p^m
    std::uint32_t p2 = (std::uint32_t)(p * p);
    std::uint32_t order = (std::uint32_t)(p - 1) * (std::uint32_t)p;
    std::uint32_t g = 0;
    for (std::uint32_t c = 2; c < p2; ++c) {
      if (c % p == 0) continue;
      std::uint32_t x = 1;
      std::uint32_t ord = 0;
      do {
        x = (std::uint32_t)((std::uint64_t)x * c % p2);
        ++ord;
      } while (x != 1);
      if (ord == order) {
        g = c;
        break;
      }
    }
    gens = {g};
  }
  std::vector<Mat> out;
  for (std::uint32_t u : gens) out.push_back(Mat{u % M});
  return out;
}

std::vector<FlagContext::Mat> FlagContext::borel_generators() const {
  std::vector<Mat> out;
  auto units = unit_generators();
  for (int i = 0; i < n; ++i)
    for (const Mat& u : units) {
      Mat d = identity();
      d[i * n + i] = u[0];
      out.push_back(d);
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Mat e = identity();
      e[i * n + j] = 1;
      out.push_back(e);
    }
  return out;
}

std::vector<FlagContext::Mat> FlagContext::group_generators() const {
  std::vector<Mat> out = borel_generators();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      Mat e = identity();
      e[i * n + j] = 1;
      out.push_back(e);
    }
  return out;
}

std::vector<FlagContext::Mat> FlagContext::enumerate_classes(
    std::uint64_t guard) const {
  std::set<std::uint64_t> seen;
  std::vector<Mat> reps;
  std::vector<Mat> queue{canonical_flag(identity())};
  seen.insert(encode(queue[0]));
  auto gens = group_generators();
  while (!queue.empty()) {
    check_guard(seen.size(), guard, "flag class enumeration");
    Mat cur = queue.back();
    queue.pop_back();
    reps.push_back(cur);
    for (const Mat& g : gens) {
      Mat nxt = canonical_flag(mul(cur, g));
      if (seen.insert(encode(nxt)).second) queue.push_back(nxt);
    }
  }
  std::sort(reps.begin(), reps.end());
  return reps;
}

// ---------------------------------------------------------------- cosets

DoubleCosets double_cosets(int n, long p, long e, std::uint64_t guard) {
  if (e < 0) throw InvalidArgument("double_cosets: need e >= 0");
  long level = e + 1;
  FlagContext ctx(n, p, (int)level);
  mpz_class closed = flag_count_closed_form(n, p, level);
  if (!closed.fits_ulong_p() || closed.get_ui() > guard)
    throw ResourceGuard("double_cosets: class count " + closed.get_str() +
                        " exceeds guard");
  auto reps = ctx.enumerate_classes(guard);
  DoubleCosets dc;
  dc.count = (long)reps.size();
  for (auto& r : reps) dc.reps.push_back(r);
  return dc;
}

DoubleCosets double_coset_count(int n, long p, long e, std::uint64_t guard) {
  return double_cosets(n, p, e, guard);
}

// Independent oracle: sweep all of GL_n(Z/p^{e+1}) and count orbits of the
// left multiplication action of B(Z/p^{e+1}).  The frontier sweep batches
// matrix products through the runtime-dispatched kernels.
mpz_class double_coset_oracle(int n, long p, long e, std::uint64_t guard) {
  long level = e + 1;
  FlagContext ctx(n, p, (int)level);
  const int nn = n * n;
  std::uint64_t space = 1;
  for (int k = 0; k < nn; ++k) {
    space *= ctx.M;
    check_guard(space, guard, "double_coset_oracle state space");
  }
  // mixed-radix encoding over [0, M)^{nn}
  auto enc = [&](const std::uint32_t* a) {
    std::uint64_t c = 0;
    for (int k = nn - 1; k >= 0; --k) c = c * ctx.M + a[k];
    return c;
  };
  std::vector<std::uint64_t> visited((space + 63) / 64, 0);
  auto test_set = [&](std::uint64_t x) {
    std::uint64_t w = x >> 6, b = 1ull << (x & 63);
    bool was = visited[w] & b;
    visited[w] |= b;
    return was;
  };
  // left multiplication by generators: transpose trick reuses the fixed-B
  // batched kernel on transposed states
  auto gens = ctx.borel_generators();
  std::vector<FlagContext::Mat> gensT;
  for (const auto& g : gens) {
    FlagContext::Mat t(nn);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t[j * n + i] = g[i * n + j];
    gensT.push_back(t);
  }
  mpz_class orbits = 0;
  std::vector<std::uint32_t> cur(nn), frontier, next, prod;
  for (std::uint64_t code = 0; code < space; ++code) {
    if (test_set(code)) continue;
    std::uint64_t c = code;
    for (int k = 0; k < nn; ++k) {
      cur[k] = (std::uint32_t)(c % ctx.M);
      c /= ctx.M;
    }
    if (ctx.det(cur) % p == 0) continue;  // not invertible; bit stays set
    ++orbits;
    // BFS of the B-orbit, states stored transposed
    frontier.clear();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) frontier.push_back(cur[j * n + i]);
    while (!frontier.empty()) {
      std::size_t slots = frontier.size() / nn;
      next.clear();
      for (const auto& gt : gensT) {
        prod.assign(frontier.size(), 0);
        kernels::active().matmul_fixedB(frontier.data(), gt.data(),
                                        prod.data(), slots, n, ctx.M);
        for (std::size_t s = 0; s < slots; ++s) {
          // transpose back for encoding
          std::uint32_t tmp[9];
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              tmp[i * n + j] = prod[s * nn + j * n + i];
          std::uint64_t codeN = enc(tmp);
          if (!test_set(codeN))
            next.insert(next.end(), prod.begin() + s * nn,
                        prod.begin() + (s + 1) * nn);
        }
      }
      frontier.swap(next);
    }
  }
  return orbits;
}

}  // namespace btlab
