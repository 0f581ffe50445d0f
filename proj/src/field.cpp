#include "btlab/field.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace btlab {

namespace {

using Poly = std::vector<mpq_class>;

void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  poly_trim(c);
  return c;
}

// division with remainder, monic-friendly
void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  r = a;
  poly_trim(r);
  q.assign(r.size() > b.size() ? r.size() - b.size() + 1 : 1, mpq_class(0));
  Poly bb = b;
  poly_trim(bb);
  if (bb.empty()) throw InvalidArgument("poly division by zero");
  while (r.size() >= bb.size() && !r.empty()) {
    mpq_class f = r.back() / bb.back();
    size_t shift = r.size() - bb.size();
    q[shift] += f;
    for (size_t i = 0; i < bb.size(); ++i) r[shift + i] -= f * bb[i];
    poly_trim(r);
  }
  poly_trim(q);
}

Poly poly_mod(const Poly& a, const Poly& b) {
  Poly q, r;
  poly_divmod(a, b, q, r);
  return r;
}

}  // namespace

const std::vector<mpq_class>& Cyc::cyclotomic_poly(int N) {
  static std::map<int, Poly> cache;
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  // Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d
  Poly num(N + 1, mpq_class(0));
  num[0] = -1;
  num[N] = 1;
  for (int d = 1; d < N; ++d) {
    if (N % d != 0) continue;
    Poly q, r;
    poly_divmod(num, cyclotomic_poly(d), q, r);
    if (!r.empty()) throw DomainError("cyclotomic recursion: nonzero remainder");
    num = q;
  }
  return cache.emplace(N, num).first->second;
}

Cyc Cyc::zeta(int N, long power) {
  if (N < 1) throw InvalidArgument("zeta: N >= 1");
  long k = ((power % N) + N) % N;
  if (N == 1) return integer(1);
  if (N == 2) return integer(k == 0 ? 1 : -1);
  const Poly& phi = cyclotomic_poly(N);
  int deg = (int)phi.size() - 1;
  Cyc x;
  x.N_ = N;
  x.c_.assign(deg, mpq_class(0));
  // zeta^k reduced mod Phi_N
  Poly z(k + 1, mpq_class(0));
  z[k] = 1;
  Poly r = poly_mod(z, phi);
  for (size_t i = 0; i < r.size(); ++i) x.c_[i] = r[i];
  return x;
}

bool Cyc::is_zero() const {
  for (const auto& q : c_)
    if (q != 0) return false;
  return true;
}

bool Cyc::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

mpq_class Cyc::as_rational() const {
  if (!is_rational()) throw DomainError("Cyc: not rational");
  return c_[0];
}

void Cyc::promote(Cyc& a, Cyc& b) {
  if (a.N_ == b.N_) return;
  if (a.N_ == 1 && a.is_rational()) {
    mpq_class q = a.c_[0];
    a = rational(q);
    a.N_ = b.N_;
    a.c_.assign(b.c_.size(), mpq_class(0));
    a.c_[0] = q;
    return;
  }
  if (b.N_ == 1 && b.is_rational()) {
    promote(b, a);
    return;
  }
  throw InvalidArgument("Cyc: mixed cyclotomic orders");
}

Cyc Cyc::operator+(const Cyc& o) const {
  Cyc a = *this, b = o;
  promote(a, b);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  return a;
}

Cyc Cyc::operator-(const Cyc& o) const { return *this + (-o); }

Cyc Cyc::operator-() const {
  Cyc a = *this;
  for (auto& q : a.c_) q = -q;
  return a;
}

Cyc Cyc::operator*(const Cyc& o) const {
  Cyc a = *this, b = o;
  promote(a, b);
  if (a.N_ == 1) {
    a.c_[0] *= b.c_[0];
    return a;
  }
  Poly prod = poly_mul(a.c_, b.c_);
  Poly r = poly_mod(prod, cyclotomic_poly(a.N_));
  Cyc out;
  out.N_ = a.N_;
  out.c_.assign(a.c_.size(), mpq_class(0));
  for (size_t i = 0; i < r.size(); ++i) out.c_[i] = r[i];
  return out;
}

Cyc Cyc::inverse() const {
  if (is_zero()) throw DomainError("Cyc: inverse of zero");
  if (N_ == 1) {
    Cyc out;
    out.c_[0] = 1 / c_[0];
    return out;
  }
  // extended Euclid: u * this + v * Phi_N = 1
  Poly r0 = cyclotomic_poly(N_), r1 = c_;
  poly_trim(r1);
  Poly s0 = {}, s1 = {mpq_class(1)};
  while (true) {
    poly_trim(r1);
    if (r1.empty()) throw DomainError("Cyc: not invertible (unexpected)");
    if (r1.size() == 1) break;
    Poly q, r;
    poly_divmod(r0, r1, q, r);
    Poly s2 = s0;
    Poly qs = poly_mul(q, s1);
    s2.resize(std::max(s2.size(), qs.size()), mpq_class(0));
    for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    poly_trim(s2);
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
  }
  mpq_class lead = r1[0];
  Cyc out;
  out.N_ = N_;
  out.c_.assign(c_.size(), mpq_class(0));
  Poly inv = poly_mod(s1, cyclotomic_poly(N_));
  for (size_t i = 0; i < inv.size(); ++i) out.c_[i] = inv[i] / lead;
  return out;
}

bool Cyc::operator==(const Cyc& o) const {
  Cyc a = *this, b = o;
  promote(a, b);
  return a.c_ == b.c_;
}

std::string Cyc::str() const {
  if (is_rational()) return c_[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    os << c_[i].get_str();
    if (i > 0) os << "*z" << N_ << "^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------- matrices

CMat CMat::identity(int n) {
  CMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Cyc::integer(1);
  return m;
}

namespace {

bool all_rational(const CMat& m) {
  for (const auto& x : m.a)
    if (!(x.order() == 1)) return false;
  return true;
}

}  // namespace

CMat CMat::operator*(const CMat& o) const {
  if (cols != o.rows) throw InvalidArgument("CMat: size mismatch");
  CMat r(rows, o.cols);
  if (all_rational(*this) && all_rational(o)) {
    // integer fast path: clear denominators, multiply over Z, recombine
    mpz_class dA = 1, dB = 1;
    for (const auto& x : a) mpz_lcm(dA.get_mpz_t(), dA.get_mpz_t(),
                                    x.as_rational().get_den_mpz_t());
    for (const auto& x : o.a) mpz_lcm(dB.get_mpz_t(), dB.get_mpz_t(),
                                      x.as_rational().get_den_mpz_t());
    std::vector<mpz_class> A((size_t)rows * cols), B((size_t)o.rows * o.cols);
    for (size_t i = 0; i < a.size(); ++i) {
      mpq_class q = a[i].as_rational() * mpq_class(dA);
      A[i] = q.get_num();
    }
    for (size_t i = 0; i < o.a.size(); ++i) {
      mpq_class q = o.a[i].as_rational() * mpq_class(dB);
      B[i] = q.get_num();
    }
    mpq_class den(dA * dB);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < o.cols; ++j) {
        mpz_class acc = 0;
        for (int k = 0; k < cols; ++k)
          acc += A[(size_t)i * cols + k] * B[(size_t)k * o.cols + j];
        mpq_class q(acc);
        q /= den;
        q.canonicalize();
        r.at(i, j) = Cyc::rational(q);
      }
    return r;
  }
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < o.cols; ++j) {
      Cyc acc;
      for (int k = 0; k < cols; ++k) acc = acc + at(i, k) * o.at(k, j);
      r.at(i, j) = acc;
    }
  return r;
}

CMat CMat::operator+(const CMat& o) const {
  if (rows != o.rows || cols != o.cols)
    throw InvalidArgument("CMat: size mismatch");
  CMat r(rows, cols);
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
  return r;
}

CMat CMat::operator-(const CMat& o) const {
  if (rows != o.rows || cols != o.cols)
    throw InvalidArgument("CMat: size mismatch");
  CMat r(rows, cols);
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
  return r;
}

CMat CMat::scaled(const Cyc& s) const {
  CMat r(rows, cols);
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] * s;
  return r;
}

bool CMat::operator==(const CMat& o) const {
  if (rows != o.rows || cols != o.cols) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != o.a[i]) return false;
  return true;
}

bool CMat::is_zero() const {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

Cyc CMat::trace() const {
  if (rows != cols) throw InvalidArgument("trace: square only");
  Cyc t;
  for (int i = 0; i < rows; ++i) t = t + at(i, i);
  return t;
}

CMat CMat::transpose() const {
  CMat r(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
  return r;
}

CMat rref(const CMat& m, std::vector<int>* pivots) {
  CMat w = m;
  if (pivots) pivots->clear();
  int r = 0;
  for (int c = 0; c < w.cols && r < w.rows; ++c) {
    int piv = -1;
    for (int i = r; i < w.rows; ++i)
      if (!w.at(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < w.cols; ++j) std::swap(w.at(piv, j), w.at(r, j));
    Cyc inv = w.at(r, c).inverse();
    for (int j = 0; j < w.cols; ++j) w.at(r, j) = w.at(r, j) * inv;
    for (int i = 0; i < w.rows; ++i) {
      if (i == r || w.at(i, c).is_zero()) continue;
      Cyc f = w.at(i, c);
      for (int j = 0; j < w.cols; ++j)
        w.at(i, j) = w.at(i, j) - f * w.at(r, j);
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return w;
}

long rank(const CMat& m) {
  std::vector<int> piv;
  rref(m, &piv);
  return (long)piv.size();
}

CMat column_space_basis(const CMat& m) {
  std::vector<int> piv;
  rref(m, &piv);
  CMat b(m.rows, (int)piv.size());
  for (size_t k = 0; k < piv.size(); ++k)
    for (int i = 0; i < m.rows; ++i) b.at(i, (int)k) = m.at(i, piv[k]);
  return b;
}

CMat hstack(const CMat& a, const CMat& b) {
  if (a.rows != b.rows) throw InvalidArgument("hstack: row mismatch");
  CMat r(a.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) r.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols; ++j) r.at(i, a.cols + j) = b.at(i, j);
  }
  return r;
}

CMat vstack(const CMat& a, const CMat& b) {
  if (a.cols != b.cols) throw InvalidArgument("vstack: col mismatch");
  CMat r(a.rows + b.rows, a.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) r.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < a.cols; ++j) r.at(a.rows + i, j) = b.at(i, j);
  return r;
}

bool colspace_contains(const CMat& space, const CMat& vectors) {
  return rank(space) == rank(hstack(space, vectors));
}

bool colspace_equal(const CMat& a, const CMat& b) {
  return colspace_contains(a, b) && colspace_contains(b, a);
}

CMat solve_columns(const CMat& A, const CMat& B) {
  if (A.rows != B.rows) throw InvalidArgument("solve_columns: row mismatch");
  std::vector<int> piv;
  CMat w = rref(hstack(A, B), &piv);
  for (int c : piv)
    if (c >= A.cols) throw DomainError("solve_columns: inconsistent system");
  CMat X(A.cols, B.cols);
  for (size_t r = 0; r < piv.size(); ++r)
    for (int j = 0; j < B.cols; ++j) X.at(piv[r], j) = w.at((int)r, A.cols + j);
  // solution uses pivot columns only; free columns get coefficient 0
  return X;
}

CMat null_space(const CMat& m) {
  std::vector<int> piv;
  CMat w = rref(m, &piv);
  std::vector<bool> is_piv(m.cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < m.cols; ++c)
    if (!is_piv[c]) free_cols.push_back(c);
  CMat ns(m.cols, (int)free_cols.size());
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int fc = free_cols[k];
    ns.at(fc, (int)k) = Cyc::integer(1);
    for (size_t r = 0; r < piv.size(); ++r)
      ns.at(piv[r], (int)k) = -w.at((int)r, fc);
  }
  return ns;
}

}  // namespace btlab
