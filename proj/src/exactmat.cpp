#include "btlab/exactmat.hpp"

#include <sstream>

namespace btlab {

ExactMat ExactMat::identity(int n) {
  ExactMat m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

ExactMat ExactMat::diagonal(const std::vector<mpq_class>& d) {
  ExactMat m((int)d.size());
  for (int i = 0; i < (int)d.size(); ++i) m.at(i, i) = d[i];
  return m;
}

ExactMat ExactMat::elementary(int n, int i, int j, const mpq_class& t) {
  if (i == j || i < 1 || j < 1 || i > n || j > n)
    throw InvalidArgument("elementary: bad indices");
  ExactMat m = identity(n);
  m.at(i - 1, j - 1) = t;
  return m;
}

ExactMat ExactMat::operator*(const ExactMat& o) const {
  if (n_ != o.n_) throw InvalidArgument("ExactMat: size mismatch");
  ExactMat r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      mpq_class acc = 0;
      for (int k = 0; k < n_; ++k) acc += at(i, k) * o.at(k, j);
      r.at(i, j) = acc;
    }
  return r;
}

mpq_class ExactMat::det() const {
  ExactMat m = *this;
  mpq_class d = 1;
  for (int c = 0; c < n_; ++c) {
    int piv = -1;
    for (int r = c; r < n_; ++r)
      if (m.at(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int cc = 0; cc < n_; ++cc) std::swap(m.at(piv, cc), m.at(c, cc));
      d = -d;
    }
    d *= m.at(c, c);
    for (int r = c + 1; r < n_; ++r) {
      if (m.at(r, c) == 0) continue;
      mpq_class f = m.at(r, c) / m.at(c, c);
      for (int cc = c; cc < n_; ++cc) m.at(r, cc) -= f * m.at(c, cc);
    }
  }
  return d;
}

ExactMat ExactMat::inverse() const {
  ExactMat m = *this;
  ExactMat inv = identity(n_);
  for (int c = 0; c < n_; ++c) {
    int piv = -1;
    for (int r = c; r < n_; ++r)
      if (m.at(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw DomainError("ExactMat::inverse: singular");
    if (piv != c)
      for (int cc = 0; cc < n_; ++cc) {
        std::swap(m.at(piv, cc), m.at(c, cc));
        std::swap(inv.at(piv, cc), inv.at(c, cc));
      }
    mpq_class f = 1 / m.at(c, c);
    for (int cc = 0; cc < n_; ++cc) {
      m.at(c, cc) *= f;
      inv.at(c, cc) *= f;
    }
    for (int r = 0; r < n_; ++r) {
      if (r == c || m.at(r, c) == 0) continue;
      mpq_class g = m.at(r, c);
      for (int cc = 0; cc < n_; ++cc) {
        m.at(r, cc) -= g * m.at(c, cc);
        inv.at(r, cc) -= g * inv.at(c, cc);
      }
    }
  }
  return inv;
}

PadicMatrix ExactMat::to_padic(long p, int rel) const {
  PadicMatrix m(n_, p);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m.at(i, j) = to_padic_scalar(at(i, j), p, rel);
  return m;
}

std::string ExactMat::str() const {
  std::ostringstream os;
  for (int i = 0; i < n_; ++i) {
    os << (i == 0 ? "[" : "; ");
    for (int j = 0; j < n_; ++j)
      os << at(i, j).get_str() << (j + 1 < n_ ? " " : "");
  }
  os << "]";
  return os.str();
}

long val_p(const mpq_class& x, long p) {
  if (x == 0) throw DomainError("val_p: zero");
  long v = 0;
  mpz_class num = x.get_num(), den = x.get_den();
  while (mpz_divisible_ui_p(num.get_mpz_t(), p)) {
    mpz_divexact_ui(num.get_mpz_t(), num.get_mpz_t(), p);
    ++v;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), p)) {
    mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), p);
    --v;
  }
  return v;
}

mpq_class unit_part(const mpq_class& x, long p) {
  long v = val_p(x, p);
  mpq_class pw(1);
  if (v >= 0)
    for (long i = 0; i < v; ++i) pw *= p;
  else
    for (long i = 0; i < -v; ++i) pw /= p;
  return x / pw;
}

std::uint64_t residue_mod_pk(const mpq_class& x, long p, int k) {
  std::uint64_t M = pow_u64(p, k);
  if (x == 0) return 0;
  if (val_p(x, p) < 0)
    throw DomainError("residue_mod_pk: not p-integral");
  mpz_class num = x.get_num(), den = x.get_den();
  mpz_class Mz((unsigned long)0);
  mpz_import(Mz.get_mpz_t(), 1, 1, sizeof(M), 0, 0, &M);
  mpz_class nr = num % Mz;
  if (nr < 0) nr += Mz;
  mpz_class dr = den % Mz;
  std::uint64_t nu = mpz_get_ui(nr.get_mpz_t());
  std::uint64_t du = mpz_get_ui(dr.get_mpz_t());
  std::uint64_t dinv = inv_mod_pk(du, p, k);
  return (std::uint64_t)((unsigned __int128)nu * dinv % M);
}

PadicScalar to_padic_scalar(const mpq_class& x, long p, int rel) {
  if (x == 0) return PadicScalar::zero(p);
  long v = val_p(x, p);
  mpq_class u = unit_part(x, p);
  return PadicScalar::make(p, v, residue_mod_pk(u, p, rel), rel);
}

}  // namespace btlab
