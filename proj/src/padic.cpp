#include "btlab/padic.hpp"

#include <algorithm>
#include <sstream>

namespace btlab {

std::uint64_t pow_u64(long p, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > (std::uint64_t)1 << 62) throw PrecisionError("p^k overflows u64");
    r *= (std::uint64_t)p;
  }
  return r;
}

std::uint64_t inv_mod_pk(std::uint64_t u, long p, int k) {
  std::uint64_t M = pow_u64(p, k);
  u %= M;
  if (u % p == 0) throw DomainError("inv_mod_pk: not a unit");
  // Hensel/Newton iteration from the inverse mod p
  std::uint64_t x = 1;
  {  // inverse mod p by Fermat-free extended Euclid on small numbers
    long long a = (long long)(u % p), m = p, x0 = 0, x1 = 1;
    long long aa = a, mm = m;
    while (aa > 1) {
      long long q = aa / mm;
      long long t = mm;
      mm = aa % mm;
      aa = t;
      t = x0;
      x0 = x1 - q * x0;
      x1 = t;
    }
    if (x1 < 0) x1 += m;
    x = (std::uint64_t)x1;
  }
  // lift: x -> x(2 - ux) doubles the number of correct digits
  int digits = 1;
  while (digits < k) {
    unsigned __int128 t = (unsigned __int128)u * x % M;
    std::uint64_t two_minus = (std::uint64_t)((2 + (unsigned __int128)M - t) % M);
    x = (std::uint64_t)((unsigned __int128)x * two_minus % M);
    digits *= 2;
  }
  return x % M;
}

// ---------------------------------------------------------------- scalar

PadicScalar PadicScalar::make(long p, long val, std::uint64_t unit, int rel) {
  if (rel < 1) throw InvalidArgument("PadicScalar::make: need rel >= 1");
  PadicScalar s(p);
  s.state_ = State::Known;
  s.val_ = val;
  std::uint64_t M = pow_u64(p, rel);
  s.unit_ = unit % M;
  s.rel_ = rel;
  if (s.unit_ % p == 0)
    throw InvalidArgument("PadicScalar::make: unit not coprime to p");
  return s;
}

PadicScalar PadicScalar::from_rational(long p, long long a, long long b,
                                       int rel) {
  if (b == 0) throw InvalidArgument("from_rational: zero denominator");
  if (a == 0) return zero(p);
  long val = 0;
  unsigned long long ua = a < 0 ? -(unsigned long long)a : a;
  unsigned long long ub = b < 0 ? -(unsigned long long)b : b;
  bool neg = (a < 0) != (b < 0);
  while (ua % p == 0) {
    ua /= p;
    ++val;
  }
  while (ub % p == 0) {
    ub /= p;
    --val;
  }
  std::uint64_t M = pow_u64(p, rel);
  std::uint64_t num = ua % M;
  std::uint64_t den = ub % M;
  std::uint64_t u = (std::uint64_t)((unsigned __int128)num *
                                    inv_mod_pk(den, p, rel) % M);
  if (neg) u = (M - u) % M;
  return make(p, val, u, rel);
}

long PadicScalar::val() const {
  switch (state_) {
    case State::Known:
      return val_;
    case State::Zero:
      throw DomainError("val: exact zero has infinite valuation");
    default:
      throw PrecisionError(
          "val: zero at available precision but not certified exact (bound " +
          std::to_string(val_) + ")");
  }
}

long PadicScalar::val_lower_bound() const {
  if (state_ == State::Zero)
    throw DomainError("val_lower_bound: exact zero");
  return val_;
}

std::uint64_t PadicScalar::unit() const {
  if (state_ != State::Known) throw PrecisionError("unit: no digits known");
  return unit_;
}

std::uint64_t PadicScalar::unit_mod(int k) const {
  if (state_ != State::Known || k > rel_)
    throw PrecisionError("unit_mod: insufficient precision");
  return unit_ % pow_u64(p_, k);
}

PadicScalar PadicScalar::operator-() const {
  if (state_ != State::Known) return *this;
  std::uint64_t M = pow_u64(p_, rel_);
  return make(p_, val_, (M - unit_) % M, rel_);
}

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
  if (p_ != o.p_) throw InvalidArgument("p mismatch");
  if (state_ == State::Zero || o.state_ == State::Zero) return zero(p_);
  if (state_ == State::VagueZero || o.state_ == State::VagueZero)
    return vague(p_, val_ + o.val_);  // bound adds in every mixed case
  int rel = std::min(rel_, o.rel_);
  std::uint64_t M = pow_u64(p_, rel);
  std::uint64_t u =
      (std::uint64_t)((unsigned __int128)(unit_ % M) * (o.unit_ % M) % M);
  return make(p_, val_ + o.val_, u, rel);
}

PadicScalar PadicScalar::inverse() const {
  if (state_ == State::Zero) throw DomainError("inverse of exact zero");
  if (state_ == State::VagueZero)
    throw PrecisionError("inverse: valuation not certified");
  return make(p_, -val_, inv_mod_pk(unit_, p_, rel_), rel_);
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
  if (p_ != o.p_) throw InvalidArgument("p mismatch");
  if (state_ == State::Zero) return o;
  if (o.state_ == State::Zero) return *this;
  // absolute precision window of each operand
  long abs_a = val_ + (state_ == State::Known ? rel_ : 0);
  long abs_b = o.val_ + (o.state_ == State::Known ? o.rel_ : 0);
  long abs = std::min(abs_a, abs_b);
  if (state_ == State::VagueZero && o.state_ == State::VagueZero)
    return vague(p_, std::min(val_, o.val_));
  if (state_ == State::VagueZero || o.state_ == State::VagueZero) {
    const PadicScalar& known = state_ == State::Known ? *this : o;
    const PadicScalar& vag = state_ == State::Known ? o : *this;
    if (vag.val_ > known.val_) {
      // digits of the known part survive up to the vague bound
      int rel = (int)std::min<long>(known.rel_, vag.val_ - known.val_);
      if (rel < 1) return vague(p_, std::min(known.val_, vag.val_));
      return make(p_, known.val_, known.unit_ % pow_u64(p_, rel), rel);
    }
    return vague(p_, std::min(known.val_, vag.val_));
  }
  long v = std::min(val_, o.val_);
  int window = (int)(abs - v);
  if (window < 1) return vague(p_, abs);
  if (window > 62) window = 62;  // u64 cap; values here stay far below
  std::uint64_t M = pow_u64(p_, window);
  std::uint64_t ua =
      (std::uint64_t)((unsigned __int128)unit_ * pow_u64(p_, (int)(val_ - v)) % M);
  std::uint64_t ub =
      (std::uint64_t)((unsigned __int128)o.unit_ * pow_u64(p_, (int)(o.val_ - v)) % M);
  std::uint64_t s = (ua + ub) % M;
  if (s == 0) return vague(p_, v + window);
  int t = 0;
  while (s % p_ == 0) {
    s /= p_;
    ++t;
  }
  return make(p_, v + t, s, window - t);
}

PadicScalar::Cmp PadicScalar::val_at_least(long t) const {
  switch (state_) {
    case State::Zero:
      return Cmp::True;
    case State::Known:
      return val_ >= t ? Cmp::True : Cmp::False;
    default:
      return val_ >= t ? Cmp::True : Cmp::Unknown;
  }
}

bool PadicScalar::require_val_at_least(long t) const {
  Cmp c = val_at_least(t);
  if (c == Cmp::Unknown)
    throw PrecisionError("membership threshold " + std::to_string(t) +
                         " not decidable at available precision");
  return c == Cmp::True;
}

bool PadicScalar::is_one_mod(long t) const {
  PadicScalar one = from_int(p_, 1, std::max(rel_, 1));
  return (*this - one).require_val_at_least(t);
}

std::string PadicScalar::str() const {
  std::ostringstream os;
  switch (state_) {
    case State::Zero:
      os << "0";
      break;
    case State::VagueZero:
      os << "O(" << p_ << "^" << val_ << ")";
      break;
    default:
      os << unit_ << "*" << p_ << "^" << val_ << "+O(" << p_ << "^"
         << (val_ + rel_) << ")";
  }
  return os.str();
}

void PadicScalar::normalize() {}

// ---------------------------------------------------------------- matrix

PadicMatrix PadicMatrix::identity(int n, long p, int rel) {
  PadicMatrix m(n, p);
  for (int i = 0; i < n; ++i) m.at(i, i) = PadicScalar::from_int(p, 1, rel);
  return m;
}

PadicMatrix PadicMatrix::operator*(const PadicMatrix& o) const {
  if (n_ != o.n_ || p_ != o.p_) throw InvalidArgument("matrix mismatch");
  PadicMatrix r(n_, p_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      PadicScalar acc = PadicScalar::zero(p_);
      for (int k = 0; k < n_; ++k) acc = acc + at(i, k) * o.at(k, j);
      r.at(i, j) = acc;
    }
  return r;
}

PadicMatrix PadicMatrix::operator+(const PadicMatrix& o) const {
  PadicMatrix r(n_, p_);
  for (int i = 0; i < n_ * n_; ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

PadicMatrix PadicMatrix::operator-(const PadicMatrix& o) const {
  PadicMatrix r(n_, p_);
  for (int i = 0; i < n_ * n_; ++i) r.a_[i] = a_[i] + (-o.a_[i]);
  return r;
}

namespace {

// pivot with minimal certified valuation in column/submatrix
int pick_pivot(const PadicMatrix& m, int col, int from,
               const std::vector<int>& rows) {
  int best = -1;
  long best_val = 0;
  for (int r = from; r < m.n(); ++r) {
    const PadicScalar& x = m.at(rows[r], col);
    if (x.is_zero() || x.is_vague()) continue;
    long v = x.val();
    if (best < 0 || v < best_val) {
      best = r;
      best_val = v;
    }
  }
  return best;
}

}  // namespace

PadicScalar PadicMatrix::det() const {
  PadicMatrix m = *this;
  std::vector<int> rows(n_);
  for (int i = 0; i < n_; ++i) rows[i] = i;
  PadicScalar d = PadicScalar::from_int(p_, 1, 62);
  for (int c = 0; c < n_; ++c) {
    int piv = pick_pivot(m, c, c, rows);
    if (piv < 0) {
      // column is exact zero or uncertifiable below the window
      for (int r = c; r < n_; ++r)
        if (m.at(rows[r], c).is_vague())
          throw PrecisionError("det: pivot valuation not certifiable");
      return PadicScalar::zero(p_);
    }
    if (piv != c) {
      std::swap(rows[piv], rows[c]);
      d = -d;
    }
    const PadicScalar pivv = m.at(rows[c], c);
    d = d * pivv;
    for (int r = c + 1; r < n_; ++r) {
      PadicScalar f = m.at(rows[r], c) / pivv;
      if (m.at(rows[r], c).is_zero()) continue;
      for (int cc = c; cc < n_; ++cc)
        m.at(rows[r], cc) = m.at(rows[r], cc) - f * m.at(rows[c], cc);
    }
  }
  return d;
}

PadicMatrix PadicMatrix::inverse() const {
  // Gauss-Jordan with min-valuation pivoting on [A | I]
  PadicMatrix a = *this;
  PadicMatrix b = identity(n_, p_, 62);
  std::vector<int> rows(n_);
  for (int i = 0; i < n_; ++i) rows[i] = i;
  for (int c = 0; c < n_; ++c) {
    int piv = pick_pivot(a, c, c, rows);
    if (piv < 0) {
      for (int r = c; r < n_; ++r)
        if (a.at(rows[r], c).is_vague())
          throw PrecisionError("inverse: pivot not certifiable");
      throw DomainError("inverse: singular matrix");
    }
    std::swap(rows[piv], rows[c]);
    PadicScalar inv = a.at(rows[c], c).inverse();
    for (int cc = 0; cc < n_; ++cc) {
      a.at(rows[c], cc) = a.at(rows[c], cc) * inv;
      b.at(rows[c], cc) = b.at(rows[c], cc) * inv;
    }
    for (int r = 0; r < n_; ++r) {
      if (r == c) continue;
      PadicScalar f = a.at(rows[r], c);
      if (f.is_zero()) continue;
      for (int cc = 0; cc < n_; ++cc) {
        a.at(rows[r], cc) = a.at(rows[r], cc) - f * a.at(rows[c], cc);
        b.at(rows[r], cc) = b.at(rows[r], cc) - f * b.at(rows[c], cc);
      }
    }
  }
  PadicMatrix out(n_, p_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out.at(i, j) = b.at(rows[i], j);
  return out;
}

std::string PadicMatrix::str() const {
  std::ostringstream os;
  for (int i = 0; i < n_; ++i) {
    os << (i == 0 ? "[" : " ");
    for (int j = 0; j < n_; ++j) os << at(i, j).str() << (j + 1 < n_ ? ", " : "");
    os << (i + 1 < n_ ? ";\n" : "]");
  }
  return os.str();
}

// ---------------------------------------------------------------- iwasawa

Iwasawa iwasawa_decompose(const PadicMatrix& g) {
  const int n = g.n();
  const long p = g.p();
  // column operations over O: g * C = b upper triangular; k = C^{-1}
  PadicMatrix b = g;
  PadicMatrix cinv = PadicMatrix::identity(n, p, 62);  // accumulates C^{-1} = k
  // process rows bottom-up; pivot = min-valuation entry in the active row
  for (int i = n - 1; i >= 0; --i) {
    int piv = -1;
    long best = 0;
    for (int j = 0; j <= i; ++j) {
      const PadicScalar& x = b.at(i, j);
      if (x.is_zero() || x.is_vague()) continue;
      if (piv < 0 || x.val() < best) {
        piv = j;
        best = x.val();
      }
    }
    if (piv < 0) {
      for (int j = 0; j <= i; ++j)
        if (b.at(i, j).is_vague())
          throw PrecisionError("iwasawa: pivot valuation not certifiable");
      throw DomainError("iwasawa: singular matrix");
    }
    // pivot minimality keeps the column operations integral; a cancelled
    // entry whose bound sits below the pivot valuation is not decidable
    for (int j = 0; j <= i; ++j)
      if (b.at(i, j).is_vague() && b.at(i, j).val_lower_bound() < best)
        throw PrecisionError("iwasawa: cancelled entry below pivot valuation");
    if (piv != i) {
      // swap columns piv <-> i of b; row swap on the k side
      for (int r = 0; r < n; ++r) std::swap(b.at(r, piv), b.at(r, i));
      for (int c = 0; c < n; ++c) std::swap(cinv.at(piv, c), cinv.at(i, c));
    }
    PadicScalar pivv = b.at(i, i);
    for (int j = 0; j < i; ++j) {
      if (b.at(i, j).is_zero()) continue;
      PadicScalar f = b.at(i, j) / pivv;  // in O by pivot minimality
      for (int r = 0; r <= i; ++r) b.at(r, j) = b.at(r, j) - f * b.at(r, i);
      for (int c = 0; c < n; ++c)
        cinv.at(i, c) = cinv.at(i, c) + f * cinv.at(j, c);
    }
  }
  return Iwasawa{b, cinv};
}

}  // namespace btlab
