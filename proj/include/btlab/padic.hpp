#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "btlab/util.hpp"

namespace btlab {

// Truncated p-adic scalar in floating form: p^val * unit with the unit known
// modulo p^rel ("rel" digits of relative precision).  Three states:
//   Zero      exact zero (valuation infinity)
//   Known     val exact, unit invertible mod p^rel, rel >= 1
//   VagueZero all digits cancelled: only the bound val(x) >= `bound` is known
// Threshold comparisons are three-valued; public operations turn "unknown at
// this precision" into a PrecisionError rather than guessing.
class PadicScalar {
 public:
  enum class State { Zero, Known, VagueZero };

  PadicScalar() : p_(2), state_(State::Zero) {}
  static PadicScalar zero(long p) { return PadicScalar(p); }
  // value = p^val * unit, unit coprime to p, known mod p^rel
  static PadicScalar make(long p, long val, std::uint64_t unit, int rel);
  // exact small rational a/b (b coprime to p not required; valuation handled)
  static PadicScalar from_rational(long p, long long a, long long b, int rel);
  static PadicScalar from_int(long p, long long a, int rel) {
    return from_rational(p, a, 1, rel);
  }
  static PadicScalar vague(long p, long bound) {
    PadicScalar s(p);
    s.state_ = State::VagueZero;
    s.val_ = bound;
    return s;
  }

  long p() const { return p_; }
  State state() const { return state_; }
  bool is_zero() const { return state_ == State::Zero; }
  bool is_vague() const { return state_ == State::VagueZero; }
  int rel_precision() const { return state_ == State::Known ? rel_ : 0; }

  // exact valuation; PrecisionError on VagueZero, returns LLONG_MAX-style
  // sentinel is avoided: use is_zero() for infinity.
  long val() const;
  // lower bound on the valuation, always available
  long val_lower_bound() const;
  std::uint64_t unit() const;  // Known only
  // unit residue mod p^k (k <= rel), Known only
  std::uint64_t unit_mod(int k) const;

  PadicScalar operator+(const PadicScalar& o) const;
  PadicScalar operator-() const;
  PadicScalar operator-(const PadicScalar& o) const { return *this + (-o); }
  PadicScalar operator*(const PadicScalar& o) const;
  PadicScalar inverse() const;
  PadicScalar operator/(const PadicScalar& o) const {
    return *this * o.inverse();
  }

  // three-valued "val(x) >= t"
  enum class Cmp { True, False, Unknown };
  Cmp val_at_least(long t) const;
  // certified test, PrecisionError on Unknown
  bool require_val_at_least(long t) const;

  bool is_one_mod(long t) const;  // val(x - 1) >= t, certified

  std::string str() const;

 private:
  explicit PadicScalar(long p) : p_(p), state_(State::Zero) {}
  void normalize();

  long p_;
  State state_;
  long val_ = 0;           // Known: valuation; VagueZero: lower bound
  std::uint64_t unit_ = 1; // Known: unit mod p^rel
  int rel_ = 0;            // digits of the unit that are certified
};

std::uint64_t pow_u64(long p, int e);
std::uint64_t inv_mod_pk(std::uint64_t u, long p, int k);

// Dense matrix over truncated p-adics.
class PadicMatrix {
 public:
  PadicMatrix() = default;
  PadicMatrix(int n, long p) : n_(n), p_(p), a_(n * n, PadicScalar::zero(p)) {}
  static PadicMatrix identity(int n, long p, int rel);

  int n() const { return n_; }
  long p() const { return p_; }
  PadicScalar& at(int i, int j) { return a_[i * n_ + j]; }
  const PadicScalar& at(int i, int j) const { return a_[i * n_ + j]; }

  PadicMatrix operator*(const PadicMatrix& o) const;
  PadicMatrix operator+(const PadicMatrix& o) const;
  PadicMatrix operator-(const PadicMatrix& o) const;

  // Gaussian elimination with minimal-valuation pivoting.
  PadicMatrix inverse() const;
  PadicScalar det() const;
  long det_valuation() const { return det().val(); }

  std::string str() const;

 private:
  int n_ = 0;
  long p_ = 2;
  std::vector<PadicScalar> a_;
};

// Iwasawa-type decomposition g = b * k with b upper triangular (diagonal
// p-power times unit) and k integral with unit determinant.  Column
// reduction over the integers of Q_p; exact at surviving precision.
struct Iwasawa {
  PadicMatrix b;
  PadicMatrix k;
};
Iwasawa iwasawa_decompose(const PadicMatrix& g);

}  // namespace btlab
