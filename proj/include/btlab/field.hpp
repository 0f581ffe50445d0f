#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "btlab/util.hpp"

namespace btlab {

// Element of a cyclotomic field Q(zeta_N), stored as a polynomial class
// modulo the N-th cyclotomic polynomial.  N = 1 is plain Q; rationals embed
// into any Q(zeta_N), and mixed arithmetic promotes them.  Mixed arithmetic
// between two different N > 1 is rejected.
class Cyc {
 public:
  Cyc() : N_(1), c_(1, mpq_class(0)) {}
  static Cyc rational(const mpq_class& q) {
    Cyc x;
    x.c_[0] = q;
    return x;
  }
  static Cyc integer(long v) { return rational(mpq_class(v)); }
  static Cyc zeta(int N, long power);

  int order() const { return N_; }
  bool is_zero() const;
  bool is_rational() const;
  mpq_class as_rational() const;

  Cyc operator+(const Cyc& o) const;
  Cyc operator-(const Cyc& o) const;
  Cyc operator*(const Cyc& o) const;
  Cyc operator-() const;
  Cyc inverse() const;
  Cyc operator/(const Cyc& o) const { return *this * o.inverse(); }
  bool operator==(const Cyc& o) const;
  bool operator!=(const Cyc& o) const { return !(*this == o); }

  std::string str() const;

  static const std::vector<mpq_class>& cyclotomic_poly(int N);

 private:
  int N_;
  std::vector<mpq_class> c_;  // degree(Phi_N) coefficients
  static void promote(Cyc& a, Cyc& b);
};

// Dense matrix over Cyc with the exact linear algebra the chain complexes
// and idempotents need.  Multiplication has an integer fast path when all
// entries are rational.
struct CMat {
  int rows = 0, cols = 0;
  std::vector<Cyc> a;

  CMat() = default;
  CMat(int r, int c) : rows(r), cols(c), a((size_t)r * c) {}
  static CMat identity(int n);

  Cyc& at(int i, int j) { return a[(size_t)i * cols + j]; }
  const Cyc& at(int i, int j) const { return a[(size_t)i * cols + j]; }

  CMat operator*(const CMat& o) const;
  CMat operator+(const CMat& o) const;
  CMat operator-(const CMat& o) const;
  CMat scaled(const Cyc& s) const;
  bool operator==(const CMat& o) const;
  bool is_zero() const;
  Cyc trace() const;
  CMat transpose() const;
};

long rank(const CMat& m);
// reduced row echelon form; pivots receives the pivot column per row used
CMat rref(const CMat& m, std::vector<int>* pivots = nullptr);
// basis of the column space, as columns (subset of original columns)
CMat column_space_basis(const CMat& m);
CMat hstack(const CMat& a, const CMat& b);
CMat vstack(const CMat& a, const CMat& b);
bool colspace_contains(const CMat& space, const CMat& vectors);
bool colspace_equal(const CMat& a, const CMat& b);
// solve A X = B exactly; throws DomainError when inconsistent
CMat solve_columns(const CMat& A, const CMat& B);
// basis of the null space (as columns)
CMat null_space(const CMat& m);

}  // namespace btlab
