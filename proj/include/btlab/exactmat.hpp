#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "btlab/padic.hpp"
#include "btlab/util.hpp"

namespace btlab {

// Exact rational n x n matrix.  Every group element in this artifact has a
// finite p-adic expansion, so elements are carried exactly as rationals and
// converted to truncated p-adics at a chosen working precision.
class ExactMat {
 public:
  ExactMat() = default;
  ExactMat(int n) : n_(n), a_(n * n, mpq_class(0)) {}
  static ExactMat identity(int n);
  static ExactMat diagonal(const std::vector<mpq_class>& d);
  // elementary unipotent 1 + t E_{ij} (1-based indices)
  static ExactMat elementary(int n, int i, int j, const mpq_class& t);

  int n() const { return n_; }
  mpq_class& at(int i, int j) { return a_[i * n_ + j]; }
  const mpq_class& at(int i, int j) const { return a_[i * n_ + j]; }

  ExactMat operator*(const ExactMat& o) const;
  ExactMat inverse() const;
  mpq_class det() const;
  bool operator==(const ExactMat& o) const { return n_ == n_ && a_ == o.a_; }

  PadicMatrix to_padic(long p, int rel) const;
  std::string str() const;

 private:
  int n_ = 0;
  std::vector<mpq_class> a_;
};

// valuation of an exact rational at p; throws on zero
long val_p(const mpq_class& x, long p);
// x = p^v u: the unit part u as a rational
mpq_class unit_part(const mpq_class& x, long p);
// residue of a p-integral rational mod p^k, canonical in [0, p^k)
std::uint64_t residue_mod_pk(const mpq_class& x, long p, int k);

PadicScalar to_padic_scalar(const mpq_class& x, long p, int rel);

}  // namespace btlab
