#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "btlab/congruence.hpp"
#include "btlab/util.hpp"

namespace btlab {

// Matrices over R = Z/p^m as flat u32 arrays, and the canonical form of
// left cosets B(R)\GL_n(R) ("flag classes").  The canonical representative
// is row-reduced from the bottom: each row has a unit pivot normalized to 1,
// rows above a pivot carry 0 in its column, pivot columns are the leftmost
// admissible ones.
struct FlagContext {
  int n;
  long p;
  int m;          // R = Z/p^m
  std::uint32_t M;  // p^m
  int bits;       // bits per entry for u64 encoding

  using Mat = std::vector<std::uint32_t>;

  FlagContext(int n_, long p_, int m_);

  Mat identity() const;
  Mat mul(const Mat& a, const Mat& b) const;
  std::uint32_t det(const Mat& a) const;  // n <= 3 direct expansion
  bool invertible(const Mat& a) const { return det(a) % p != 0; }
  Mat inverse(const Mat& a) const;
  int val(std::uint32_t x) const;           // valuation in R, val(0) = m
  std::uint32_t inv_unit(std::uint32_t u) const;

  std::uint64_t encode(const Mat& a) const;
  Mat decode(std::uint64_t code) const;

  // canonical representative of B(R) * a
  Mat canonical_flag(Mat a) const;
  // solve a = b * canon with b upper triangular; returns b
  Mat borel_part(const Mat& a, const Mat& canon) const;

  std::vector<Mat> unit_generators() const;   // generators of (Z/p^m)^x
  std::vector<Mat> borel_generators() const;  // of B(R)
  std::vector<Mat> group_generators() const;  // of GL_n(R)

  // all flag classes, BFS from the identity class, canonical order
  std::vector<Mat> enumerate_classes(std::uint64_t guard) const;
};

// exact |B\G/K_e| via canonical flag classes over O/P^{e+1}
DoubleCosets double_cosets(int n, long p, long e, std::uint64_t guard);

}  // namespace btlab
