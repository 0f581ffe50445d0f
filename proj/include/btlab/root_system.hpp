#pragma once

#include <vector>

#include "btlab/util.hpp"

namespace btlab {

// A root e_i - e_j of GL_n, stored as the index pair (1-based).
struct Root {
  int i = 0;
  int j = 0;
  bool positive() const { return i < j; }
  Root operator-() const { return Root{j, i}; }
  friend bool operator==(const Root& a, const Root& b) {
    return a.i == b.i && a.j == b.j;
  }
  friend bool operator<(const Root& a, const Root& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  }
};

// Type A_{n-1} root system for GL_n: roots, positive system, heights.
// n_alpha (filtration jump denominator) and d_alpha (root space dimension)
// are both 1 in this type; they are kept explicit because the growth
// constants downstream are stated in terms of them.
struct RootSystem {
  int n = 0;
  std::vector<Root> roots;           // lexicographic in (i, j)
  std::vector<Root> positive_roots;  // i < j, lexicographic
  std::vector<Root> simple_roots;    // e_i - e_{i+1}

  int height(const Root& a) const;   // positive roots only
  int n_alpha(const Root&) const { return 1; }
  int d_alpha(const Root&) const { return 1; }
  int max_height() const { return n - 1; }

  // <x, e_i - e_j> = x_i - x_j for a point with n coordinates
  static Frac pairing(const std::vector<Frac>& x, const Root& a);
};

RootSystem build_root_system(int n);

}  // namespace btlab
