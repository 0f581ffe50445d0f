#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "btlab/root_system.hpp"

using namespace btlab;

TEST_CASE("root counts and heights per rank") {
  auto rs2 = build_root_system(2);
  CHECK(rs2.roots.size() == 2);
  CHECK(rs2.positive_roots.size() == 1);
  CHECK(rs2.max_height() == 1);

  auto rs3 = build_root_system(3);
  CHECK(rs3.roots.size() == 6);
  CHECK(rs3.positive_roots.size() == 3);
  CHECK(rs3.max_height() == 2);

  auto rs4 = build_root_system(4);
  CHECK(rs4.positive_roots.size() == 6);
  CHECK(rs4.max_height() == 3);

  CHECK_THROWS_AS(build_root_system(1), InvalidArgument);
}

TEST_CASE("roots closed under negation, reduced, simple heights") {
  for (int n = 2; n <= 6; ++n) {
    auto rs = build_root_system(n);
    CHECK((int)rs.roots.size() == n * (n - 1));
    for (const Root& a : rs.roots) {
      bool found = false;
      for (const Root& b : rs.roots)
        if (b == -a) found = true;
      CHECK(found);
    }
    for (const Root& s : rs.simple_roots) CHECK(rs.height(s) == 1);
    // every positive root is a sum of consecutive simples
    for (const Root& a : rs.positive_roots) CHECK(rs.height(a) == a.j - a.i);
  }
}

TEST_CASE("height additivity, exhaustive for n <= 6") {
  for (int n = 2; n <= 6; ++n) {
    auto rs = build_root_system(n);
    for (const Root& a : rs.positive_roots)
      for (const Root& b : rs.positive_roots) {
        // a + b is a root iff a.j == b.i or b.j == a.i
        if (a.j == b.i) {
          Root c{a.i, b.j};
          CHECK(rs.height(c) == rs.height(a) + rs.height(b));
        }
      }
  }
}

TEST_CASE("height rejects negative roots") {
  auto rs = build_root_system(3);
  CHECK_THROWS_AS(rs.height(Root{3, 1}), DomainError);
}

TEST_CASE("pairing examples") {
  std::vector<Frac> origin = {Frac{0}, Frac{0}};
  CHECK(RootSystem::pairing(origin, Root{1, 2}) == Frac{0});
  std::vector<Frac> x = {Frac{1}, Frac{0}};
  CHECK(RootSystem::pairing(x, Root{1, 2}) == Frac{1});
  std::vector<Frac> y = {Frac{1, 2}, Frac{0}, Frac{-1, 2}};
  CHECK(RootSystem::pairing(y, Root{1, 3}) == Frac{1});
  CHECK(RootSystem::pairing(y, Root{3, 1}) == Frac{-1});
  CHECK_THROWS_AS(RootSystem::pairing(origin, Root{1, 3}), InvalidArgument);
}

TEST_CASE("pairing antisymmetry and linearity, sampled") {
  auto rs = build_root_system(4);
  std::vector<Frac> x = {Frac{3, 2}, Frac{-1, 3}, Frac{2}, Frac{0}};
  for (const Root& a : rs.roots) {
    CHECK(RootSystem::pairing(x, a) == -RootSystem::pairing(x, -a));
  }
}

TEST_CASE("sum of d_alpha over positive roots is n(n-1)/2, all n_alpha 1") {
  for (int n = 2; n <= 6; ++n) {
    auto rs = build_root_system(n);
    int total = 0;
    for (const Root& a : rs.positive_roots) {
      total += rs.d_alpha(a);
      CHECK(rs.n_alpha(a) == 1);
    }
    CHECK(total == n * (n - 1) / 2);
  }
}

TEST_CASE("rebuilding yields identical tables") {
  auto a = build_root_system(5);
  auto b = build_root_system(5);
  CHECK(a.roots.size() == b.roots.size());
  for (size_t i = 0; i < a.roots.size(); ++i) CHECK(a.roots[i] == b.roots[i]);
}
