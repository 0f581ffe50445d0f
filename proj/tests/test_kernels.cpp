#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "btlab/kernels.hpp"
#include "btlab/util.hpp"

using namespace btlab;

TEST_CASE("kernel variants agree on modmul") {
  Rng rng(42);
  for (std::uint32_t M : {4u, 8u, 81u, 2187u, 16384u, 65536u, 1u << 20}) {
    std::vector<kernels::u32> a(257), b(257), cs(257), cv(257);
    for (auto& x : a) x = (kernels::u32)rng.below(M);
    for (auto& x : b) x = (kernels::u32)rng.below(M);
    kernels::scalar_impl().modmul(a.data(), b.data(), cs.data(), a.size(), M);
    kernels::active().modmul(a.data(), b.data(), cv.data(), a.size(), M);
    CHECK(cs == cv);
  }
}

TEST_CASE("kernel variants agree on batched matmul") {
  Rng rng(7);
  for (int n : {2, 3}) {
    for (std::uint32_t M : {4u, 16u, 81u, 6561u, 32768u}) {
      size_t slots = 37;
      std::vector<kernels::u32> A(slots * n * n), B(n * n), Cs(A.size()),
          Cv(A.size());
      for (auto& x : A) x = (kernels::u32)rng.below(M);
      for (auto& x : B) x = (kernels::u32)rng.below(M);
      kernels::scalar_impl().matmul_fixedB(A.data(), B.data(), Cs.data(),
                                           slots, n, M);
      kernels::active().matmul_fixedB(A.data(), B.data(), Cv.data(), slots, n,
                                      M);
      CHECK(Cs == Cv);
    }
  }
}

TEST_CASE("valuation batches") {
  std::vector<kernels::u32> a = {0, 1, 2, 4, 12, 81, 54};
  std::vector<int> out(a.size());
  kernels::active().val_batch(a.data(), out.data(), a.size(), 3, 6);
  CHECK(out == std::vector<int>{6, 0, 0, 0, 1, 4, 3});
}
