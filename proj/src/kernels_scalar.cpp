#include "btlab/kernels.hpp"

namespace btlab::kernels {

namespace {

void modmul_scalar(const u32* a, const u32* b, u32* c, std::size_t count,
                   u32 M) {
  if ((M & (M - 1)) == 0) {
    u32 mask = M - 1;
    for (std::size_t i = 0; i < count; ++i)
      c[i] = (u32)((u64)a[i] * b[i]) & mask;
    return;
  }
  for (std::size_t i = 0; i < count; ++i) c[i] = (u32)((u64)a[i] * b[i] % M);
}

void matmul_fixedB_scalar(const u32* A, const u32* B, u32* C,
                          std::size_t slots, int n, u32 M) {
  const int nn = n * n;
  if ((M & (M - 1)) == 0) {
    u32 mask = M - 1;
    for (std::size_t s = 0; s < slots; ++s) {
      const u32* a = A + s * nn;
      u32* c = C + s * nn;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          u64 acc = 0;
          for (int k = 0; k < n; ++k) acc += (u64)a[i * n + k] * B[k * n + j];
          c[i * n + j] = (u32)acc & mask;
        }
    }
    return;
  }
  for (std::size_t s = 0; s < slots; ++s) {
    const u32* a = A + s * nn;
    u32* c = C + s * nn;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        u64 acc = 0;
        for (int k = 0; k < n; ++k) acc += (u64)a[i * n + k] * B[k * n + j];
        c[i * n + j] = (u32)(acc % M);
      }
  }
}

void val_batch_scalar(const u32* a, int* out, std::size_t count, u32 p,
                      int cap) {
  if (p == 2) {
    for (std::size_t i = 0; i < count; ++i) {
      u32 x = a[i];
      if (x == 0) {
        out[i] = cap;
        continue;
      }
      int v = __builtin_ctz(x);
      out[i] = v < cap ? v : cap;
    }
    return;
  }
  for (std::size_t i = 0; i < count; ++i) {
    u32 x = a[i];
    if (x == 0) {
      out[i] = cap;
      continue;
    }
    int v = 0;
    while (v < cap && x % p == 0) {
      x /= p;
      ++v;
    }
    out[i] = v;
  }
}

}  // namespace

const Impl& scalar_impl() {
  static const Impl impl{"scalar", modmul_scalar, matmul_fixedB_scalar,
                         val_batch_scalar};
  return impl;
}

}  // namespace btlab::kernels
