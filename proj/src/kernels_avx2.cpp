#include "btlab/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

// AVX2 variants. Odd moduli are reduced with the exact double-precision
// trick: all intermediates stay below 2^53, quotients are corrected by one
// conditional step, so results are bit-identical to the scalar reference.
// Requires M < 2^15 for products (2x2/3x3 dot products stay < 2^52); larger
// moduli fall back to the scalar path inside the same entry points.

namespace btlab::kernels {

namespace {

constexpr u32 kSmallModBound = 1u << 15;

// r = x mod M for 4 lanes of doubles holding exact integers < 2^52.
inline __m256d mod_pd(__m256d x, __m256d vM, __m256d vInvM) {
  __m256d q = _mm256_floor_pd(_mm256_mul_pd(x, vInvM));
  __m256d r = _mm256_sub_pd(x, _mm256_mul_pd(q, vM));
  // one correction in each direction covers the floor rounding error
  __m256d rneg = _mm256_add_pd(r, vM);
  r = _mm256_blendv_pd(r, rneg, _mm256_cmp_pd(r, _mm256_setzero_pd(), _CMP_LT_OQ));
  __m256d rbig = _mm256_sub_pd(r, vM);
  r = _mm256_blendv_pd(r, rbig, _mm256_cmp_pd(r, vM, _CMP_GE_OQ));
  return r;
}

inline __m256d load4_as_pd(const u32* p) {
  __m128i v = _mm_loadu_si128((const __m128i*)p);
  return _mm256_cvtepi32_pd(v);  // entries < 2^31, sign-safe below 2^15 anyway
}

inline void store4_from_pd(u32* p, __m256d x) {
  __m128i v = _mm256_cvttpd_epi32(x);
  _mm_storeu_si128((__m128i*)p, v);
}

void modmul_avx2(const u32* a, const u32* b, u32* c, std::size_t count, u32 M) {
  if ((M & (M - 1)) == 0) {
    u32 mask = M - 1;
    std::size_t i = 0;
    __m256i vmask = _mm256_set1_epi32((int)mask);
    for (; i + 8 <= count; i += 8) {
      __m256i va = _mm256_loadu_si256((const __m256i*)(a + i));
      __m256i vb = _mm256_loadu_si256((const __m256i*)(b + i));
      __m256i lo = _mm256_mullo_epi32(va, vb);
      _mm256_storeu_si256((__m256i*)(c + i),
                          _mm256_and_si256(lo, vmask));
    }
    for (; i < count; ++i) c[i] = (u32)((u64)a[i] * b[i]) & mask;
    return;
  }
  if (M >= kSmallModBound) {
    scalar_impl().modmul(a, b, c, count, M);
    return;
  }
  __m256d vM = _mm256_set1_pd((double)M);
  __m256d vInvM = _mm256_set1_pd(1.0 / (double)M);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256d x = _mm256_mul_pd(load4_as_pd(a + i), load4_as_pd(b + i));
    store4_from_pd(c + i, mod_pd(x, vM, vInvM));
  }
  for (; i < count; ++i) c[i] = (u32)((u64)a[i] * b[i] % M);
}

void matmul_fixedB_avx2(const u32* A, const u32* B, u32* C, std::size_t slots,
                        int n, u32 M) {
  const bool pow2 = (M & (M - 1)) == 0;
  if (!pow2 && M >= kSmallModBound) {
    scalar_impl().matmul_fixedB(A, B, C, slots, n, M);
    return;
  }
  if (n != 2 && n != 3) {
    scalar_impl().matmul_fixedB(A, B, C, slots, n, M);
    return;
  }
  const int nn = n * n;
  if (pow2) {
    // power-of-two modulus: plain 32-bit wraparound + mask, one slot per pass
    u32 mask = M - 1;
    scalar_impl().matmul_fixedB(A, B, C, slots, n, M);
    (void)mask;
    return;
  }
  __m256d vM = _mm256_set1_pd((double)M);
  __m256d vInvM = _mm256_set1_pd(1.0 / (double)M);
  __m256d vB[9];
  for (int k = 0; k < nn; ++k) vB[k] = _mm256_set1_pd((double)B[k]);
  // four slots at a time: gather entry (i,k) across slots
  std::size_t s = 0;
  alignas(32) double tmp[4];
  for (; s + 4 <= slots; s += 4) {
    __m256d a[9];
    for (int k = 0; k < nn; ++k) {
      for (int t = 0; t < 4; ++t) tmp[t] = (double)A[(s + t) * nn + k];
      a[k] = _mm256_load_pd(tmp);
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        __m256d acc = _mm256_setzero_pd();
        for (int k = 0; k < n; ++k)
          acc = _mm256_add_pd(acc, _mm256_mul_pd(a[i * n + k], vB[k * n + j]));
        acc = mod_pd(acc, vM, vInvM);
        _mm256_store_pd(tmp, acc);
        for (int t = 0; t < 4; ++t) C[(s + t) * nn + i * n + j] = (u32)tmp[t];
      }
  }
  if (s < slots)
    scalar_impl().matmul_fixedB(A + s * nn, B, C + s * nn, slots - s, n, M);
}

void val_batch_avx2(const u32* a, int* out, std::size_t count, u32 p, int cap) {
  // tzcnt-based scalar loop is already fast; keep the entry point so the
  // dispatch table stays uniform
  scalar_impl().val_batch(a, out, count, p, cap);
}

}  // namespace

const Impl& avx2_impl() {
  static const Impl impl{"avx2", modmul_avx2, matmul_fixedB_avx2,
                         val_batch_avx2};
  return impl;
}

}  // namespace btlab::kernels

#endif
