#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

// Batched residue arithmetic mod M = p^m. These are the inner loops of the
// finite-quotient enumerations (orbit sweeps over GL_n(Z/p^m), coset scans),
// with a scalar reference implementation and an AVX2 variant selected at
// runtime. All variants are bit-exact; the dispatcher may be pinned for
// equivalence testing.
//
// Layout: a batch of `slots` n x n matrices is one contiguous array of
// slots*n*n uint32 values, row-major within each matrix. Entries are
// canonical residues in [0, M).

namespace btlab::kernels {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

struct Impl {
  const char* name;
  void (*modmul)(const u32* a, const u32* b, u32* c, std::size_t count, u32 M);
  // C[s] = A[s] * B  (one fixed right factor, e.g. a group generator)
  void (*matmul_fixedB)(const u32* A, const u32* B, u32* C, std::size_t slots,
                        int n, u32 M);
  // valuation of a[i] at p, capped at `cap`; val(0) = cap
  void (*val_batch)(const u32* a, int* out, std::size_t count, u32 p, int cap);
};

const Impl& scalar_impl();
#if defined(__x86_64__) || defined(_M_X64)
const Impl& avx2_impl();
#endif

// Active implementation (chosen once from CPU features, overridable).
const Impl& active();
// Force a variant by name ("scalar", "avx2"); throws on unknown/unsupported.
void force_impl(const std::string& name);
std::string active_name();

}  // namespace btlab::kernels
