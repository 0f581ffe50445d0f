#pragma once

#include "btlab/character.hpp"
#include "btlab/field.hpp"
#include "btlab/flags.hpp"
#include "btlab/lattice.hpp"

namespace btlab {

// Exact Iwasawa decomposition over the rationals: g = b * k with b upper
// triangular and k p-integral with p-unit determinant.
struct IwasawaExact {
  ExactMat b;
  ExactMat k;
};
IwasawaExact iwasawa_exact(const ExactMat& g, long p);

// The K(m)-invariant model of the principal series Ind_B^G(chi): basis
// indexed by the canonical flag classes B(R)\GL_n(R) over R = O/P^m.  The
// group acts through the flag-coset action; operators for elements outside
// GL_n(O) are compressed through the model projector, exactly.
struct FiniteLevelRep {
  int n = 0;
  long p = 2;
  int m = 1;
  TorusCharacter chi;
  FlagContext ctx;
  std::vector<FlagContext::Mat> basis;
  std::unordered_map<std::uint64_t, int> index;

  FiniteLevelRep(int n_, long p_, const TorusCharacter& chi_, int m_,
                 std::uint64_t guard = default_guard());
  int dim() const { return (int)basis.size(); }
  ExactMat lift(int c) const;  // integral lift of a basis class

  // pi(g) in sampled form: row c has its only entry at column target[c]
  struct Monomial {
    std::vector<int> target;
    std::vector<Cyc> val;
  };
  Monomial sampled_integral(const FlagContext::Mat& gbar) const;
  Monomial sampled_op(const ExactMat& g) const;
  CMat to_matrix(const Monomial& s) const;
  Cyc trace_with(const Monomial& s, const CMat& e) const;  // tr(S * e)

  // honest model operator e_{K(m)} pi(g) e_{K(m)}; exact for g = D g' with
  // D diagonal p-powers and g' in GL_n(O) (covers all certified elements
  // used here); equals the plain action matrix for g in GL_n(O)
  CMat act(const ExactMat& g) const;

  // averaging idempotent of a congruence subgroup K with K(m) <= K
  CMat idempotent(const CongruenceSpec& K) const;
  // e_{u K u^{-1}} for integral unit-determinant u
  CMat idempotent_conj(const CongruenceSpec& K, const ExactMat& u) const;
  // U_v^{(e)} idempotent for a building vertex (n = 2 uses tree witnesses)
  CMat idempotent_vertex(const VertexLattice& v, long e) const;
  // full maximal compact K_0 = GL_n(O) average (small m only)
  CMat idempotent_K0(std::uint64_t guard = default_guard()) const;

  long invariants_dim(const CongruenceSpec& K) const;
};

}  // namespace btlab
