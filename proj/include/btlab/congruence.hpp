#pragma once

#include <functional>
#include <map>
#include <optional>

#include "btlab/apartment.hpp"
#include "btlab/exactmat.hpp"
#include "btlab/padic.hpp"

namespace btlab {

// Entry-wise congruence conditions cutting out a compact open subgroup of
// GL_n(Q_p):
//   off-diagonal (i,j):  entry in P^{off[i][j]}   (exponent may be negative)
//   diagonal i:          entry in 1 + P^{diag[i]} (diag[i] >= 1), or a unit
//                        when diag[i] == 0
//   unit_det:            additionally require det of valuation 0
// The filtration groups U_Omega^(e), U_{alpha,r}, H_r and the parahoric
// stabilizers are all of this shape.
struct CongruenceSpec {
  int n = 0;
  long p = 2;
  std::vector<long> off;   // n*n, entry (i,j) used for i != j
  std::vector<long> diag;  // n
  bool unit_det = false;
  std::string provenance;

  long off_at(int i, int j) const { return off[i * n + j]; }
  long& off_at(int i, int j) { return off[i * n + j]; }
  long max_exponent() const;
  bool integral() const;  // all entries p-integral (subgroup of K_0-monoid)
  // group-theoretic containment by thresholds
  bool contains(const CongruenceSpec& smaller) const;
  // [this : smaller], requires containment; both pro-p style (diag >= 1)
  mpz_class index_of(const CongruenceSpec& smaller) const;
  std::string str() const;
};

// U_Omega^(e) thresholds for Omega a point set or a facet, level e >= 0.
CongruenceSpec filtration_spec(const RootSystem& rs,
                               const std::vector<ApartmentPoint>& omega,
                               const ExtendedLevel& e);
CongruenceSpec filtration_spec(const RootSystem& rs, const Facet& sigma,
                               const ExtendedLevel& e);
CongruenceSpec filtration_spec_point(const RootSystem& rs,
                                     const ApartmentPoint& x, long e);
// U_o^(e) = principal congruence subgroup of level e+1
CongruenceSpec principal_congruence(int n, long p, long level);
// full stabilizer pattern of an apartment point (parahoric): off-diagonal
// exponent ceil(x_j - x_i), unit diagonal, unit determinant
CongruenceSpec parahoric_spec(const RootSystem& rs, const ApartmentPoint& x);
// H_r for the diagonal torus: diagonal entries in 1 + P^{ceil-exp(r)}
CongruenceSpec torus_spec(int n, long p, const ExtendedLevel& r);

enum class Membership { In, Out };
Membership membership(const PadicMatrix& g, const CongruenceSpec& spec);
bool is_member(const ExactMat& g, const CongruenceSpec& spec);

// Triangular (Iwahori-type) factorization g = u^- h u^+ (lower_first) or
// g = u^+ u^- h (upper_first), unique for the fixed root order.
struct IwahoriParts {
  ExactMat lower;
  ExactMat diag;
  ExactMat upper;
};
IwahoriParts iwahori_factor(const ExactMat& g, const CongruenceSpec& spec,
                            bool lower_first = true);

// coordinates t_alpha of a unipotent element, peeled by height
std::map<std::pair<int, int>, mpq_class> unipotent_coordinates(
    const ExactMat& u, bool upper);

// Coset data for big/small congruence pairs.
struct CosetSystem {
  mpz_class index;
  // streaming enumeration in canonical digit order
  void each(const std::function<void(const ExactMat&)>& fn) const;
  std::vector<ExactMat> materialize(std::uint64_t guard) const;

  // introspection
  int n = 0;
  long p = 2;
  // per slot: (kind, i, j, from_exp, to_exp); kind 0 = off-diag, 1 = diag
  struct Slot {
    int kind, i, j;
    long from, to;
  };
  std::vector<Slot> slots;
};
CosetSystem quotient_cosets(const CongruenceSpec& big,
                            const CongruenceSpec& small);
// [K_0 : spec] for integral pro-p specs
mpz_class index_in_K0(const CongruenceSpec& spec);
mpz_class gl_order_mod_p(int n, long p);
// Haar weight mu with mu(K_0) = 1
mpq_class haar_weight(const CongruenceSpec& spec);

// |B \ G / U_o^(e)| with representatives: the finite flag-coset count over
// O/P^{e+1}; exact, with canonical representatives.
struct DoubleCosets {
  mpz_class count;
  std::vector<std::vector<std::uint32_t>> reps;  // canonical flag matrices
};
DoubleCosets double_coset_count(int n, long p, long e,
                                std::uint64_t guard = default_guard());
// independent oracle: orbit sweep of B(O/P^{e+1}) over all of GL_n(O/P^{e+1})
mpz_class double_coset_oracle(int n, long p, long e,
                              std::uint64_t guard = default_guard());
// closed form |GL_n(R)| / |B(R)|
mpz_class flag_count_closed_form(int n, long p, long level);

// Contracted parabolic P_gamma of a diagonal element: roots with
// v(alpha(gamma)) >= 0, plus the Levi block structure by equal valuation.
struct ContractedParabolic {
  std::vector<Root> roots;          // alpha with v(alpha(gamma)) >= 0
  std::vector<std::vector<int>> levi_blocks;  // indices grouped by valuation
};
ContractedParabolic contracted_parabolic(const RootSystem& rs,
                                         const std::vector<mpq_class>& gamma,
                                         long p);

}  // namespace btlab
