#pragma once

#include <optional>

#include "btlab/congruence.hpp"
#include "btlab/lattice.hpp"

namespace btlab {

// Singular depth data of a diagonal element.
struct DepthReport {
  bool regular = false;
  std::optional<long> sd;  // nullopt = infinity (irregular)
  std::map<std::pair<int, int>, std::optional<long>> sd_alpha;
  long N = 0;        // max over the positive roots (regular case)
  int hgt_phi = 1;   // height of the highest root
  long d_gamma = 0;  // split scope: 0

  long r_split(long e) const;    // max(sd, e)
  long r_general(long e) const;  // max(hgt_phi * sd, e + d_gamma)
};
DepthReport singular_depth(const RootSystem& rs,
                           const std::vector<mpq_class>& gamma, long p);
// sd_alpha of a single root
std::optional<long> sd_root(const std::vector<mpq_class>& gamma, long p,
                            const Root& a);

struct FixedSetReport {
  int radius = 0;
  std::vector<int> fixed;  // indices into the ball
  LatticeBall ball;
  bool contains_apartment = true;  // all apartment vertices in range fixed
};
FixedSetReport fixed_vertices(const RootSystem& rs,
                              const std::vector<mpq_class>& gamma, long p,
                              int radius,
                              std::uint64_t guard = default_guard());

struct FixpointBoundsReport {
  struct PerVertex {
    std::string key;
    long d_T = 0;
    bool bound_b = true;   // u_alpha in U_{alpha, -alpha(y) - sd_alpha}
    bool bound_c = true;   // u_alpha in U_{alpha, -alpha(y) - hgt(alpha) N}
    bool bound_dT = true;  // d_T(x) <= hgt(Phi) sd(gamma)
  };
  std::vector<PerVertex> vertices;
  bool all_pass() const {
    for (const auto& v : vertices)
      if (!(v.bound_b && v.bound_c && v.bound_dT)) return false;
    return true;
  }
};
FixpointBoundsReport verify_fixpoint_bounds(const RootSystem& rs,
                                            const std::vector<mpq_class>& gamma,
                                            long p, int radius,
                                            std::uint64_t guard = default_guard());

struct HairStability {
  bool hypothesis_met = false;  // sd_alpha(h) > hgt(Phi) sd(gamma) for all roots
  bool equal = false;           // fixed sets coincide
};
HairStability hair_stability(const RootSystem& rs,
                             const std::vector<mpq_class>& gamma,
                             const std::vector<mpq_class>& h, long p,
                             int radius,
                             std::uint64_t guard = default_guard());

// [u, gamma] = v with u, v unipotent (upper or lower triangular), gamma a
// regular diagonal element; the height-filtration recursion of the solver.
PadicMatrix solve_commutator(const RootSystem& rs, const PadicMatrix& v,
                             const std::vector<PadicScalar>& gamma,
                             bool upper);

struct ConjugationWitness {
  PadicMatrix g;
  PadicMatrix t;
  long residual_floor = 0;  // certified valuation floor of g t g^{-1} - y
  int iterations = 0;
};
// y in U_x^{(r)} gamma conjugated into the torus slice H_{r+} gamma; the
// iterative refinement of the split-case construction, stopped at the
// precision floor.
ConjugationWitness conjugate_into_torus(const RootSystem& rs,
                                        const PadicMatrix& y,
                                        const std::vector<mpq_class>& gamma,
                                        const ApartmentPoint& x, long r,
                                        int floor_level);

}  // namespace btlab
