#pragma once

#include "btlab/complexes.hpp"
#include "btlab/depth.hpp"
#include "btlab/rep.hpp"

namespace btlab {

// chi_K(g) = tr(e_K pi(g) e_K) on the finite-level model
Cyc chi_K(const FiniteLevelRep& rep, const CongruenceSpec& K,
          const ExactMat& g);

struct ConstancyReport {
  bool gamma_compact = false;
  long r = 0;          // split constancy radius used
  long sd = 0;
  std::vector<long> s_values;            // the K_s levels scanned
  std::vector<std::string> chi_values;   // chi_{K_s}(gamma)
  bool torus_slice_constant = false;     // chi_{K_s}(gamma h) all equal
  bool neighbourhood_constant = false;   // chi_{K_s}(u gamma u') all equal
  bool stable_in_s = false;              // values agree across s
  long torus_cosets_checked = 0;
  long samples_checked = 0;
};

// Scans chi_{K_s} over the torus slice H_{r+} gamma (every coset rep at the
// model level) and over sampled u gamma u' with u, u' in U_o^{(r)}; for
// non-compact gamma only the stabilization across s is reported.
ConstancyReport character_scan(const FiniteLevelRep& rep,
                               const std::vector<mpq_class>& gamma, long e,
                               const std::vector<long>& s_range,
                               int sample_budget, std::uint64_t seed);

struct GrowthRow {
  long e = 0;
  mpz_class coset_count;       // |B\G/K_e|, exact enumeration
  mpz_class coset_closed;      // closed-form cross-check
  mpq_class ratio_qpow;        // count / q^{e n(n-1)/2}
  long dim_VKe = 0;            // dim V^{K_e} for the trivial character
  long m_V = 0;                // max_x dim V^{U_x^{(0)}}
  mpq_class bound;             // m_V (e+1)^{n-1} Q^e
  mpq_class measured_C;        // dim / bound
  mpq_class mu_dim;            // mu(K_e) dim V^{K_e}
  mpz_class orbit_count;       // U_o^{(e)}-orbits on the ball B_e vertices
  long ball_vertices = 0;
};
std::vector<GrowthRow> growth_table(int n, long p, long e_max,
                                    std::uint64_t guard = default_guard());

// orbit count of the congruence group on the vertices of a lattice ball
mpz_class ball_orbit_count(const CongruenceSpec& K, const LatticeBall& ball);

}  // namespace btlab
