#pragma once

#include "btlab/apartment.hpp"
#include "btlab/rep.hpp"

namespace btlab {

// A finite simplicial complex carrying the coefficient system
// sigma -> V^{U_sigma^{(e)}}.  Vertices are apartment points or building
// (lattice) vertices; higher cells are vertex subsets.  Only shapes for
// which convexity is known are accepted by the chain-complex operations:
// apartment balls, building (tree) balls, and single closed facets.
struct CellComplex {
  enum class Shape { ApartmentBall, TreeBall, ClosedFacet };
  struct Vertex {
    bool is_tree = false;
    ApartmentPoint pt;   // apartment coordinates (when !is_tree)
    VertexLattice lat;   // lattice class (when is_tree)
    std::string key;
  };
  int n = 0;
  long p = 2;
  Shape shape = Shape::ApartmentBall;
  long radius = 0;
  std::vector<Vertex> vertices;
  std::vector<std::vector<int>> cells;  // sorted vertex-index lists, all dims
  int max_dim = 0;

  std::vector<int> cells_of_dim(int d) const;
  std::string str() const;
};

CellComplex complex_from_ball(const RootSystem& rs, const BallComplex& bc,
                              long p);
CellComplex complex_closed_facet(const RootSystem& rs, const Facet& f, long p);
CellComplex tree_ball_complex(long p, int radius,
                              std::uint64_t guard = default_guard());

// Per-cell averaging idempotents e_{U_sigma^{(e)}}; vertex idempotents are
// cached, higher cells are products of their vertex idempotents.
struct CoefficientSystem {
  const FiniteLevelRep& rep;
  const CellComplex& cx;
  long e;
  std::vector<CMat> vertex_idem;

  CoefficientSystem(const FiniteLevelRep& r, const CellComplex& c, long e_);
  CMat cell_idempotent(const std::vector<int>& cell) const;
};

struct ChainComplexReport {
  std::vector<long> cell_counts;    // per dimension
  std::vector<long> chain_dims;     // dim C_d
  std::vector<long> boundary_ranks; // rank of d_d, d = 1..max_dim
  std::vector<long> homology;       // dim H_d for d = 1..max_dim
  long h0 = 0;                      // dim C_0 - rank d_1
  long vertex_sum_rank = 0;         // dim of sum of vertex invariants
  bool boundary_squares_zero = true;
  bool exact_positive_degrees() const {
    for (long h : homology)
      if (h != 0) return false;
    return true;
  }
};
ChainComplexReport chain_complex(const FiniteLevelRep& rep,
                                 const CellComplex& cx, long e);

CMat euler_idempotent(const FiniteLevelRep& rep, const CellComplex& cx, long e);

struct EulerReport {
  bool idempotent = false;
  bool image_matches = false;   // im u = sum of vertex invariants
  bool kernel_matches = false;  // im(1-u) = intersection of im(1 - e_x)
  long image_rank = 0;
};
EulerReport euler_check(const FiniteLevelRep& rep, const CellComplex& cx,
                        long e);

// e_{U_o^{(r)}} u_Sigma^{(e)} == e_{U_o^{(r)}} u_B^{(e)}
bool cancellation_check(const FiniteLevelRep& rep, const CellComplex& sigma,
                        const CellComplex& ball, long r, long e);

// u_Sigma^{(e)} restricted to im e_{U_o^{(r)}} is the identity
bool level_check(const FiniteLevelRep& rep, const CellComplex& cx, long e,
                 long r);

// gamma-image of a vertex, by translation (apartment) or lattice action
int gamma_vertex_image(const CellComplex& cx,
                       const std::vector<mpq_class>& gamma, long p, int vi);

// polysimplicial trace sum over gamma-fixed cells with orientation signs
Cyc tau_sigma(const FiniteLevelRep& rep, const CellComplex& cx, long e,
              const std::vector<mpq_class>& gamma);

}  // namespace btlab
