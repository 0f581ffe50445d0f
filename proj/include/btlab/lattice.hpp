#pragma once

#include <map>
#include <optional>

#include "btlab/congruence.hpp"
#include "btlab/exactmat.hpp"

namespace btlab {

// A vertex of the building: a homothety class of O-lattices in Q_p^n.
// Canonical representative: the integral column-Hermite form (upper
// triangular, diagonal p^{a_i}, entries right of the diagonal reduced mod
// the pivot), scaled so that some entry is a unit.
struct VertexLattice {
  int n = 0;
  long p = 2;
  std::vector<mpz_class> h;  // n*n canonical entries

  const mpz_class& at(int i, int j) const { return h[i * n + j]; }
  bool in_apartment() const;  // canonical form diagonal
  // diagonal exponents a_i (apartment vertices only)
  std::vector<long> diag_exponents() const;
  std::string key() const;
  friend bool operator==(const VertexLattice& a, const VertexLattice& b) {
    return a.h == b.h;
  }
  friend bool operator<(const VertexLattice& a, const VertexLattice& b) {
    return a.h < b.h;
  }
  ExactMat as_matrix() const;  // a group element mapping the origin here
};

VertexLattice origin_vertex(int n, long p);
// canonical class of the column span of g (columns generate the lattice)
VertexLattice lattice_class(const ExactMat& g, long p);
VertexLattice act_vertex(const ExactMat& g, const VertexLattice& v);
// apartment vertex at given diagonal exponents
VertexLattice apartment_vertex(int n, long p, const std::vector<long>& a);

// neighbours in the building: classes of lattices pL < L' < L
std::vector<VertexLattice> vertex_neighbors(const VertexLattice& v,
                                            std::uint64_t guard = default_guard());

struct LatticeBall {
  int n;
  long p;
  int radius;
  std::vector<VertexLattice> vertices;  // BFS order from the origin
  std::vector<int> dist;
  std::vector<std::pair<int, int>> edges;  // index pairs (tree edges for n=2)
  std::map<std::string, int> index;
  int find(const VertexLattice& v) const;  // -1 when absent
};
LatticeBall vertices_in_ball(int n, long p, int radius,
                             std::uint64_t guard = default_guard());

// n = 2: witness decomposition v = u * (apartment vertex) with u a unipotent
// element of GL_2(Z_p) (upper or lower), used to conjugate idempotents and
// to evaluate hair data.
struct TreeWitness {
  ExactMat u;                // unipotent, integral
  std::vector<long> diag;    // apartment vertex exponents a_1, a_2
  bool upper;                // u in U_alpha (upper) or U_{-alpha}
  mpq_class lambda;          // u = 1 + lambda E_{12} or E_{21}
};
TreeWitness tree_witness(const VertexLattice& v);

// tree distance from the vertex to the standard apartment (n = 2)
long torus_distance(const VertexLattice& v);

// apartment coordinate <x, e_1 - e_2> of the base vertex of the witness
long witness_alpha_coord(const TreeWitness& w);

}  // namespace btlab
