#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "btlab/root_system.hpp"
#include "btlab/util.hpp"

namespace btlab {

// The extended value set R~ = R ∪ {r+} ∪ {∞} with the order
// r < r+ < s < s+ < ∞ for r < s.
struct ExtendedLevel {
  enum class Kind { Finite, FinitePlus, Infinity };
  Kind kind = Kind::Finite;
  Frac value{0};

  static ExtendedLevel finite(Frac v) { return {Kind::Finite, v}; }
  static ExtendedLevel plus(Frac v) { return {Kind::FinitePlus, v}; }
  static ExtendedLevel infinity() { return {Kind::Infinity, Frac{0}}; }

  bool is_infinite() const { return kind == Kind::Infinity; }
  bool has_plus() const { return kind == Kind::FinitePlus; }

  ExtendedLevel operator+(const Frac& e) const {
    if (is_infinite()) return *this;
    return {kind, value + e};
  }
  ExtendedLevel operator+(const ExtendedLevel& o) const;
  ExtendedLevel scale(const Frac& c) const;  // c > 0

  // smallest integer k with k >= *this in the R~ order
  // (for r+ this is the "smallest integer larger than r+")
  long long ceil_exponent() const;

  friend bool operator==(const ExtendedLevel& a, const ExtendedLevel& b) {
    if (a.kind != b.kind) return false;
    if (a.is_infinite()) return true;
    return a.value == b.value;
  }
  friend bool operator<(const ExtendedLevel& a, const ExtendedLevel& b);
  friend bool operator<=(const ExtendedLevel& a, const ExtendedLevel& b) {
    return a < b || a == b;
  }
  std::string str() const;
};

// A point of the standard apartment of GL_n, R^n modulo the diagonal.
// Canonical representative: last coordinate 0.
struct ApartmentPoint {
  std::vector<Frac> coords;  // size n, coords[n-1] == 0

  static ApartmentPoint canonical(std::vector<Frac> raw);
  static ApartmentPoint origin(int n);
  int n() const { return (int)coords.size(); }
  Frac pairing(const Root& a) const { return RootSystem::pairing(coords, a); }
  friend bool operator==(const ApartmentPoint& a, const ApartmentPoint& b) {
    return a.coords == b.coords;
  }
};

// Integer vertex of the apartment (canonical representative, last coord 0).
using VertexCoords = std::vector<long long>;

// Constraint of a facet at one positive root: either an exact integer value
// or the open unit interval (lo, lo+1).
struct RootConstraint {
  bool exact = true;
  long long lo = 0;  // exact value, or lower endpoint of the open interval
};

// An open polysimplex of the affine hyperplane arrangement.  Stored by its
// (integer) vertex set, sorted in the global vertex order; the constraint
// pattern per positive root is derived from vertex evaluations.  In type A
// all facets are simplices with integer vertices.
struct Facet {
  std::vector<VertexCoords> vertices;      // sorted, canonical reps
  std::vector<RootConstraint> constraints; // indexed like positive_roots

  int dim() const { return (int)vertices.size() - 1; }
  int n() const { return vertices.empty() ? 0 : (int)vertices[0].size(); }
  ApartmentPoint barycenter() const;
  friend bool operator==(const Facet& a, const Facet& b) {
    return a.vertices == b.vertices;
  }
  friend bool operator<(const Facet& a, const Facet& b) {
    if (a.vertices.size() != b.vertices.size())
      return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
  }
};

// Sign pattern of a facet relative to the slab [-m, m], per positive root.
struct SignRegion {
  long long threshold = 0;
  std::vector<int> eps;  // -1 / 0 / +1 per positive root
  bool bounded = false;
};

// The polysimplicial complex of facets lying in bounded sign regions at
// threshold m (the apartment part of the combinatorial ball).
struct BallComplex {
  int n = 0;
  long long radius = 0;
  std::vector<Facet> facets;               // all dimensions, sorted
  std::vector<VertexCoords> vertex_list;   // sorted
  std::vector<Facet> facets_of_dim(int d) const;
};

struct SignedFace {
  Facet face;
  int sign;  // +1 / -1
};

// Operations
Facet facet_of(const RootSystem& rs, const ApartmentPoint& x);
Facet facet_from_vertices(const RootSystem& rs,
                          std::vector<VertexCoords> verts);

// f*_Omega: value sup <.,-alpha> with a plus flag exactly when alpha is
// constant on Omega.  Overloads for finite point sets and facets; facets use
// their open-cell semantics (closure invariance holds by construction).
ExtendedLevel f_star(const RootSystem& rs,
                     const std::vector<ApartmentPoint>& omega, const Root& a);
ExtendedLevel f_star(const RootSystem& rs, const Facet& sigma, const Root& a);
// the alpha = 0 slot (diagonal part): constant 0 on any Omega
inline ExtendedLevel f_star_zero() { return ExtendedLevel::plus(Frac{0}); }

SignRegion sign_region(const RootSystem& rs, const Facet& f, long long m);
BallComplex ball_complex(const RootSystem& rs, long long m,
                         std::uint64_t guard = default_guard());

std::vector<SignedFace> boundary_chain(const RootSystem& rs, const Facet& f);

std::vector<Facet> segment_facets(const RootSystem& rs, const ApartmentPoint& x,
                                  const ApartmentPoint& z);

}  // namespace btlab
