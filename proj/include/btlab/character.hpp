#pragma once

#include "btlab/exactmat.hpp"
#include "btlab/field.hpp"

namespace btlab {

// Smooth character of the diagonal torus of GL_n(Q_p): per coordinate a
// residue character omega_i on (O/P^d)^x of declared depth d, and a value
// z_i at the uniformizer.  Values live in Q(zeta_N).
struct TorusCharacter {
  struct Component {
    int depth = 0;                 // 0 = unramified (trivial on units)
    std::vector<long> zeta_exp;    // indexed by unit residue mod p^depth
    Cyc z = Cyc::integer(1);       // value at p
  };

  int n = 0;
  long p = 2;
  int N = 1;  // cyclotomic order of the residue-character values
  std::vector<Component> comp;

  static TorusCharacter trivial(int n, long p);
  // residue character of order 2 in coordinate `which` (0-based); depth 1
  // for odd p, depth 2 for p = 2
  static TorusCharacter quadratic(int n, long p, int which);
  // order-k character in one coordinate from a generator image (odd p,
  // depth 1): omega(g^t) = zeta_k^t for a primitive root g mod p
  static TorusCharacter order_k(int n, long p, int which, int k);

  int max_depth() const;
  Cyc eval_unit(int i, std::uint64_t residue) const;
  // full evaluation z_i^{v(t)} * omega_i(unit part)
  Cyc eval_entry(int i, const mpq_class& t) const;
  Cyc eval_diag(const std::vector<mpq_class>& t) const;
  // multiplicativity spot check, throws on failure
  void validate() const;
  std::string str() const;
};

}  // namespace btlab
