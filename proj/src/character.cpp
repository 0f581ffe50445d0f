#include "btlab/character.hpp"

#include <sstream>

namespace btlab {

TorusCharacter TorusCharacter::trivial(int n, long p) {
  TorusCharacter chi;
  chi.n = n;
  chi.p = p;
  chi.N = 1;
  chi.comp.assign(n, Component{});
  return chi;
}

TorusCharacter TorusCharacter::quadratic(int n, long p, int which) {
  TorusCharacter chi = trivial(n, p);
  chi.N = 2;
  Component c;
  if (p == 2) {
    // characters of (Z/4)^x = {1, 3}
    c.depth = 2;
    c.zeta_exp.assign(4, 0);
    c.zeta_exp[3] = 1;
  } else {
    c.depth = 1;
    c.zeta_exp.assign(p, 0);
    for (long u = 1; u < p; ++u) {
      // Euler criterion
      long t = 1;
      for (long e = 0; e < (p - 1) / 2; ++e) t = t * u % p;
      c.zeta_exp[u] = (t == 1) ? 0 : 1;
    }
  }
  chi.comp[which] = c;
  return chi;
}

TorusCharacter TorusCharacter::order_k(int n, long p, int which, int k) {
  if (p == 2) throw InvalidArgument("order_k: odd p only");
  if ((p - 1) % k != 0)
    throw InvalidArgument("order_k: k must divide p - 1");
  TorusCharacter chi = trivial(n, p);
  chi.N = k;
  Component c;
  c.depth = 1;
  c.zeta_exp.assign(p, 0);
  // primitive root mod p
  long g = 0;
  for (long cand = 2; cand < p; ++cand) {
    long x = 1;
    long ord = 0;
    do {
      x = x * cand % p;
      ++ord;
    } while (x != 1);
    if (ord == p - 1) {
      g = cand;
      break;
    }
  }
  long x = 1;
  for (long t = 0; t < p - 1; ++t) {
    c.zeta_exp[x] = t % k;
    x = x * g % p;
  }
  chi.comp[which] = c;
  return chi;
}

int TorusCharacter::max_depth() const {
  int d = 0;
  for (const auto& c : comp) d = std::max(d, c.depth);
  return d;
}

Cyc TorusCharacter::eval_unit(int i, std::uint64_t residue) const {
  const Component& c = comp[i];
  if (c.depth == 0) return Cyc::integer(1);
  std::uint64_t M = pow_u64(p, c.depth);
  std::uint64_t r = residue % M;
  if (r % p == 0) throw DomainError("eval_unit: residue not a unit");
  return Cyc::zeta(N, c.zeta_exp[r]);
}

Cyc TorusCharacter::eval_entry(int i, const mpq_class& t) const {
  if (t == 0) throw DomainError("eval_entry: zero entry");
  long v = val_p(t, p);
  Cyc zp = Cyc::integer(1);
  const Cyc& z = comp[i].z;
  Cyc zinv = z.is_zero() ? z : z.inverse();
  for (long k = 0; k < std::abs(v); ++k) zp = zp * (v > 0 ? z : zinv);
  if (comp[i].depth == 0) return zp;
  std::uint64_t u = residue_mod_pk(unit_part(t, p), p, comp[i].depth);
  return zp * eval_unit(i, u);
}

Cyc TorusCharacter::eval_diag(const std::vector<mpq_class>& t) const {
  if ((int)t.size() != n) throw InvalidArgument("eval_diag: size mismatch");
  Cyc v = Cyc::integer(1);
  for (int i = 0; i < n; ++i) v = v * eval_entry(i, t[i]);
  return v;
}

void TorusCharacter::validate() const {
  for (int i = 0; i < n; ++i) {
    const Component& c = comp[i];
    if (c.depth == 0) continue;
    std::uint64_t M = pow_u64(p, c.depth);
    for (std::uint64_t u = 1; u < M; ++u) {
      if (u % p == 0) continue;
      for (std::uint64_t w = 1; w < M; ++w) {
        if (w % p == 0) continue;
        Cyc lhs = eval_unit(i, u * w % M);
        Cyc rhs = eval_unit(i, u) * eval_unit(i, w);
        if (!(lhs == rhs))
          throw InvalidArgument("TorusCharacter: not multiplicative");
      }
    }
  }
}

std::string TorusCharacter::str() const {
  std::ostringstream os;
  os << "chi[";
  for (int i = 0; i < n; ++i) {
    os << "d" << comp[i].depth << ",z=" << comp[i].z.str();
    if (i + 1 < n) os << "; ";
  }
  os << "]";
  return os.str();
}

}  // namespace btlab
