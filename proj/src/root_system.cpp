#include "btlab/root_system.hpp"

namespace btlab {

RootSystem build_root_system(int n) {
  if (n < 2) throw InvalidArgument("build_root_system: need n >= 2");
  RootSystem rs;
  rs.n = n;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) rs.roots.push_back(Root{i, j});
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) rs.positive_roots.push_back(Root{i, j});
  for (int i = 1; i < n; ++i) rs.simple_roots.push_back(Root{i, i + 1});
  return rs;
}

int RootSystem::height(const Root& a) const {
  if (!a.positive())
    throw DomainError("height: defined on positive roots only");
  return a.j - a.i;
}

Frac RootSystem::pairing(const std::vector<Frac>& x, const Root& a) {
  if (a.i < 1 || a.j < 1 || a.i > (int)x.size() || a.j > (int)x.size())
    throw InvalidArgument("pairing: dimension mismatch");
  return x[a.i - 1] - x[a.j - 1];
}

}  // namespace btlab
