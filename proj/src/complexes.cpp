#include "btlab/complexes.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace btlab {

std::vector<int> CellComplex::cells_of_dim(int d) const {
  std::vector<int> out;
  for (int i = 0; i < (int)cells.size(); ++i)
    if ((int)cells[i].size() == d + 1) out.push_back(i);
  return out;
}

std::string CellComplex::str() const {
  std::ostringstream os;
  switch (shape) {
    case Shape::ApartmentBall:
      os << "apartment-ball(" << radius << ")";
      break;
    case Shape::TreeBall:
      os << "tree-ball(" << radius << ")";
      break;
    case Shape::ClosedFacet:
      os << "closed-facet";
      break;
  }
  os << " v=" << vertices.size() << " cells=" << cells.size();
  return os.str();
}

namespace {

std::string apartment_key(const ApartmentPoint& x) {
  std::string k;
  for (const auto& c : x.coords) k += c.str() + ",";
  return k;
}

CellComplex from_facet_list(const RootSystem& rs, long p,
                            const std::vector<Facet>& facets,
                            CellComplex::Shape shape, long radius) {
  CellComplex cx;
  cx.n = rs.n;
  cx.p = p;
  cx.shape = shape;
  cx.radius = radius;
  std::map<VertexCoords, int> vidx;
  auto add_vertex = [&](const VertexCoords& v) {
    auto it = vidx.find(v);
    if (it != vidx.end()) return it->second;
    CellComplex::Vertex vx;
    vx.is_tree = false;
    std::vector<Frac> coords;
    for (long long c : v) coords.push_back(Frac{c});
    vx.pt = ApartmentPoint::canonical(coords);
    vx.key = apartment_key(vx.pt);
    int id = (int)cx.vertices.size();
    cx.vertices.push_back(vx);
    vidx[v] = id;
    return id;
  };
  std::set<std::vector<int>> cellset;
  for (const Facet& f : facets) {
    std::vector<int> cell;
    for (const auto& v : f.vertices) cell.push_back(add_vertex(v));
    std::sort(cell.begin(), cell.end());
    cellset.insert(cell);
    cx.max_dim = std::max(cx.max_dim, f.dim());
  }
  cx.cells.assign(cellset.begin(), cellset.end());
  return cx;
}

}  // namespace

CellComplex complex_from_ball(const RootSystem& rs, const BallComplex& bc,
                              long p) {
  return from_facet_list(rs, p, bc.facets, CellComplex::Shape::ApartmentBall,
                         bc.radius);
}

CellComplex complex_closed_facet(const RootSystem& rs, const Facet& f,
                                 long p) {
  // the closed facet: all faces
  std::vector<Facet> facets;
  int k = (int)f.vertices.size();
  for (int mask = 1; mask < (1 << k); ++mask) {
    std::vector<VertexCoords> sub;
    for (int t = 0; t < k; ++t)
      if (mask & (1 << t)) sub.push_back(f.vertices[t]);
    facets.push_back(facet_from_vertices(rs, sub));
  }
  return from_facet_list(rs, p, facets, CellComplex::Shape::ClosedFacet,
                         f.dim());
}

CellComplex tree_ball_complex(long p, int radius, std::uint64_t guard) {
  LatticeBall ball = vertices_in_ball(2, p, radius, guard);
  CellComplex cx;
  cx.n = 2;
  cx.p = p;
  cx.shape = CellComplex::Shape::TreeBall;
  cx.radius = radius;
  for (const auto& v : ball.vertices) {
    CellComplex::Vertex vx;
    vx.is_tree = true;
    vx.lat = v;
    vx.key = v.key();
    cx.vertices.push_back(vx);
  }
  for (int i = 0; i < (int)cx.vertices.size(); ++i) cx.cells.push_back({i});
  for (auto [a, b] : ball.edges)
    cx.cells.push_back({std::min(a, b), std::max(a, b)});
  std::sort(cx.cells.begin(), cx.cells.end(),
            [](const auto& a, const auto& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  cx.max_dim = cx.cells.empty() || cx.cells.back().size() < 2 ? 0 : 1;
  return cx;
}

// -------------------------------------------------------------- coefficients

CoefficientSystem::CoefficientSystem(const FiniteLevelRep& r,
                                     const CellComplex& c, long e_)
    : rep(r), cx(c), e(e_) {
  RootSystem rs = build_root_system(cx.n);
  for (const auto& v : cx.vertices) {
    if (v.is_tree)
      vertex_idem.push_back(rep.idempotent_vertex(v.lat, e));
    else {
      CongruenceSpec spec = filtration_spec_point(rs, v.pt, e);
      spec.p = rep.p;
      vertex_idem.push_back(rep.idempotent(spec));
    }
  }
}

CMat CoefficientSystem::cell_idempotent(const std::vector<int>& cell) const {
  CMat E = vertex_idem[cell[0]];
  for (size_t i = 1; i < cell.size(); ++i) E = E * vertex_idem[cell[i]];
  return E;
}

// -------------------------------------------------------------- chain complex

ChainComplexReport chain_complex(const FiniteLevelRep& rep,
                                 const CellComplex& cx, long e) {
  CoefficientSystem cs(rep, cx, e);
  ChainComplexReport rep_out;
  // bases per cell
  std::map<std::vector<int>, CMat> basis;
  for (const auto& cell : cx.cells)
    basis[cell] = column_space_basis(cs.cell_idempotent(cell));
  // chain dimensions
  for (int d = 0; d <= cx.max_dim; ++d) {
    auto ids = cx.cells_of_dim(d);
    rep_out.cell_counts.push_back((long)ids.size());
    long total = 0;
    for (int id : ids) total += basis[cx.cells[id]].cols;
    rep_out.chain_dims.push_back(total);
  }
  // boundary matrices
  std::vector<CMat> boundary;  // D_d : C_d -> C_{d-1}, d = 1..max_dim
  std::vector<std::map<std::vector<int>, long>> offsets(cx.max_dim + 1);
  for (int d = 0; d <= cx.max_dim; ++d) {
    long off = 0;
    for (int id : cx.cells_of_dim(d)) {
      offsets[d][cx.cells[id]] = off;
      off += basis[cx.cells[id]].cols;
    }
  }
  for (int d = 1; d <= cx.max_dim; ++d) {
    CMat D(rep_out.chain_dims[d - 1], rep_out.chain_dims[d]);
    for (int id : cx.cells_of_dim(d)) {
      const auto& cell = cx.cells[id];
      long coff = offsets[d][cell];
      const CMat& bs = basis[cell];
      for (size_t drop = 0; drop < cell.size(); ++drop) {
        std::vector<int> face;
        for (size_t t = 0; t < cell.size(); ++t)
          if (t != drop) face.push_back(cell[t]);
        auto it = offsets[d - 1].find(face);
        if (it == offsets[d - 1].end())
          throw InvalidArgument("chain_complex: complex not face-closed");
        long foff = it->second;
        // express the sigma-basis inside the face space (containment
        // V^{U_sigma} <= V^{U_tau})
        CMat X = solve_columns(basis[face], bs);
        int sign = (drop % 2 == 0) ? 1 : -1;
        for (int i = 0; i < X.rows; ++i)
          for (int j = 0; j < X.cols; ++j) {
            Cyc v = X.at(i, j);
            if (sign < 0) v = -v;
            D.at(foff + i, coff + j) = D.at(foff + i, coff + j) + v;
          }
      }
    }
    boundary.push_back(D);
  }
  for (size_t d = 1; d < boundary.size(); ++d)
    if (!(boundary[d - 1] * boundary[d]).is_zero())
      rep_out.boundary_squares_zero = false;
  for (const auto& D : boundary) rep_out.boundary_ranks.push_back(rank(D));
  for (int d = 1; d <= cx.max_dim; ++d) {
    long kernel = rep_out.chain_dims[d] - rep_out.boundary_ranks[d - 1];
    long image_above =
        d < cx.max_dim ? rep_out.boundary_ranks[d] : 0;
    rep_out.homology.push_back(kernel - image_above);
  }
  rep_out.h0 = rep_out.chain_dims[0] -
               (cx.max_dim >= 1 ? rep_out.boundary_ranks[0] : 0);
  // rank of the summed vertex invariants inside the model
  CMat stacked(rep.dim(), 0);
  for (int vi = 0; vi < (int)cx.vertices.size(); ++vi)
    stacked = hstack(stacked, column_space_basis(cs.vertex_idem[vi]));
  rep_out.vertex_sum_rank = rank(stacked);
  return rep_out;
}

CMat euler_idempotent(const FiniteLevelRep& rep, const CellComplex& cx,
                      long e) {
  CoefficientSystem cs(rep, cx, e);
  CMat u(rep.dim(), rep.dim());
  for (const auto& cell : cx.cells) {
    CMat E = cs.cell_idempotent(cell);
    if ((cell.size() - 1) % 2 == 0)
      u = u + E;
    else
      u = u - E;
  }
  return u;
}

EulerReport euler_check(const FiniteLevelRep& rep, const CellComplex& cx,
                        long e) {
  CoefficientSystem cs(rep, cx, e);
  CMat u = euler_idempotent(rep, cx, e);
  EulerReport out;
  out.idempotent = (u * u) == u;
  CMat stacked(rep.dim(), 0);
  for (const auto& E : cs.vertex_idem)
    stacked = hstack(stacked, column_space_basis(E));
  out.image_rank = rank(u);
  out.image_matches = colspace_equal(u, stacked);
  // kernel identity: im(1-u) = intersection of the im(1 - e_x)
  CMat one = CMat::identity(rep.dim());
  CMat omu = one - u;
  // intersection via null spaces: im(1 - e_x) = ker e_x here?  No: use
  // intersection of column spaces computed by stacked nullspace solving.
  // col(A) ∩ col(B): solve [A | -B] nullspace, take A-part images.
  CMat inter = omu;
  bool first = true;
  for (const auto& E : cs.vertex_idem) {
    CMat cb = column_space_basis(one - E);
    if (first) {
      inter = cb;
      first = false;
      continue;
    }
    CMat combined = hstack(inter, cb.scaled(Cyc::integer(-1)));
    CMat ns = null_space(combined);
    // image of the inter-part coefficients
    CMat coeff(inter.cols, ns.cols);
    for (int i = 0; i < inter.cols; ++i)
      for (int j = 0; j < ns.cols; ++j) coeff.at(i, j) = ns.at(i, j);
    inter = column_space_basis(inter * coeff);
  }
  out.kernel_matches = colspace_equal(omu, inter);
  return out;
}

bool cancellation_check(const FiniteLevelRep& rep, const CellComplex& sigma,
                        const CellComplex& ball, long r, long e) {
  if (r < e) throw InvalidArgument("cancellation_check: need r >= e");
  CMat uS = euler_idempotent(rep, sigma, e);
  CMat uB = euler_idempotent(rep, ball, e);
  CMat Er = rep.idempotent(principal_congruence(rep.n, rep.p, r + 1));
  return (Er * uS) == (Er * uB);
}

bool level_check(const FiniteLevelRep& rep, const CellComplex& cx, long e,
                 long r) {
  CMat u = euler_idempotent(rep, cx, e);
  CMat Er = rep.idempotent(principal_congruence(rep.n, rep.p, r + 1));
  return (u * Er) == Er;
}

// -------------------------------------------------------------- tau

int gamma_vertex_image(const CellComplex& cx,
                       const std::vector<mpq_class>& gamma, long p, int vi) {
  const auto& v = cx.vertices[vi];
  std::string key;
  if (v.is_tree) {
    VertexLattice img = act_vertex(ExactMat::diagonal(gamma), v.lat);
    key = img.key();
  } else {
    // diagonal elements translate the apartment by nu(gamma)_i = -v(gamma_i)
    std::vector<Frac> c = v.pt.coords;
    for (size_t i = 0; i < c.size(); ++i)
      c[i] = c[i] + Frac{-val_p(gamma[i], p)};
    key = apartment_key(ApartmentPoint::canonical(c));
  }
  for (int i = 0; i < (int)cx.vertices.size(); ++i)
    if (cx.vertices[i].key == key) return i;
  return -1;
}

Cyc tau_sigma(const FiniteLevelRep& rep, const CellComplex& cx, long e,
              const std::vector<mpq_class>& gamma) {
  // gamma must map the complex into itself
  std::vector<int> image(cx.vertices.size());
  for (int vi = 0; vi < (int)cx.vertices.size(); ++vi) {
    image[vi] = gamma_vertex_image(cx, gamma, rep.p, vi);
    if (image[vi] < 0)
      throw DomainError("tau_sigma: complex not stable under gamma");
  }
  CoefficientSystem cs(rep, cx, e);
  CMat A = rep.act(ExactMat::diagonal(gamma));
  Cyc tau;
  for (const auto& cell : cx.cells) {
    std::vector<int> img;
    for (int vi : cell) img.push_back(image[vi]);
    std::vector<int> sorted_img = img;
    std::sort(sorted_img.begin(), sorted_img.end());
    if (sorted_img != cell) continue;  // not gamma-fixed setwise
    // orientation sign: parity of the permutation taking img to sorted order
    int sign = 1;
    std::vector<int> perm = img;
    for (size_t i = 0; i < perm.size(); ++i)
      for (size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) {
          std::swap(perm[i], perm[j]);
          sign = -sign;
        }
    if ((cell.size() - 1) % 2 == 1) sign = -sign;
    Cyc term = (A * cs.cell_idempotent(cell)).trace();
    tau = tau + (sign > 0 ? term : -term);
  }
  return tau;
}

}  // namespace btlab
