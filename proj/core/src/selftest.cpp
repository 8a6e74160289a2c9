#include "weightforge/selftest.hpp"

#include <algorithm>

namespace weightforge {

uint64_t Rng::next() {
  // splitmix64
  state_ += 0x9e3779b97f4a7c15ull;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

int Rng::range(int lo, int hi) {
  if (hi <= lo) return lo;
  return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
}

Rat Rng::rat_small() { return Rat(static_cast<long>(range(-2, 2))); }

QuiverPtr random_admissible_quiver(Rng& rng, int max_vertices) {
  int nv = rng.range(1, max_vertices);
  std::vector<Vertex> verts;
  for (int v = 0; v < nv; ++v) verts.push_back({"v" + std::to_string(v), rng.range(-3, 3)});
  std::vector<WeightedQuiver::ArrowSpec> arrows;
  int attempts = rng.range(0, 2 * nv);
  int id = 0;
  for (int t = 0; t < attempts; ++t) {
    int a = rng.range(0, nv - 1), b = rng.range(0, nv - 1);
    if (verts[a].weight <= verts[b].weight) continue;
    arrows.push_back({"a" + std::to_string(id++), verts[a].id, verts[b].id});
  }
  return make_quiver(std::move(verts), arrows);
}

QuiverPtr random_acyclic_quiver(Rng& rng, int max_vertices) {
  int nv = rng.range(1, max_vertices);
  std::vector<Vertex> verts;
  for (int v = 0; v < nv; ++v) verts.push_back({"v" + std::to_string(v), rng.range(-3, 3)});
  std::vector<WeightedQuiver::ArrowSpec> arrows;
  int attempts = rng.range(0, 2 * nv);
  int id = 0;
  for (int t = 0; t < attempts; ++t) {
    int a = rng.range(0, nv - 1), b = rng.range(0, nv - 1);
    if (a >= b) continue;  // arrows along the vertex order keep it acyclic
    arrows.push_back({"a" + std::to_string(id++), verts[a].id, verts[b].id});
  }
  return make_quiver(std::move(verts), arrows);
}

Rep random_rep(Rng& rng, const QuiverPtr& q, int max_dim) {
  std::vector<int> dims;
  for (int v = 0; v < q->vertex_count(); ++v) dims.push_back(rng.range(0, max_dim));
  std::vector<RatMatrix> arr;
  for (int a = 0; a < q->arrow_count(); ++a) {
    RatMatrix m(dims[q->arrow(a).tgt], dims[q->arrow(a).src]);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rng.rat_small();
    arr.push_back(std::move(m));
  }
  return Rep(q, std::move(dims), std::move(arr));
}

RepMap random_rep_map(Rng& rng, const Rep& m, const Rep& n) {
  std::vector<RepMap> basis = hom_basis(m, n);
  RepMap f = RepMap::zero(m, n);
  for (const auto& b : basis) {
    Rat c = rng.rat_small();
    if (c != 0) f = f + b * c;
  }
  return f;
}

namespace {

RepMap random_automorphism(Rng& rng, const Rep& m) {
  std::vector<RepMap> basis = hom_basis(m, m);
  for (int attempt = 0; attempt < 12; ++attempt) {
    RepMap g = RepMap::identity(m);
    for (const auto& b : basis) {
      Rat c = rng.rat_small();
      if (c != 0) g = g + b * c;
    }
    bool ok = true;
    for (int v = 0; v < m.quiver()->vertex_count(); ++v)
      if (rank(g.vertex(v)) != m.dim(v)) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  return RepMap::identity(m);
}

}  // namespace

Complex random_complex(Rng& rng, const QuiverPtr& q, int max_amplitude, int max_dim) {
  int lo = rng.range(-3, 1);
  int amp = rng.range(0, max_amplitude);
  std::vector<Complex> parts;
  int pieces = rng.range(1, 3);
  for (int k = 0; k < pieces; ++k) {
    Rep m = random_rep(rng, q, max_dim);
    parts.push_back(Complex::from_module(m, rng.range(lo, lo + amp)));
  }
  int contractibles = rng.range(0, 2);
  for (int k = 0; k < contractibles; ++k) {
    Rep m = random_rep(rng, q, std::max(1, max_dim - 1));
    int d = rng.range(lo, lo + std::max(0, amp - 1));
    parts.push_back(cone(ChainMap::identity(Complex::from_module(m, d))).cone);
  }
  Complex sum = direct_sum_complexes(parts).sum.trim();
  if (sum.empty_support()) return sum;
  // Conjugate the differential by a random degreewise automorphism.
  std::vector<RepMap> autos;
  for (int n = sum.lo(); n <= sum.hi(); ++n) autos.push_back(random_automorphism(rng, sum.term(n)));
  std::vector<Rep> terms;
  std::vector<RepMap> diffs;
  for (int n = sum.lo(); n <= sum.hi(); ++n) terms.push_back(sum.term(n));
  for (int n = sum.lo(); n < sum.hi(); ++n) {
    const RepMap& g1 = autos[n + 1 - sum.lo()];
    const RepMap& g0 = autos[n - sum.lo()];
    std::vector<RatMatrix> inv;
    for (int v = 0; v < q->vertex_count(); ++v)
      inv.push_back(
          solve_or_throw(g0.vertex(v), RatMatrix::identity(g0.vertex(v).rows()), "random_complex"));
    RepMap g0inv(g0.target(), g0.source(), std::move(inv));
    diffs.push_back(compose(g1, compose(sum.diff(n), g0inv)));
  }
  return Complex(q, sum.lo(), std::move(terms), std::move(diffs));
}

Complex random_projective_complex(Rng& rng, const QuiverPtr& q, int max_amplitude, int max_copies) {
  std::vector<Complex> parts;
  int pieces = rng.range(1, std::max(1, max_copies));
  int lo = rng.range(-2, 1);
  int amp = rng.range(0, std::max(0, max_amplitude - 1));
  for (int k = 0; k < pieces; ++k) {
    Rep m = random_rep(rng, q, 2);
    if (m.total_dim() == 0) continue;
    Complex mc = Complex::from_module(m, rng.range(lo, lo + amp));
    parts.push_back(proj_replace(mc)->p);
  }
  if (rng.coin()) {
    int v = rng.range(0, q->vertex_count() - 1);
    Complex pc = Complex::from_module(projective(q, v), rng.range(lo, lo + std::max(0, amp - 1)));
    parts.push_back(cone(ChainMap::identity(pc)).cone);
  }
  if (parts.empty()) return Complex::zero_complex(q);
  return direct_sum_complexes(parts).sum.trim();
}

ChainMap random_chain_map(Rng& rng, const Complex& x, const Complex& y) {
  std::vector<ChainMap> basis = chain_map_basis(x, y);
  ChainMap f = ChainMap::zero(x, y);
  for (const auto& b : basis) {
    Rat c = rng.rat_small();
    if (c != 0) f = f + b * c;
  }
  return f;
}

DClass random_split_idempotent(Rng& rng, const Complex& x) {
  FormalitySplit fs = formality_split(x);
  DClass e = zero_class(x, x, 0);
  bool any = false;
  for (const auto& [j, h] : fs.pieces) {
    (void)h;
    if (!rng.coin()) continue;
    any = true;
    e = class_add(e, compose(block_inject(x, j), block_project(x, j)));
  }
  if (!any && !fs.pieces.empty() && rng.coin()) {
    int j = fs.pieces[rng.range(0, static_cast<int>(fs.pieces.size()) - 1)].first;
    e = class_add(e, compose(block_inject(x, j), block_project(x, j)));
  }
  // Twist by g = id + nilpotent; classes vanishing on all cohomology have
  // square zero here (hereditary), so g^{-1} = id - nilpotent.
  DClass nil = zero_class(x, x, 0);
  HomSpace endos(x, x, 0);
  for (const auto& rep : endos.class_basis()) {
    DClass c{x, x, 0, rep};
    bool lowers = true;
    for (int j = x.lo() - 1; j <= x.hi() + 1 && lowers; ++j)
      if (!class_cohomology(c, j).is_zero()) lowers = false;
    if (lowers && rng.coin()) nil = class_add(nil, c);
  }
  DClass id = identity_class(x);
  DClass g = class_add(id, nil);
  DClass ginv = class_add(id, class_scale(nil, Rat(-1)));
  return compose(g, compose(e, ginv));
}

bool SelftestReport::all_passed() const {
  for (const auto& [name, c] : invariants)
    if (c.failed > 0) return false;
  return true;
}

}  // namespace weightforge
