#include "weightforge/derived.hpp"

#include <cassert>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace weightforge {

namespace {

// ---------- flat linear systems over graded families of vertex matrices ----

// u^n : src^n -> tgt^{n+tshift}; tshift = 0 for chain maps, -1 for homotopies.
struct GradedLayout {
  const Complex* src = nullptr;
  const Complex* tgt = nullptr;
  int tshift = 0;
  int n0 = 0, n1 = -1;
  std::vector<std::vector<int>> off;
  int total = 0;
};

GradedLayout make_layout(const Complex& src, const Complex& tgt, int tshift) {
  GradedLayout L;
  L.src = &src;
  L.tgt = &tgt;
  L.tshift = tshift;
  L.n0 = std::max(src.lo(), tgt.lo() - tshift);
  L.n1 = std::min(src.hi(), tgt.hi() - tshift);
  int nv = src.quiver()->vertex_count();
  for (int n = L.n0; n <= L.n1; ++n) {
    std::vector<int> o(nv, 0);
    for (int v = 0; v < nv; ++v) {
      o[v] = L.total;
      L.total += tgt.term(n + tshift).dim(v) * src.term(n).dim(v);
    }
    L.off.push_back(std::move(o));
  }
  return L;
}

bool in_range(const GradedLayout& L, int n) { return n >= L.n0 && n <= L.n1; }

int lidx(const GradedLayout& L, int n, int v, int r, int c) {
  int cols = L.src->term(n).dim(v);
  return L.off[n - L.n0][v] + r * cols + c;
}

struct SysBuilder {
  int ncols = 0;
  std::vector<std::vector<std::pair<int, Rat>>> rows;
  std::vector<Rat> rhs;

  int add_var(int size) {
    int base = ncols;
    ncols += size;
    return base;
  }
  int new_row(Rat r = Rat(0)) {
    rows.emplace_back();
    rhs.push_back(std::move(r));
    return static_cast<int>(rows.size()) - 1;
  }
  void add(int row, int col, const Rat& coef) {
    if (coef != 0) rows[row].emplace_back(col, coef);
  }
  RatMatrix matrix() const {
    RatMatrix m(static_cast<int>(rows.size()), ncols);
    for (size_t i = 0; i < rows.size(); ++i)
      for (const auto& [c, x] : rows[i]) m.at(static_cast<int>(i), c) += x;
    return m;
  }
  RatMatrix rhs_col() const { return RatMatrix::column(rhs); }
};

void emit_intertwining(SysBuilder& b, const GradedLayout& L, int base) {
  const auto& q = *L.src->quiver();
  for (int n = L.n0; n <= L.n1; ++n) {
    Rep m = L.src->term(n);
    Rep t = L.tgt->term(n + L.tshift);
    for (int a = 0; a < q.arrow_count(); ++a) {
      const Arrow& ar = q.arrow(a);
      int nr = t.dim(ar.tgt), nc = m.dim(ar.src);
      if (nr == 0 || nc == 0) continue;
      const RatMatrix& ma = m.arrow_matrix(a);
      const RatMatrix& ta = t.arrow_matrix(a);
      for (int r = 0; r < nr; ++r)
        for (int c = 0; c < nc; ++c) {
          int row = b.new_row();
          for (int k = 0; k < m.dim(ar.tgt); ++k)
            b.add(row, base + lidx(L, n, ar.tgt, r, k), ma.at(k, c));
          for (int k = 0; k < t.dim(ar.src); ++k)
            b.add(row, base + lidx(L, n, ar.src, k, c), -ta.at(r, k));
        }
    }
  }
}

// d_tgt o u^n = u^{n+1} o d_src for a degree-0 variable.
void emit_chain_commute(SysBuilder& b, const GradedLayout& L, int base) {
  const Complex& p = *L.src;
  const Complex& q = *L.tgt;
  int nv = p.quiver()->vertex_count();
  int lo = std::min(p.lo(), q.lo()) - 1;
  int hi = std::max(p.hi(), q.hi());
  for (int n = lo; n <= hi; ++n) {
    if (!in_range(L, n) && !in_range(L, n + 1)) continue;
    RepMap dq = q.diff(n);
    RepMap dp = p.diff(n);
    for (int v = 0; v < nv; ++v) {
      int nr = q.term(n + 1).dim(v), nc = p.term(n).dim(v);
      if (nr == 0 || nc == 0) continue;
      for (int r = 0; r < nr; ++r)
        for (int c = 0; c < nc; ++c) {
          int row = b.new_row();
          if (in_range(L, n))
            for (int k = 0; k < q.term(n).dim(v); ++k)
              b.add(row, base + lidx(L, n, v, k, c), dq.vertex(v).at(r, k));
          if (in_range(L, n + 1))
            for (int k = 0; k < p.term(n + 1).dim(v); ++k)
              b.add(row, base + lidx(L, n + 1, v, r, k), -dp.vertex(v).at(k, c));
        }
    }
  }
}

ChainMap chain_from_vec(const GradedLayout& L, const RatMatrix& sol, int base) {
  std::vector<RepMap> comps;
  for (int n = L.n0; n <= L.n1; ++n) {
    Rep s = L.src->term(n);
    Rep t = L.tgt->term(n);
    std::vector<RatMatrix> mats;
    for (int v = 0; v < s.quiver()->vertex_count(); ++v) {
      RatMatrix m(t.dim(v), s.dim(v));
      for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) m.at(r, c) = sol.at(base + lidx(L, n, v, r, c), 0);
      mats.push_back(std::move(m));
    }
    comps.emplace_back(s, t, std::move(mats));
  }
  return ChainMap(*L.src, *L.tgt, L.n0, std::move(comps));
}

Homotopy homotopy_from_vec(const GradedLayout& L, const RatMatrix& sol, int base) {
  Homotopy h;
  h.lo = L.n0;
  for (int n = L.n0; n <= L.n1; ++n) {
    Rep s = L.src->term(n);
    Rep t = L.tgt->term(n - 1);
    std::vector<RatMatrix> mats;
    for (int v = 0; v < s.quiver()->vertex_count(); ++v) {
      RatMatrix m(t.dim(v), s.dim(v));
      for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) m.at(r, c) = sol.at(base + lidx(L, n, v, r, c), 0);
      mats.push_back(std::move(m));
    }
    h.comps.emplace_back(s, t, std::move(mats));
  }
  return h;
}

RatMatrix vec_in_layout(const GradedLayout& L, const ChainMap& f) {
  std::vector<Rat> entries(static_cast<size_t>(L.total), Rat(0));
  for (int n = L.n0; n <= L.n1; ++n) {
    RepMap c = f.component(n);
    for (int v = 0; v < L.src->quiver()->vertex_count(); ++v)
      for (int r = 0; r < c.vertex(v).rows(); ++r)
        for (int cc = 0; cc < c.vertex(v).cols(); ++cc)
          entries[lidx(L, n, v, r, cc)] = c.vertex(v).at(r, cc);
  }
  return RatMatrix::column(entries);
}

std::vector<Homotopy> homotopy_basis(const Complex& p, const Complex& q) {
  GradedLayout L = make_layout(p, q, -1);
  SysBuilder b;
  int base = b.add_var(L.total);
  emit_intertwining(b, L, base);
  Subspace k = kernel_basis(b.matrix());
  std::vector<Homotopy> out;
  for (int j = 0; j < k.dim(); ++j) out.push_back(homotopy_from_vec(L, k.basis.col(j), base));
  return out;
}

// Adds the entries of (d_tgt s + s d_src) at map-layout position rows.
// `rowof(n, v, r, c)` must give the row index for each map-layout entry.
void emit_homotopy_value(SysBuilder& b, const GradedLayout& Ls, int base, const Rat& sign,
                         const std::function<int(int, int, int, int)>& rowof) {
  const Complex& p = *Ls.src;
  const Complex& q = *Ls.tgt;
  GradedLayout Lm = make_layout(p, q, 0);
  for (int n = Lm.n0; n <= Lm.n1; ++n) {
    RepMap dq = q.diff(n - 1);
    RepMap dp = p.diff(n);
    for (int v = 0; v < p.quiver()->vertex_count(); ++v) {
      int nr = q.term(n).dim(v), nc = p.term(n).dim(v);
      for (int r = 0; r < nr; ++r)
        for (int c = 0; c < nc; ++c) {
          int row = rowof(n, v, r, c);
          if (row < 0) continue;
          if (in_range(Ls, n))
            for (int k = 0; k < q.term(n - 1).dim(v); ++k)
              b.add(row, base + lidx(Ls, n, v, k, c), sign * dq.vertex(v).at(r, k));
          if (in_range(Ls, n + 1))
            for (int k = 0; k < p.term(n + 1).dim(v); ++k)
              b.add(row, base + lidx(Ls, n + 1, v, r, k), sign * dp.vertex(v).at(k, c));
        }
    }
  }
}

std::string complex_key(const Complex& x) {
  std::ostringstream os;
  const auto& q = *x.quiver();
  for (const auto& v : q.vertices()) os << v.id << "#" << v.weight << ";";
  for (const auto& a : q.arrows()) os << a.id << "#" << a.src << ">" << a.tgt << ";";
  os << "|" << x.lo() << "|";
  for (int n = x.lo(); n <= x.hi(); ++n) {
    os << "[";
    Rep t = x.term(n);
    for (int v = 0; v < q.vertex_count(); ++v) os << t.dim(v) << ",";
    for (int a = 0; a < q.arrow_count(); ++a) os << t.arrow_matrix(a).str();
    if (n < x.hi()) {
      RepMap d = x.diff(n);
      os << "/";
      for (int v = 0; v < q.vertex_count(); ++v) os << d.vertex(v).str();
    }
    os << "]";
  }
  return os.str();
}

// Iso between complexes with equal terms whose differentials differ by a
// global sign: components (-1)^n id.
ChainMap alternating_sign_iso(const Complex& a, const Complex& b) {
  int lo = std::min(a.lo(), b.lo());
  int hi = std::max(a.hi(), b.hi());
  std::vector<RepMap> comps;
  for (int n = lo; n <= hi; ++n) {
    Rep s = a.term(n), t = b.term(n);
    std::vector<RatMatrix> mats;
    for (int v = 0; v < s.quiver()->vertex_count(); ++v)
      mats.push_back(RatMatrix::identity(s.dim(v)) * Rat(n % 2 == 0 ? 1 : -1));
    comps.emplace_back(s, t, std::move(mats));
  }
  return ChainMap(a, b, lo, std::move(comps));
}

}  // namespace

std::shared_ptr<const ProjReplacement> proj_replace(const Complex& x) {
  thread_local std::unordered_map<std::string, std::shared_ptr<const ProjReplacement>> cache;
  std::string key = complex_key(x);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  QuiverPtr q = x.quiver();
  int rlo = x.lo(), rhi = x.hi();
  while (rlo <= rhi && cohomology(x, rlo).total_dim() == 0) ++rlo;
  while (rhi >= rlo && cohomology(x, rhi).total_dim() == 0) --rhi;
  std::shared_ptr<const ProjReplacement> pr;
  if (rlo > rhi) {
    Complex p = Complex::zero_complex(q);
    ChainMap pq = ChainMap::zero(p, x);
    pr = std::make_shared<const ProjReplacement>(
        ProjReplacement{std::move(p), std::move(pq), rlo, rhi, {}, {}});
  } else {
    std::vector<CohomologyData> hdata;
    for (int j = rlo; j <= rhi; ++j) hdata.push_back(cohomology_data(x, j));
    std::vector<Resolution> res;
    for (int j = rlo; j <= rhi; ++j) res.push_back(minimal_resolution(hdata[j - rlo].h));
    auto res_at = [&](int j) -> const Resolution* {
      if (j < rlo || j > rhi) return nullptr;
      return &res[j - rlo];
    };
    std::vector<RepSum> sums;
    std::vector<Rep> terms;
    for (int n = rlo - 1; n <= rhi; ++n) {
      const Resolution* r0 = res_at(n);
      const Resolution* r1 = res_at(n + 1);
      Rep a = r0 ? r0->p0 : Rep::zero(q);
      Rep b = r1 ? r1->p1 : Rep::zero(q);
      sums.push_back(direct_sum({a, b}));
      terms.push_back(sums.back().sum);
    }
    std::vector<RepMap> diffs;
    for (int n = rlo - 1; n < rhi; ++n) {
      const RepSum& s0 = sums[n - (rlo - 1)];
      const RepSum& s1 = sums[n - (rlo - 1) + 1];
      RepMap d = RepMap::zero(s0.sum, s1.sum);
      if (const Resolution* r = res_at(n + 1))
        d = d + compose(s1.inject[0], compose(r->d, s0.project[1]));
      diffs.push_back(d);
    }
    Complex p(q, rlo - 1, terms, std::move(diffs));

    // Lift each resolution into the complex: phi0 into the cycles, phi1 one
    // degree down hitting the boundaries.
    std::vector<RepMap> phi0, phi1;
    for (int j = rlo; j <= rhi; ++j) {
      const Resolution& r = res[j - rlo];
      const CohomologyData& hd = hdata[j - rlo];
      RepMap l = lift_through_surjection(r.eps, hd.to_h);  // p0 -> cycles
      RepMap f0 = compose(hd.cycles_incl, l);              // p0 -> x^j
      ImageData bdry = image(x.diff(j - 1));
      RepMap psi = compose(f0, r.d);  // p1 -> x^j, lands in the boundaries
      std::vector<RatMatrix> tau;
      for (int v = 0; v < q->vertex_count(); ++v)
        tau.push_back(solve_or_throw(bdry.inclusion.vertex(v), psi.vertex(v), "proj_replace"));
      RepMap into_b(r.p1, bdry.image, std::move(tau));
      RepMap f1 = lift_through_surjection(into_b, bdry.corestriction);  // p1 -> x^{j-1}
      phi0.push_back(f0);
      phi1.push_back(f1);
    }
    std::vector<RepMap> qcomps;
    for (int n = rlo - 1; n <= rhi; ++n) {
      const RepSum& s = sums[n - (rlo - 1)];
      RepMap c = RepMap::zero(s.sum, x.term(n));
      if (n >= rlo) c = c + compose(phi0[n - rlo], s.project[0]);
      if (n + 1 <= rhi) c = c + compose(phi1[n + 1 - rlo], s.project[1]);
      qcomps.push_back(c);
    }
    ChainMap pq(p, x, rlo - 1, std::move(qcomps));
    pr = std::make_shared<const ProjReplacement>(
        ProjReplacement{std::move(p), std::move(pq), rlo, rhi, std::move(res), std::move(sums)});
  }
  cache.emplace(std::move(key), pr);
  return pr;
}

std::vector<ChainMap> chain_map_basis(const Complex& p, const Complex& q) {
  GradedLayout L = make_layout(p, q, 0);
  SysBuilder b;
  int base = b.add_var(L.total);
  emit_intertwining(b, L, base);
  emit_chain_commute(b, L, base);
  Subspace k = kernel_basis(b.matrix());
  std::vector<ChainMap> out;
  for (int j = 0; j < k.dim(); ++j) out.push_back(chain_from_vec(L, k.basis.col(j), base));
  return out;
}

ChainMap homotopy_value(const Complex& p, const Complex& q, const Homotopy& s) {
  auto scomp = [&](int n) -> RepMap {
    int k = n - s.lo;
    if (k >= 0 && k < static_cast<int>(s.comps.size())) return s.comps[k];
    return RepMap::zero(p.term(n), q.term(n - 1));
  };
  int lo = std::min(p.lo(), q.lo());
  int hi = std::max(p.hi(), q.hi());
  std::vector<RepMap> comps;
  for (int n = lo; n <= hi; ++n)
    comps.push_back(compose(q.diff(n - 1), scomp(n)) + compose(scomp(n + 1), p.diff(n)));
  return ChainMap(p, q, lo, std::move(comps));
}

std::optional<Homotopy> solve_homotopy(const ChainMap& f) {
  const Complex& p = f.source();
  const Complex& q = f.target();
  GradedLayout Ls = make_layout(p, q, -1);
  GradedLayout Lm = make_layout(p, q, 0);
  SysBuilder b;
  int base = b.add_var(Ls.total);
  emit_intertwining(b, Ls, base);
  // Main equations: one row per map-layout entry, rhs = f.
  std::vector<int> rowmap(static_cast<size_t>(Lm.total), -1);
  for (int n = Lm.n0; n <= Lm.n1; ++n) {
    RepMap c = f.component(n);
    for (int v = 0; v < p.quiver()->vertex_count(); ++v)
      for (int r = 0; r < q.term(n).dim(v); ++r)
        for (int cc = 0; cc < p.term(n).dim(v); ++cc)
          rowmap[lidx(Lm, n, v, r, cc)] = b.new_row(c.vertex(v).at(r, cc));
  }
  emit_homotopy_value(b, Ls, base, Rat(1), [&](int n, int v, int r, int c) {
    if (n < Lm.n0 || n > Lm.n1) return -1;
    return rowmap[lidx(Lm, n, v, r, c)];
  });
  // f must vanish outside the map layout (it does, by typing).
  auto sol = solve(b.matrix(), b.rhs_col());
  if (!sol) return std::nullopt;
  return homotopy_from_vec(Ls, *sol, base);
}

namespace {

// Solves post o h + (d s + s d) * (-1) = rhs with h a chain map r -> mid and
// s a homotopy r -> z, where post : mid -> z and rhs : r -> z.
std::optional<ChainMap> solve_factor_through(const ChainMap& post, const ChainMap& rhs) {
  const Complex& r = rhs.source();
  const Complex& mid = post.source();
  const Complex& z = post.target();
  GradedLayout Lh = make_layout(r, mid, 0);
  GradedLayout Ls = make_layout(r, z, -1);
  GradedLayout Lm = make_layout(r, z, 0);
  SysBuilder b;
  int bh = b.add_var(Lh.total);
  int bs = b.add_var(Ls.total);
  emit_intertwining(b, Lh, bh);
  emit_chain_commute(b, Lh, bh);
  emit_intertwining(b, Ls, bs);
  std::vector<int> rowmap(static_cast<size_t>(Lm.total), -1);
  for (int n = Lm.n0; n <= Lm.n1; ++n) {
    RepMap c = rhs.component(n);
    for (int v = 0; v < r.quiver()->vertex_count(); ++v)
      for (int rr = 0; rr < z.term(n).dim(v); ++rr)
        for (int cc = 0; cc < r.term(n).dim(v); ++cc)
          rowmap[lidx(Lm, n, v, rr, cc)] = b.new_row(c.vertex(v).at(rr, cc));
  }
  // post o h contributions.
  for (int n = Lm.n0; n <= Lm.n1; ++n) {
    if (!in_range(Lh, n)) continue;
    RepMap pc = post.component(n);
    for (int v = 0; v < r.quiver()->vertex_count(); ++v)
      for (int rr = 0; rr < z.term(n).dim(v); ++rr)
        for (int cc = 0; cc < r.term(n).dim(v); ++cc) {
          int row = rowmap[lidx(Lm, n, v, rr, cc)];
          if (row < 0) continue;
          for (int k = 0; k < mid.term(n).dim(v); ++k)
            b.add(row, bh + lidx(Lh, n, v, k, cc), pc.vertex(v).at(rr, k));
        }
  }
  emit_homotopy_value(b, Ls, bs, Rat(1), [&](int n, int v, int rr, int cc) {
    if (n < Lm.n0 || n > Lm.n1) return -1;
    return rowmap[lidx(Lm, n, v, rr, cc)];
  });
  // Rows where rhs is nonzero but no unknown can reach are detected by solve.
  auto sol = solve(b.matrix(), b.rhs_col());
  if (!sol) return std::nullopt;
  return chain_from_vec(Lh, *sol, bh);
}

}  // namespace

std::optional<ChainMap> solve_post_compose(const ChainMap& post, const ChainMap& rhs) {
  return solve_factor_through(post, rhs);
}

std::optional<ChainMap> solve_pre_compose(const ChainMap& pre, const ChainMap& rhs) {
  const Complex& r = pre.source();
  const Complex& p = pre.target();
  const Complex& z = rhs.target();
  GradedLayout Lh = make_layout(p, z, 0);
  GradedLayout Ls = make_layout(r, z, -1);
  GradedLayout Lm = make_layout(r, z, 0);
  SysBuilder b;
  int bh = b.add_var(Lh.total);
  int bs = b.add_var(Ls.total);
  emit_intertwining(b, Lh, bh);
  emit_chain_commute(b, Lh, bh);
  emit_intertwining(b, Ls, bs);
  std::vector<int> rowmap(static_cast<size_t>(Lm.total), -1);
  for (int n = Lm.n0; n <= Lm.n1; ++n) {
    RepMap c = rhs.component(n);
    for (int v = 0; v < r.quiver()->vertex_count(); ++v)
      for (int rr = 0; rr < z.term(n).dim(v); ++rr)
        for (int cc = 0; cc < r.term(n).dim(v); ++cc)
          rowmap[lidx(Lm, n, v, rr, cc)] = b.new_row(c.vertex(v).at(rr, cc));
  }
  // (h o pre) contributions.
  for (int n = Lm.n0; n <= Lm.n1; ++n) {
    if (!in_range(Lh, n)) continue;
    RepMap pc = pre.component(n);
    for (int v = 0; v < r.quiver()->vertex_count(); ++v)
      for (int rr = 0; rr < z.term(n).dim(v); ++rr)
        for (int cc = 0; cc < r.term(n).dim(v); ++cc) {
          int row = rowmap[lidx(Lm, n, v, rr, cc)];
          if (row < 0) continue;
          for (int k = 0; k < p.term(n).dim(v); ++k)
            b.add(row, bh + lidx(Lh, n, v, rr, k), pc.vertex(v).at(k, cc));
        }
  }
  emit_homotopy_value(b, Ls, bs, Rat(1), [&](int n, int v, int rr, int cc) {
    if (n < Lm.n0 || n > Lm.n1) return -1;
    return rowmap[lidx(Lm, n, v, rr, cc)];
  });
  auto sol = solve(b.matrix(), b.rhs_col());
  if (!sol) return std::nullopt;
  return chain_from_vec(Lh, *sol, bh);
}

ChainMap lift_through_qis(const ChainMap& f, const ChainMap& qis) {
  auto g = solve_post_compose(qis, f);
  if (!g) throw std::logic_error("lift_through_qis: no lift exists");
  return *g;
}

RepMap lift_through_surjection(const RepMap& phi, const RepMap& eps) {
  // Find l : source(phi) -> source(eps) with eps o l = phi.
  std::vector<RepMap> basis = hom_basis(phi.source(), eps.source());
  auto vec_of = [&](const RepMap& f) {
    std::vector<Rat> e;
    for (int v = 0; v < f.source().quiver()->vertex_count(); ++v)
      for (int i = 0; i < f.vertex(v).rows(); ++i)
        for (int j = 0; j < f.vertex(v).cols(); ++j) e.push_back(f.vertex(v).at(i, j));
    return RatMatrix::column(e);
  };
  RatMatrix target = vec_of(phi);
  RatMatrix cols(target.rows(), static_cast<int>(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j) cols.set_col(static_cast<int>(j), vec_of(compose(eps, basis[j])));
  auto c = solve(cols, target);
  if (!c) throw std::logic_error("lift_through_surjection: no lift (source not projective?)");
  RepMap l = RepMap::zero(phi.source(), eps.source());
  for (size_t j = 0; j < basis.size(); ++j)
    if (c->at(static_cast<int>(j), 0) != 0) l = l + basis[j] * c->at(static_cast<int>(j), 0);
  return l;
}

std::optional<ChainMap> find_homotopy_inverse(const ChainMap& h) {
  auto g = solve_post_compose(h, identity_chain(h.target(), h.target()));
  if (!g) return std::nullopt;
  ChainMap gh = compose(*g, h);
  if (!solve_homotopy(gh - identity_chain(h.source(), h.source()))) return std::nullopt;
  return g;
}

HomSpace::HomSpace(Complex x, Complex y, int n)
    : x_(std::move(x)),
      y_(std::move(y)),
      n_(n),
      px_(proj_replace(x_)->p),
      py_shifted_(proj_replace(y_)->p.shift(n_)) {
  chain_basis_ = chain_map_basis(px_, py_shifted_);
  GradedLayout L = make_layout(px_, py_shifted_, 0);
  chain_cols_ = RatMatrix(L.total, static_cast<int>(chain_basis_.size()));
  for (size_t j = 0; j < chain_basis_.size(); ++j)
    chain_cols_.set_col(static_cast<int>(j), vec_in_layout(L, chain_basis_[j]));
  std::vector<Homotopy> hb = homotopy_basis(px_, py_shifted_);
  RatMatrix ncoords(static_cast<int>(chain_basis_.size()), static_cast<int>(hb.size()));
  for (size_t j = 0; j < hb.size(); ++j) {
    RatMatrix val = vec_in_layout(L, homotopy_value(px_, py_shifted_, hb[j]));
    ncoords.set_col(static_cast<int>(j), solve_or_throw(chain_cols_, val, "HomSpace"));
  }
  auto [proj, qdim] = quotient_map(static_cast<int>(chain_basis_.size()), image_basis(ncoords));
  class_proj_ = proj;
  if (qdim > 0) {
    RatMatrix section = right_inverse(class_proj_);
    for (int j = 0; j < qdim; ++j) {
      ChainMap rep = ChainMap::zero(px_, py_shifted_);
      for (size_t i = 0; i < chain_basis_.size(); ++i) {
        const Rat& coef = section.at(static_cast<int>(i), j);
        if (coef != 0) rep = rep + chain_basis_[i] * coef;
      }
      class_basis_.push_back(rep);
    }
  }
}

RatMatrix HomSpace::coords_of(const ChainMap& f) const {
  GradedLayout L = make_layout(px_, py_shifted_, 0);
  auto c = solve(chain_cols_, vec_in_layout(L, f));
  if (!c) throw std::invalid_argument("HomSpace::coords_of: not a chain map in this space");
  return class_proj_ * *c;
}

ChainMap HomSpace::rep_from_coords(const RatMatrix& coords) const {
  ChainMap rep = ChainMap::zero(px_, py_shifted_);
  RatMatrix section = class_proj_.cols() > 0 && dim() > 0 ? right_inverse(class_proj_) : RatMatrix(0, 0);
  for (int j = 0; j < dim(); ++j) {
    const Rat& coef = coords.at(j, 0);
    if (coef == 0) continue;
    for (int i = 0; i < section.rows(); ++i)
      if (section.at(i, j) != 0) rep = rep + chain_basis_[i] * (section.at(i, j) * coef);
  }
  return rep;
}

HomSpace hom_derived(const Complex& x, const Complex& y, int n) { return HomSpace(x, y, n); }

int hom_derived_dim(const Complex& x, const Complex& y, int n) {
  return HomSpace(x, y, n).dim();
}

DClass zero_class(const Complex& x, const Complex& y, int n) {
  return {x, y, n, ChainMap::zero(proj_replace(x)->p, proj_replace(y)->p.shift(n))};
}

DClass identity_class(const Complex& x) {
  return {x, x, 0, ChainMap::identity(proj_replace(x)->p)};
}

DClass class_of_chain(const ChainMap& f) {
  auto prx = proj_replace(f.source());
  auto pry = proj_replace(f.target());
  return {f.source(), f.target(), 0, lift_through_qis(compose(f, prx->q), pry->q)};
}

DClass class_of_chain_into_shift(const ChainMap& f, const Complex& tgt_base, int n) {
  if (!(f.target() == tgt_base.shift(n)))
    throw std::invalid_argument("class_of_chain_into_shift: target is not tgt_base[n]");
  auto prx = proj_replace(f.source());
  auto pry = proj_replace(tgt_base);
  return {f.source(), tgt_base, n, lift_through_qis(compose(f, prx->q), pry->q.shift(n))};
}

DClass compose(const DClass& g, const DClass& f) {
  if (!(g.src == f.tgt)) throw std::invalid_argument("compose(class): middle objects differ");
  return {f.src, g.tgt, f.n + g.n, compose(g.rep.shift(f.n), f.rep)};
}

DClass class_add(const DClass& a, const DClass& b) {
  if (!(a.src == b.src) || !(a.tgt == b.tgt) || a.n != b.n)
    throw std::invalid_argument("class_add: endpoints differ");
  return {a.src, a.tgt, a.n, a.rep + b.rep};
}

DClass class_scale(const DClass& a, const Rat& s) { return {a.src, a.tgt, a.n, a.rep * s}; }

namespace {

ChainMap replacement_shift_iso_impl(const Complex& x, int k) {
  Complex shifted = x.shift(k);
  const Complex& pk = proj_replace(shifted)->p;
  Complex pshift = proj_replace(x)->p.shift(k);
  if (k % 2 == 0) return identity_chain(pk, pshift);
  return alternating_sign_iso(pk, pshift);
}

}  // namespace

DClass shift_class(const DClass& f, int k) {
  if (k == 0) return f;
  ChainMap sx = replacement_shift_iso_impl(f.src, k);  // P(src[k]) -> P(src)[k]
  ChainMap sy = replacement_shift_iso_impl(f.tgt, k);  // P(tgt[k]) -> P(tgt)[k]
  // Inverse of the sign iso has the same matrices, reversed endpoints.
  ChainMap sy_inv =
      k % 2 == 0 ? identity_chain(sy.target(), sy.source())
                 : alternating_sign_iso(sy.target(), sy.source());
  ChainMap rep = compose(sy_inv.shift(f.n), compose(f.rep.shift(k), sx));
  return {f.src.shift(k), f.tgt.shift(k), f.n, rep};
}

bool class_is_zero(const DClass& f) { return solve_homotopy(f.rep).has_value(); }

bool class_equal(const DClass& a, const DClass& b) {
  if (!(a.src == b.src) || !(a.tgt == b.tgt) || a.n != b.n) return false;
  return solve_homotopy(a.rep - b.rep).has_value();
}

RepMap class_cohomology(const DClass& f, int j) {
  auto prx = proj_replace(f.src);
  auto pry = proj_replace(f.tgt);
  RepMap on_p = induced_cohomology_map(f.rep, j);  // H^j(P(src)) -> H^{j+n}(P(tgt))
  RepMap a = induced_cohomology_map(prx->q, j);    // H^j(P(src)) -> H^j(src)
  RepMap b = induced_cohomology_map(pry->q.shift(f.n), j);
  std::vector<RatMatrix> ainv;
  for (int v = 0; v < f.src.quiver()->vertex_count(); ++v)
    ainv.push_back(solve_or_throw(a.vertex(v), RatMatrix::identity(a.vertex(v).rows()),
                                  "class_cohomology"));
  RepMap a_inverse(a.target(), a.source(), std::move(ainv));
  return compose(b, compose(on_p, a_inverse));
}

FormalitySplit formality_split(const Complex& x) {
  auto pr = proj_replace(x);
  std::vector<std::pair<int, Rep>> pieces;
  for (int j = pr->rlo; j <= pr->rhi; ++j) {
    Rep h = cohomology(x, j);
    if (h.total_dim() > 0) pieces.emplace_back(j, h);
  }
  Complex formal = formal_complex(x.quiver(), pieces);
  auto prf = proj_replace(formal);
  if (!(prf->p == pr->p)) throw std::logic_error("formality_split: replacement mismatch");
  DClass to_x{formal, x, 0, identity_chain(prf->p, pr->p)};
  DClass from_x{x, formal, 0, identity_chain(pr->p, prf->p)};
  return {std::move(pieces), std::move(formal), std::move(to_x), std::move(from_x)};
}

namespace {

struct ResolutionLift {
  RepMap f0;  // p0 -> p0'
  RepMap f1;  // p1 -> p1'
};

// Comparison lift of a module map along minimal resolutions.
ResolutionLift lift_module_map(const Resolution& ra, const Resolution& rb, const RepMap& phi) {
  RepMap f0 = lift_through_surjection(compose(phi, ra.eps), rb.eps);
  // d_b o f1 = f0 o d_a, with d_b injective.
  RepMap rhs = compose(f0, ra.d);
  std::vector<RatMatrix> comp;
  for (int v = 0; v < phi.source().quiver()->vertex_count(); ++v)
    comp.push_back(solve_or_throw(rb.d.vertex(v), rhs.vertex(v), "lift_module_map"));
  return {f0, RepMap(ra.p1, rb.p1, std::move(comp))};
}

// Assembles a chain map P(x) -> P(y) from per-degree resolution lifts.
// lifts(j) gives the block maps for the j-th cohomology, or nothing for zero.
ChainMap assemble_replacement_map(
    const ProjReplacement& from, const ProjReplacement& to,
    const std::function<std::optional<ResolutionLift>(int j)>& lifts) {
  int lo = std::min(from.p.lo(), to.p.lo());
  int hi = std::max(from.p.hi(), to.p.hi());
  auto sum_at = [](const ProjReplacement& pr, int n) -> const RepSum* {
    int k = n - (pr.rlo - 1);
    if (k < 0 || k >= static_cast<int>(pr.sums.size())) return nullptr;
    return &pr.sums[k];
  };
  std::vector<RepMap> comps;
  for (int n = lo; n <= hi; ++n) {
    RepMap c = RepMap::zero(from.p.term(n), to.p.term(n));
    const RepSum* sf = sum_at(from, n);
    const RepSum* st = sum_at(to, n);
    if (sf && st) {
      if (auto l0 = lifts(n)) c = c + compose(st->inject[0], compose(l0->f0, sf->project[0]));
      if (auto l1 = lifts(n + 1)) c = c + compose(st->inject[1], compose(l1->f1, sf->project[1]));
    }
    comps.push_back(c);
  }
  return ChainMap(from.p, to.p, lo, std::move(comps));
}

const Resolution* res_of(const ProjReplacement& pr, int j) {
  if (j < pr.rlo || j > pr.rhi) return nullptr;
  return &pr.res[j - pr.rlo];
}

}  // namespace

std::optional<std::pair<DClass, DClass>> find_complex_iso(const Complex& x, const Complex& y) {
  auto prx = proj_replace(x);
  auto pry = proj_replace(y);
  int lo = std::min(prx->rlo, pry->rlo);
  int hi = std::max(prx->rhi, pry->rhi);
  std::vector<std::optional<std::pair<RepMap, RepMap>>> isos(std::max(0, hi - lo + 1));
  for (int j = lo; j <= hi; ++j) {
    Rep hx = cohomology(x, j);
    Rep hy = cohomology(y, j);
    if (hx.total_dim() == 0 && hy.total_dim() == 0) continue;
    auto iso = find_module_iso(hx, hy);
    if (!iso) return std::nullopt;
    isos[j - lo] = iso;
  }
  auto fwd_lift = [&](int j) -> std::optional<ResolutionLift> {
    if (j < lo || j > hi || !isos[j - lo]) return std::nullopt;
    return lift_module_map(*res_of(*prx, j), *res_of(*pry, j), isos[j - lo]->first);
  };
  auto bwd_lift = [&](int j) -> std::optional<ResolutionLift> {
    if (j < lo || j > hi || !isos[j - lo]) return std::nullopt;
    return lift_module_map(*res_of(*pry, j), *res_of(*prx, j), isos[j - lo]->second);
  };
  ChainMap phi = assemble_replacement_map(*prx, *pry, fwd_lift);
  ChainMap psi0 = assemble_replacement_map(*pry, *prx, bwd_lift);
  // psi0 o phi induces the identity on cohomology; the defect is square-zero.
  ChainMap eps = compose(psi0, phi) - identity_chain(prx->p, prx->p);
  ChainMap psi = psi0 - compose(eps, psi0);
  if (!solve_homotopy(compose(psi, phi) - identity_chain(prx->p, prx->p)))
    throw std::logic_error("find_complex_iso: left inverse correction failed");
  if (!solve_homotopy(compose(phi, psi) - identity_chain(pry->p, pry->p)))
    throw std::logic_error("find_complex_iso: two-sidedness failed");
  return std::make_pair(DClass{x, y, 0, phi}, DClass{y, x, 0, psi});
}

bool complexes_isomorphic(const Complex& x, const Complex& y) {
  return find_complex_iso(x, y).has_value();
}

namespace {

struct Block {
  int degree;
  Rep h;
  Complex b;      // from_module(h, degree)
  DClass inject;  // b -> x
  DClass project; // x -> b
};

DerivedSplit split_blocks(const Complex& x, const std::vector<Block>& blocks, const DClass& e);

DerivedSplit split_single_block(const Complex& x, const Block& blk, const DClass& e) {
  DClass ejj = compose(blk.project, compose(e, blk.inject));
  RepMap phi = class_cohomology(ejj, blk.degree);
  IdempotentSplit ms = split_idempotent_module(blk.h, phi);
  Complex y = Complex::from_module(ms.summand, blk.degree);
  ChainMap mi(y, blk.b, blk.degree, {ms.inclusion});
  ChainMap mp(blk.b, y, blk.degree, {ms.projection});
  DClass incl = compose(blk.inject, class_of_chain(mi));
  DClass proj = compose(class_of_chain(mp), blk.project);
  return {y, incl, proj};
}

DerivedSplit split_blocks(const Complex& x, const std::vector<Block>& blocks, const DClass& e) {
  if (blocks.empty()) {
    Complex z = Complex::zero_complex(x.quiver());
    return {z, zero_class(z, x, 0), zero_class(x, z, 0)};
  }
  if (blocks.size() == 1) return split_single_block(x, blocks[0], e);

  const Block& top = blocks.back();
  std::vector<Block> lower(blocks.begin(), blocks.end() - 1);

  DClass s1 = compose(top.inject, compose(compose(top.project, compose(e, top.inject)), top.project));
  DClass low_id = zero_class(x, x, 0);
  for (const Block& bl : lower) low_id = class_add(low_id, compose(bl.inject, bl.project));
  DClass s2 = compose(low_id, compose(e, low_id));
  DClass d = class_add(e, class_scale(class_add(s1, s2), Rat(-1)));

  DClass id = identity_class(x);
  DClass h = class_add(id, class_add(class_scale(compose(d, s1), Rat(-1)), compose(s2, d)));
  DClass hinv = class_add(id, class_add(compose(d, s1), class_scale(compose(s2, d), Rat(-1))));
  assert(class_equal(compose(h, hinv), id));
  assert(class_equal(compose(hinv, compose(class_add(s1, s2), h)), e));

  DerivedSplit top_split = split_single_block(x, top, s1);
  DerivedSplit low_split = split_blocks(x, lower, s2);

  ComplexSum ysum = direct_sum_complexes({top_split.summand, low_split.summand});
  DClass incl_raw = class_add(compose(top_split.inclusion, class_of_chain(ysum.project[0])),
                              compose(low_split.inclusion, class_of_chain(ysum.project[1])));
  DClass proj_raw = class_add(compose(class_of_chain(ysum.inject[0]), top_split.projection),
                              compose(class_of_chain(ysum.inject[1]), low_split.projection));
  return {ysum.sum, compose(hinv, incl_raw), compose(proj_raw, h)};
}

}  // namespace

DClass block_inject(const Complex& x, int j) {
  auto pr = proj_replace(x);
  Rep h = cohomology(x, j);
  Complex b = Complex::from_module(h, j);
  auto prb = proj_replace(b);
  auto lift_id = [&](int jj) -> std::optional<ResolutionLift> {
    if (jj != j || h.total_dim() == 0) return std::nullopt;
    return lift_module_map(*res_of(*prb, jj), *res_of(*pr, jj), RepMap::identity(h));
  };
  return {b, x, 0, assemble_replacement_map(*prb, *pr, lift_id)};
}

DClass block_project(const Complex& x, int j) {
  auto pr = proj_replace(x);
  Rep h = cohomology(x, j);
  Complex b = Complex::from_module(h, j);
  auto prb = proj_replace(b);
  auto lift_id = [&](int jj) -> std::optional<ResolutionLift> {
    if (jj != j || h.total_dim() == 0) return std::nullopt;
    return lift_module_map(*res_of(*pr, jj), *res_of(*prb, jj), RepMap::identity(h));
  };
  return {x, b, 0, assemble_replacement_map(*pr, *prb, lift_id)};
}

DerivedSplit split_idempotent_derived(const Complex& x, const DClass& e) {
  if (!(e.src == x) || !(e.tgt == x) || e.n != 0)
    throw std::invalid_argument("split_idempotent_derived: not an endomorphism class of x");
  if (!class_equal(compose(e, e), e))
    throw std::invalid_argument("split_idempotent_derived: e is not idempotent up to homotopy");
  FormalitySplit fs = formality_split(x);
  std::vector<Block> blocks;
  for (const auto& [j, h] : fs.pieces)
    blocks.push_back(Block{j, h, Complex::from_module(h, j), block_inject(x, j), block_project(x, j)});
  DerivedSplit out = split_blocks(x, blocks, e);
  if (!class_equal(compose(out.inclusion, out.projection), e))
    throw std::logic_error("split_idempotent_derived: inclusion o projection != e");
  if (!class_equal(compose(out.projection, out.inclusion), identity_class(out.summand)))
    throw std::logic_error("split_idempotent_derived: projection o inclusion != id");
  return out;
}

Triangle cone_triangle(const ChainMap& f) {
  ConeData cd = cone(f);
  return {f.source(), f.target(), cd.cone, class_of_chain(f), class_of_chain(cd.incl),
          class_of_chain_into_shift(cd.proj, f.source(), 1)};
}

bool validate_triangle(const Triangle& t) {
  if (!class_is_zero(compose(t.v, t.u))) return false;
  if (!class_is_zero(compose(t.w, t.v))) return false;
  if (!class_is_zero(compose(t.u, t.w))) return false;

  ConeData cd = cone(t.u.rep);  // cone over P(a) -> P(b); projective terms
  const Complex& k = cd.cone;
  Complex pc = proj_replace(t.c)->p;
  Complex pa1 = proj_replace(t.a)->p.shift(1);

  // Solve for psi : k -> pc with psi o incl ~ v.rep and w.rep o psi ~ proj.
  GradedLayout Lpsi = make_layout(k, pc, 0);
  GradedLayout Ls1 = make_layout(proj_replace(t.b)->p, pc, -1);
  GradedLayout Ls2 = make_layout(k, pa1, -1);
  GradedLayout Lm1 = make_layout(proj_replace(t.b)->p, pc, 0);
  GradedLayout Lm2 = make_layout(k, pa1, 0);
  SysBuilder b;
  int bpsi = b.add_var(Lpsi.total);
  int bs1 = b.add_var(Ls1.total);
  int bs2 = b.add_var(Ls2.total);
  emit_intertwining(b, Lpsi, bpsi);
  emit_chain_commute(b, Lpsi, bpsi);
  emit_intertwining(b, Ls1, bs1);
  emit_intertwining(b, Ls2, bs2);

  const Complex& pb = *Lm1.src;
  std::vector<int> rowmap1(static_cast<size_t>(Lm1.total), -1);
  for (int n = Lm1.n0; n <= Lm1.n1; ++n) {
    RepMap c = t.v.rep.component(n);
    for (int v = 0; v < pb.quiver()->vertex_count(); ++v)
      for (int r = 0; r < pc.term(n).dim(v); ++r)
        for (int cc = 0; cc < pb.term(n).dim(v); ++cc)
          rowmap1[lidx(Lm1, n, v, r, cc)] = b.new_row(c.vertex(v).at(r, cc));
  }
  // (psi o incl) entries.
  for (int n = Lm1.n0; n <= Lm1.n1; ++n) {
    if (!in_range(Lpsi, n)) continue;
    RepMap ic = cd.incl.component(n);
    for (int v = 0; v < pb.quiver()->vertex_count(); ++v)
      for (int r = 0; r < pc.term(n).dim(v); ++r)
        for (int cc = 0; cc < pb.term(n).dim(v); ++cc) {
          int row = rowmap1[lidx(Lm1, n, v, r, cc)];
          if (row < 0) continue;
          for (int kk = 0; kk < k.term(n).dim(v); ++kk)
            b.add(row, bpsi + lidx(Lpsi, n, v, r, kk), ic.vertex(v).at(kk, cc));
        }
  }
  emit_homotopy_value(b, Ls1, bs1, Rat(1), [&](int n, int v, int r, int c) {
    if (n < Lm1.n0 || n > Lm1.n1) return -1;
    return rowmap1[lidx(Lm1, n, v, r, c)];
  });

  std::vector<int> rowmap2(static_cast<size_t>(Lm2.total), -1);
  for (int n = Lm2.n0; n <= Lm2.n1; ++n) {
    RepMap c = cd.proj.component(n);
    for (int v = 0; v < k.quiver()->vertex_count(); ++v)
      for (int r = 0; r < pa1.term(n).dim(v); ++r)
        for (int cc = 0; cc < k.term(n).dim(v); ++cc)
          rowmap2[lidx(Lm2, n, v, r, cc)] = b.new_row(c.vertex(v).at(r, cc));
  }
  // (w.rep o psi) entries.
  for (int n = Lm2.n0; n <= Lm2.n1; ++n) {
    if (!in_range(Lpsi, n)) continue;
    RepMap wc = t.w.rep.component(n);
    for (int v = 0; v < k.quiver()->vertex_count(); ++v)
      for (int r = 0; r < pa1.term(n).dim(v); ++r)
        for (int cc = 0; cc < k.term(n).dim(v); ++cc) {
          int row = rowmap2[lidx(Lm2, n, v, r, cc)];
          if (row < 0) continue;
          for (int kk = 0; kk < pc.term(n).dim(v); ++kk)
            b.add(row, bpsi + lidx(Lpsi, n, v, kk, cc), wc.vertex(v).at(r, kk));
        }
  }
  emit_homotopy_value(b, Ls2, bs2, Rat(1), [&](int n, int v, int r, int c) {
    if (n < Lm2.n0 || n > Lm2.n1) return -1;
    return rowmap2[lidx(Lm2, n, v, r, c)];
  });

  RatMatrix mat = b.matrix();
  RatMatrix rhs = b.rhs_col();
  auto particular = solve(mat, rhs);
  if (!particular) return false;
  Subspace kern = kernel_basis(mat);
  std::mt19937_64 rng(0x7419a3b5u);
  for (int attempt = 0; attempt < 64; ++attempt) {
    RatMatrix sol = *particular;
    if (attempt > 0) {
      for (int j = 0; j < kern.dim(); ++j) {
        long coef = static_cast<long>(rng() % 7) - 3;
        if (coef == 0) continue;
        RatMatrix add = kern.basis.col(j) * Rat(coef);
        sol = sol + add;
      }
    }
    ChainMap psi = chain_from_vec(Lpsi, sol, bpsi);
    if (is_quasi_iso(psi)) return true;
  }
  return false;
}

RatMatrix class_compose_matrix(const DClass& g, const HomSpace& from, const HomSpace& to) {
  if (!(from.target() == g.src) || !(to.target() == g.tgt) || to.shift() != from.shift() + g.n)
    throw std::invalid_argument("class_compose_matrix: space mismatch");
  RatMatrix m(to.dim(), from.dim());
  for (int j = 0; j < from.dim(); ++j) {
    ChainMap comp = compose(g.rep.shift(from.shift()), from.class_basis()[j]);
    m.set_col(j, to.coords_of(comp));
  }
  return m;
}

RatMatrix class_precompose_matrix(const DClass& f, const HomSpace& from, const HomSpace& to) {
  if (!(from.source() == f.tgt) || !(to.source() == f.src) || !(to.target() == from.target()) ||
      to.shift() != from.shift() + f.n)
    throw std::invalid_argument("class_precompose_matrix: space mismatch");
  RatMatrix m(to.dim(), from.dim());
  for (int j = 0; j < from.dim(); ++j) {
    ChainMap comp = compose(from.class_basis()[j].shift(f.n), f.rep);
    m.set_col(j, to.coords_of(comp));
  }
  return m;
}

Triangle triangle_with_cone_object(const DClass& u, const Complex& c) {
  ConeData cd = cone(u.rep);
  const Complex& k = cd.cone;
  auto prk = proj_replace(k);
  DClass vk{u.tgt, k, 0, lift_through_qis(cd.incl, prk->q)};
  DClass wk{k, u.src, 1, compose(cd.proj, prk->q)};
  auto iso = find_complex_iso(k, c);
  if (!iso) throw std::logic_error("triangle_with_cone_object: c is not isomorphic to the cone");
  return {u.src, u.tgt, c, u, compose(iso->first, vk), compose(wk, iso->second)};
}

}  // namespace weightforge
