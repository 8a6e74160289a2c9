#include "weightforge/rep.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <sstream>
#include <stdexcept>

namespace weightforge {

namespace {

void vec_append(std::vector<Rat>& out, const RatMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.push_back(m.at(i, j));
}

// Flattens a RepMap into the coordinate vector used by hom-space linear
// algebra: per-vertex entries, row-major, vertices in index order.
RatMatrix vec_of_map(const RepMap& f) {
  std::vector<Rat> entries;
  const auto& q = *f.source().quiver();
  for (int v = 0; v < q.vertex_count(); ++v) vec_append(entries, f.vertex(v));
  return RatMatrix::column(entries);
}

RepMap map_from_vec(const Rep& src, const Rep& tgt, const RatMatrix& vec) {
  const auto& q = *src.quiver();
  std::vector<RatMatrix> comp;
  int off = 0;
  for (int v = 0; v < q.vertex_count(); ++v) {
    RatMatrix m(tgt.dim(v), src.dim(v));
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) m.at(i, j) = vec.at(off++, 0);
    comp.push_back(std::move(m));
  }
  return RepMap(src, tgt, std::move(comp));
}

RatMatrix product_along_path(const Rep& m, const std::vector<int>& path, int start_vertex) {
  const auto& q = *m.quiver();
  RatMatrix acc = RatMatrix::identity(m.dim(start_vertex));
  for (int a : path) acc = m.arrow_matrix(a) * acc;
  (void)q;
  return acc;
}

int path_index(const std::vector<std::vector<int>>& paths, const std::vector<int>& p) {
  for (size_t i = 0; i < paths.size(); ++i)
    if (paths[i] == p) return static_cast<int>(i);
  return -1;
}

}  // namespace

Rep::Rep(QuiverPtr q, std::vector<int> dims, std::vector<RatMatrix> arrows)
    : q_(std::move(q)), dims_(std::move(dims)), arr_(std::move(arrows)) {
  if (static_cast<int>(dims_.size()) != q_->vertex_count())
    throw std::invalid_argument("rep: dimension list does not match vertex count");
  if (static_cast<int>(arr_.size()) != q_->arrow_count())
    throw std::invalid_argument("rep: arrow matrix list does not match arrow count");
  for (int d : dims_)
    if (d < 0) throw std::invalid_argument("rep: negative dimension");
  for (int a = 0; a < q_->arrow_count(); ++a) {
    const Arrow& ar = q_->arrow(a);
    if (arr_[a].rows() != dims_[ar.tgt] || arr_[a].cols() != dims_[ar.src])
      throw std::invalid_argument("rep: arrow matrix " + ar.id + " has wrong shape");
  }
}

Rep Rep::zero(QuiverPtr q) {
  std::vector<int> dims(q->vertex_count(), 0);
  std::vector<RatMatrix> arr;
  for (int a = 0; a < q->arrow_count(); ++a) arr.emplace_back(0, 0);
  return Rep(std::move(q), std::move(dims), std::move(arr));
}

int Rep::total_dim() const {
  int t = 0;
  for (int d : dims_) t += d;
  return t;
}

bool Rep::operator==(const Rep& o) const {
  if (q_ != o.q_ && !q_->same_shape(*o.q_)) return false;
  return dims_ == o.dims_ && arr_ == o.arr_;
}

std::string Rep::describe() const {
  std::ostringstream os;
  os << "{";
  for (int v = 0; v < q_->vertex_count(); ++v)
    os << (v ? "," : "") << q_->vertex(v).id << ":" << dims_[v];
  os << "}";
  return os.str();
}

RepMap::RepMap(Rep src, Rep tgt, std::vector<RatMatrix> components)
    : src_(std::move(src)), tgt_(std::move(tgt)), comp_(std::move(components)) {
  const auto& q = *src_.quiver();
  if (!q.same_shape(*tgt_.quiver())) throw std::invalid_argument("repmap: quivers differ");
  if (static_cast<int>(comp_.size()) != q.vertex_count())
    throw std::invalid_argument("repmap: component count mismatch");
  for (int v = 0; v < q.vertex_count(); ++v)
    if (comp_[v].rows() != tgt_.dim(v) || comp_[v].cols() != src_.dim(v))
      throw std::invalid_argument("repmap: component at " + q.vertex(v).id + " has wrong shape");
  for (int a = 0; a < q.arrow_count(); ++a) {
    const Arrow& ar = q.arrow(a);
    if (comp_[ar.tgt] * src_.arrow_matrix(a) != tgt_.arrow_matrix(a) * comp_[ar.src])
      throw std::invalid_argument("repmap: intertwining violated at arrow " + ar.id);
  }
}

RepMap RepMap::zero(const Rep& src, const Rep& tgt) {
  std::vector<RatMatrix> comp;
  for (int v = 0; v < src.quiver()->vertex_count(); ++v)
    comp.emplace_back(tgt.dim(v), src.dim(v));
  return RepMap(src, tgt, std::move(comp));
}

RepMap RepMap::identity(const Rep& m) {
  std::vector<RatMatrix> comp;
  for (int v = 0; v < m.quiver()->vertex_count(); ++v)
    comp.push_back(RatMatrix::identity(m.dim(v)));
  return RepMap(m, m, std::move(comp));
}

RepMap RepMap::operator+(const RepMap& o) const {
  std::vector<RatMatrix> comp;
  for (size_t v = 0; v < comp_.size(); ++v) comp.push_back(comp_[v] + o.comp_[v]);
  return RepMap(src_, tgt_, std::move(comp));
}

RepMap RepMap::operator-(const RepMap& o) const {
  std::vector<RatMatrix> comp;
  for (size_t v = 0; v < comp_.size(); ++v) comp.push_back(comp_[v] - o.comp_[v]);
  return RepMap(src_, tgt_, std::move(comp));
}

RepMap RepMap::operator*(const Rat& s) const {
  std::vector<RatMatrix> comp;
  for (const auto& c : comp_) comp.push_back(c * s);
  return RepMap(src_, tgt_, std::move(comp));
}

bool RepMap::operator==(const RepMap& o) const {
  return src_ == o.src_ && tgt_ == o.tgt_ && comp_ == o.comp_;
}

bool RepMap::is_zero() const {
  for (const auto& c : comp_)
    if (!c.is_zero()) return false;
  return true;
}

bool RepMap::is_identity() const {
  if (!(src_ == tgt_)) return false;
  for (const auto& c : comp_)
    if (!c.is_identity()) return false;
  return true;
}

bool RepMap::is_injective() const {
  for (const auto& c : comp_)
    if (rank(c) != c.cols()) return false;
  return true;
}

bool RepMap::is_surjective() const {
  for (const auto& c : comp_)
    if (rank(c) != c.rows()) return false;
  return true;
}

std::string RepMap::describe() const {
  std::ostringstream os;
  os << src_.describe() << " -> " << tgt_.describe();
  return os.str();
}

RepMap compose(const RepMap& g, const RepMap& f) {
  if (!(g.source() == f.target())) throw std::invalid_argument("compose: middle objects differ");
  std::vector<RatMatrix> comp;
  for (int v = 0; v < f.source().quiver()->vertex_count(); ++v)
    comp.push_back(g.vertex(v) * f.vertex(v));
  return RepMap(f.source(), g.target(), std::move(comp));
}

Rep simple(const QuiverPtr& q, int v) {
  if (v < 0 || v >= q->vertex_count()) throw std::invalid_argument("simple: unknown vertex");
  std::vector<int> dims(q->vertex_count(), 0);
  dims[v] = 1;
  std::vector<RatMatrix> arr;
  for (int a = 0; a < q->arrow_count(); ++a)
    arr.emplace_back(dims[q->arrow(a).tgt], dims[q->arrow(a).src]);
  return Rep(q, std::move(dims), std::move(arr));
}

Rep projective(const QuiverPtr& q, int v) {
  if (v < 0 || v >= q->vertex_count()) throw std::invalid_argument("projective: unknown vertex");
  if (!q->acyclic()) throw std::invalid_argument("projective: quiver must be acyclic");
  std::vector<std::vector<std::vector<int>>> basis(q->vertex_count());
  std::vector<int> dims(q->vertex_count());
  for (int w = 0; w < q->vertex_count(); ++w) {
    basis[w] = q->paths(v, w);
    dims[w] = static_cast<int>(basis[w].size());
  }
  std::vector<RatMatrix> arr;
  for (int a = 0; a < q->arrow_count(); ++a) {
    const Arrow& ar = q->arrow(a);
    RatMatrix m(dims[ar.tgt], dims[ar.src]);
    for (int j = 0; j < dims[ar.src]; ++j) {
      std::vector<int> extended = basis[ar.src][j];
      extended.push_back(a);
      int i = path_index(basis[ar.tgt], extended);
      assert(i >= 0);
      m.at(i, j) = 1;
    }
    arr.push_back(std::move(m));
  }
  return Rep(q, std::move(dims), std::move(arr));
}

RepSum direct_sum(const std::vector<Rep>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum: need at least one part");
  const QuiverPtr& q = parts[0].quiver();
  int nv = q->vertex_count();
  std::vector<int> dims(nv, 0);
  for (const auto& p : parts)
    for (int v = 0; v < nv; ++v) dims[v] += p.dim(v);
  std::vector<RatMatrix> arr;
  for (int a = 0; a < q->arrow_count(); ++a) {
    RatMatrix m(0, 0);
    bool first = true;
    for (const auto& p : parts) {
      m = first ? p.arrow_matrix(a) : RatMatrix::block_diag(m, p.arrow_matrix(a));
      first = false;
    }
    arr.push_back(std::move(m));
  }
  Rep sum(q, dims, std::move(arr));

  RepSum out{sum, {}, {}};
  std::vector<int> offset(nv, 0);
  for (const auto& p : parts) {
    std::vector<RatMatrix> inj, proj;
    for (int v = 0; v < nv; ++v) {
      RatMatrix in(dims[v], p.dim(v));
      RatMatrix pr(p.dim(v), dims[v]);
      for (int k = 0; k < p.dim(v); ++k) {
        in.at(offset[v] + k, k) = 1;
        pr.at(k, offset[v] + k) = 1;
      }
      inj.push_back(std::move(in));
      proj.push_back(std::move(pr));
    }
    out.inject.emplace_back(p, sum, std::move(inj));
    out.project.emplace_back(sum, p, std::move(proj));
    for (int v = 0; v < nv; ++v) offset[v] += p.dim(v);
  }
  return out;
}

int SubRep::total_dim() const {
  int t = 0;
  for (const auto& s : spaces) t += s.dim();
  return t;
}

SubRep sub_from_map(const RepMap& f) {
  SubRep s;
  for (int v = 0; v < f.source().quiver()->vertex_count(); ++v)
    s.spaces.push_back(image_basis(f.vertex(v)));
  return s;
}

SubRep kernel_sub(const RepMap& f) {
  SubRep s;
  for (int v = 0; v < f.source().quiver()->vertex_count(); ++v)
    s.spaces.push_back(kernel_basis(f.vertex(v)));
  return s;
}

SubRep full_sub(const Rep& m) {
  SubRep s;
  for (int v = 0; v < m.quiver()->vertex_count(); ++v) s.spaces.push_back(Subspace::full(m.dim(v)));
  return s;
}

SubRep zero_sub(const Rep& m) {
  SubRep s;
  for (int v = 0; v < m.quiver()->vertex_count(); ++v) s.spaces.push_back(Subspace::zero(m.dim(v)));
  return s;
}

SubRep sub_sum(const SubRep& a, const SubRep& b) {
  SubRep s;
  for (size_t v = 0; v < a.spaces.size(); ++v) s.spaces.push_back(subspace_sum(a.spaces[v], b.spaces[v]));
  return s;
}

SubRep sub_intersect(const SubRep& a, const SubRep& b) {
  SubRep s;
  for (size_t v = 0; v < a.spaces.size(); ++v)
    s.spaces.push_back(subspace_intersect(a.spaces[v], b.spaces[v]));
  return s;
}

bool sub_equal(const SubRep& a, const SubRep& b) {
  if (a.spaces.size() != b.spaces.size()) return false;
  for (size_t v = 0; v < a.spaces.size(); ++v)
    if (!subspaces_equal(a.spaces[v], b.spaces[v])) return false;
  return true;
}

bool sub_contains(const SubRep& outer, const SubRep& inner) {
  for (size_t v = 0; v < outer.spaces.size(); ++v)
    if (!subspace_contains(outer.spaces[v], inner.spaces[v])) return false;
  return true;
}

RepWithMap sub_to_rep(const Rep& ambient, const SubRep& s) {
  const auto& q = *ambient.quiver();
  for (int a = 0; a < q.arrow_count(); ++a) {
    const Arrow& ar = q.arrow(a);
    Subspace im = map_subspace(ambient.arrow_matrix(a), s.spaces[ar.src]);
    if (!subspace_contains(s.spaces[ar.tgt], im))
      throw std::invalid_argument("sub_to_rep: not closed under arrow " + ar.id);
  }
  std::vector<int> dims;
  for (const auto& sp : s.spaces) dims.push_back(sp.dim());
  std::vector<RatMatrix> arr;
  for (int a = 0; a < q.arrow_count(); ++a) {
    const Arrow& ar = q.arrow(a);
    arr.push_back(restrict_matrix(ambient.arrow_matrix(a), s.spaces[ar.src], s.spaces[ar.tgt]));
  }
  Rep rep(ambient.quiver(), dims, std::move(arr));
  std::vector<RatMatrix> incl;
  for (int v = 0; v < q.vertex_count(); ++v) incl.push_back(s.spaces[v].basis);
  return {rep, RepMap(rep, ambient, std::move(incl))};
}

RepWithMap quotient_by(const Rep& ambient, const SubRep& s) {
  const auto& q = *ambient.quiver();
  std::vector<RatMatrix> proj;
  std::vector<int> dims;
  for (int v = 0; v < q.vertex_count(); ++v) {
    auto [p, d] = quotient_map(ambient.dim(v), s.spaces[v]);
    proj.push_back(p);
    dims.push_back(d);
  }
  std::vector<RatMatrix> arr;
  for (int a = 0; a < q.arrow_count(); ++a) {
    const Arrow& ar = q.arrow(a);
    arr.push_back(induced_on_quotients(ambient.arrow_matrix(a), proj[ar.src], proj[ar.tgt]));
  }
  Rep rep(ambient.quiver(), dims, std::move(arr));
  return {rep, RepMap(ambient, rep, std::move(proj))};
}

SubRep map_sub(const RepMap& f, const SubRep& s) {
  SubRep out;
  for (int v = 0; v < f.source().quiver()->vertex_count(); ++v)
    out.spaces.push_back(map_subspace(f.vertex(v), s.spaces[v]));
  return out;
}

SubRep preimage_sub(const RepMap& f, const SubRep& s) {
  SubRep out;
  for (int v = 0; v < f.source().quiver()->vertex_count(); ++v)
    out.spaces.push_back(preimage_subspace(f.vertex(v), s.spaces[v]));
  return out;
}

RepWithMap kernel(const RepMap& f) { return sub_to_rep(f.source(), kernel_sub(f)); }

RepWithMap cokernel(const RepMap& f) { return quotient_by(f.target(), sub_from_map(f)); }

ImageData image(const RepMap& f) {
  auto [img, incl] = sub_to_rep(f.target(), sub_from_map(f));
  std::vector<RatMatrix> corest;
  for (int v = 0; v < f.source().quiver()->vertex_count(); ++v)
    corest.push_back(solve_or_throw(incl.vertex(v), f.vertex(v), "image"));
  return {img, incl, RepMap(f.source(), img, std::move(corest))};
}

std::vector<RepMap> hom_basis(const Rep& m, const Rep& n) {
  const auto& q = *m.quiver();
  if (!q.same_shape(*n.quiver())) throw std::invalid_argument("hom_basis: quivers differ");
  std::vector<int> offset(q.vertex_count() + 1, 0);
  for (int v = 0; v < q.vertex_count(); ++v)
    offset[v + 1] = offset[v] + n.dim(v) * m.dim(v);
  int unknowns = offset[q.vertex_count()];

  int eqs = 0;
  for (int a = 0; a < q.arrow_count(); ++a)
    eqs += n.dim(q.arrow(a).tgt) * m.dim(q.arrow(a).src);
  RatMatrix sys(eqs, unknowns);
  int row = 0;
  for (int a = 0; a < q.arrow_count(); ++a) {
    const Arrow& ar = q.arrow(a);
    const RatMatrix& ma = m.arrow_matrix(a);
    const RatMatrix& na = n.arrow_matrix(a);
    // f_tgt * M_a - N_a * f_src = 0, entrywise at (r, c).
    for (int r = 0; r < n.dim(ar.tgt); ++r)
      for (int c = 0; c < m.dim(ar.src); ++c) {
        for (int k = 0; k < m.dim(ar.tgt); ++k)
          sys.at(row, offset[ar.tgt] + r * m.dim(ar.tgt) + k) += ma.at(k, c);
        for (int k = 0; k < n.dim(ar.src); ++k)
          sys.at(row, offset[ar.src] + k * m.dim(ar.src) + c) -= na.at(r, k);
        ++row;
      }
  }
  Subspace sol = kernel_basis(sys);
  std::vector<RepMap> out;
  for (int j = 0; j < sol.dim(); ++j) out.push_back(map_from_vec(m, n, sol.basis.col(j)));
  return out;
}

int hom_dim(const Rep& m, const Rep& n) { return static_cast<int>(hom_basis(m, n).size()); }

namespace {

// Radical at v = sum of images of incoming arrows.
std::vector<Subspace> radical_spaces(const Rep& m) {
  const auto& q = *m.quiver();
  std::vector<Subspace> rad;
  for (int v = 0; v < q.vertex_count(); ++v) rad.push_back(Subspace::zero(m.dim(v)));
  for (int a = 0; a < q.arrow_count(); ++a) {
    const Arrow& ar = q.arrow(a);
    rad[ar.tgt] = subspace_sum(rad[ar.tgt], image_basis(m.arrow_matrix(a)));
  }
  return rad;
}

struct Cover {
  Rep p0;
  RepMap eps;
};

// Projective cover: one copy of P_v per basis vector of top(m)_v, hitting a
// chosen complement of the radical.
Cover projective_cover(const Rep& m) {
  const auto& q = m.quiver();
  auto rad = radical_spaces(m);
  std::vector<Rep> parts;
  std::vector<std::pair<int, RatMatrix>> generators;  // (vertex, generating column)
  for (int v = 0; v < q->vertex_count(); ++v) {
    auto [proj, tdim] = quotient_map(m.dim(v), rad[v]);
    if (tdim == 0) continue;
    RatMatrix section = right_inverse(proj);  // columns lift the top basis
    for (int k = 0; k < tdim; ++k) {
      parts.push_back(projective(q, v));
      generators.emplace_back(v, section.col(k));
    }
  }
  if (parts.empty()) {
    Rep p0 = Rep::zero(q);
    return {p0, RepMap::zero(p0, m)};
  }
  RepSum sum = direct_sum(parts);
  // eps on the copy of P_v generated by column c: path basis vector p at
  // vertex w goes to M_p(c).
  std::vector<RatMatrix> comp;
  for (int w = 0; w < q->vertex_count(); ++w) comp.emplace_back(m.dim(w), sum.sum.dim(w));
  int col_offset_total = 0;
  for (size_t part = 0; part < parts.size(); ++part) {
    (void)col_offset_total;
    int v = generators[part].first;
    const RatMatrix& c = generators[part].second;
    for (int w = 0; w < q->vertex_count(); ++w) {
      auto paths = q->paths(v, w);
      for (size_t pi = 0; pi < paths.size(); ++pi) {
        RatMatrix img = product_along_path(m, paths[pi], v) * c;
        // Column index inside the sum: injection of basis vector pi.
        RatMatrix basis_vec(parts[part].dim(w), 1);
        basis_vec.at(static_cast<int>(pi), 0) = 1;
        RatMatrix in_sum = sum.inject[part].vertex(w) * basis_vec;
        for (int r = 0; r < m.dim(w); ++r)
          for (int s = 0; s < sum.sum.dim(w); ++s)
            if (in_sum.at(s, 0) != 0) comp[w].at(r, s) += img.at(r, 0) * in_sum.at(s, 0);
      }
    }
  }
  return {sum.sum, RepMap(sum.sum, m, std::move(comp))};
}

}  // namespace

Resolution minimal_resolution(const Rep& m) {
  Cover c0 = projective_cover(m);
  if (!c0.eps.is_surjective()) throw std::logic_error("projective cover is not surjective");
  auto [k, incl] = kernel(c0.eps);
  Cover c1 = projective_cover(k);
  // Path algebras of acyclic quivers are hereditary: the kernel is projective
  // and its cover is an isomorphism.
  if (!c1.eps.is_injective() || !c1.eps.is_surjective())
    throw std::logic_error("kernel of a projective cover failed to be projective");
  RepMap d = compose(incl, c1.eps);
  return {c1.p0, c0.p0, d, c0.eps};
}

bool is_projective(const Rep& m) {
  Cover c = projective_cover(m);
  return c.eps.is_injective();
}

Ext1 ext1(const Rep& m, const Rep& n) {
  Resolution res = minimal_resolution(m);
  std::vector<RepMap> b1 = hom_basis(res.p1, n);
  std::vector<RepMap> b0 = hom_basis(res.p0, n);
  Ext1 out{0, res, {}};
  if (b1.empty()) return out;
  RatMatrix b1_cols(vec_of_map(b1[0]).rows(), static_cast<int>(b1.size()));
  for (size_t j = 0; j < b1.size(); ++j) b1_cols.set_col(static_cast<int>(j), vec_of_map(b1[j]));
  // Image of precomposition with d inside Hom(p1, n), in b1-coordinates.
  RatMatrix img(static_cast<int>(b1.size()), static_cast<int>(b0.size()));
  for (size_t j = 0; j < b0.size(); ++j)
    img.set_col(static_cast<int>(j),
                solve_or_throw(b1_cols, vec_of_map(compose(b0[j], res.d)), "ext1"));
  Subspace im = image_basis(img);
  auto [proj, qdim] = quotient_map(static_cast<int>(b1.size()), im);
  out.dim = qdim;
  if (qdim > 0) {
    RatMatrix section = right_inverse(proj);
    for (int j = 0; j < qdim; ++j) {
      RatMatrix coord = section.col(j);
      RepMap rep = RepMap::zero(res.p1, n);
      for (size_t i = 0; i < b1.size(); ++i)
        if (coord.at(static_cast<int>(i), 0) != 0) rep = rep + b1[i] * coord.at(static_cast<int>(i), 0);
      out.classes.push_back(rep);
    }
  }
  return out;
}

long long euler_form(const Rep& m, const Rep& n) {
  const auto& q = *m.quiver();
  long long e = 0;
  for (int v = 0; v < q.vertex_count(); ++v)
    e += static_cast<long long>(m.dim(v)) * n.dim(v);
  for (int a = 0; a < q.arrow_count(); ++a)
    e -= static_cast<long long>(m.dim(q.arrow(a).src)) * n.dim(q.arrow(a).tgt);
  return e;
}

namespace {

SubRep weight_le_sub(const Rep& m, int i) {
  const auto& q = *m.quiver();
  SubRep s;
  for (int v = 0; v < q.vertex_count(); ++v)
    s.spaces.push_back(q.weight(v) <= i ? Subspace::full(m.dim(v)) : Subspace::zero(m.dim(v)));
  return s;
}

void require_admissible(const Rep& m, const char* who) {
  if (!m.quiver()->admissible())
    throw std::invalid_argument(std::string(who) + ": quiver is not admissible");
}

}  // namespace

RepWithMap w_le_module(const Rep& m, int i) {
  require_admissible(m, "w_le_module");
  return sub_to_rep(m, weight_le_sub(m, i));
}

RepWithMap w_ge_quotient(const Rep& m, int i) {
  require_admissible(m, "w_ge_quotient");
  return quotient_by(m, weight_le_sub(m, i - 1));
}

Rep gr_module(const Rep& m, int i) {
  require_admissible(m, "gr_module");
  const auto& q = m.quiver();
  std::vector<int> dims(q->vertex_count(), 0);
  for (int v = 0; v < q->vertex_count(); ++v)
    if (q->weight(v) == i) dims[v] = m.dim(v);
  std::vector<RatMatrix> arr;
  for (int a = 0; a < q->arrow_count(); ++a)
    arr.emplace_back(dims[q->arrow(a).tgt], dims[q->arrow(a).src]);
  return Rep(q, std::move(dims), std::move(arr));
}

RepMap w_le_restrict(const RepMap& f, int i) {
  auto src = w_le_module(f.source(), i);
  auto tgt = w_le_module(f.target(), i);
  const auto& q = *f.source().quiver();
  std::vector<RatMatrix> comp;
  for (int v = 0; v < q.vertex_count(); ++v)
    comp.push_back(q.weight(v) <= i ? f.vertex(v) : RatMatrix(0, 0));
  return RepMap(src.rep, tgt.rep, std::move(comp));
}

bool in_weight_slice(const Rep& m, int i) {
  const auto& q = *m.quiver();
  for (int v = 0; v < q.vertex_count(); ++v)
    if (q.weight(v) != i && m.dim(v) != 0) return false;
  for (int a = 0; a < q.arrow_count(); ++a)
    if (!m.arrow_matrix(a).is_zero()) return false;
  return true;
}

IdempotentSplit split_idempotent_module(const Rep& m, const RepMap& e) {
  if (!(e.source() == m) || !(e.target() == m))
    throw std::invalid_argument("split_idempotent_module: not an endomorphism of m");
  if (!(compose(e, e) == e)) throw std::invalid_argument("split_idempotent_module: e is not idempotent");
  ImageData img = image(e);
  IdempotentSplit out{img.image, img.inclusion, img.corestriction};
  assert(compose(out.inclusion, out.projection) == e);
  assert(compose(out.projection, out.inclusion).is_identity());
  return out;
}

SliceReport is_semisimple_slice(const QuiverPtr& q, int i) {
  for (int a = 0; a < q->arrow_count(); ++a) {
    const Arrow& ar = q->arrow(a);
    if (q->weight(ar.src) == i && q->weight(ar.tgt) == i)
      return {false, "arrow " + ar.id + " joins two weight-" + std::to_string(i) + " vertices"};
  }
  for (int u = 0; u < q->vertex_count(); ++u) {
    if (q->weight(u) != i) continue;
    for (int w = 0; w < q->vertex_count(); ++w) {
      if (q->weight(w) != i) continue;
      Ext1 e = ext1(simple(q, u), simple(q, w));
      if (e.dim != 0)
        return {false, "ext1(S_" + q->vertex(u).id + ", S_" + q->vertex(w).id + ") has dimension " +
                           std::to_string(e.dim)};
    }
  }
  return {true, ""};
}

std::optional<std::pair<RepMap, RepMap>> find_module_iso(const Rep& m, const Rep& n) {
  if (m.dims() != n.dims()) return std::nullopt;
  if (m.total_dim() == 0) return std::make_pair(RepMap::zero(m, n), RepMap::zero(n, m));
  std::vector<RepMap> basis = hom_basis(m, n);
  if (basis.empty()) return std::nullopt;
  std::mt19937_64 rng(0x77e19f04u);
  for (int attempt = 0; attempt < 48; ++attempt) {
    long range = 2 + attempt;
    RepMap f = RepMap::zero(m, n);
    for (const auto& b : basis) {
      long c = static_cast<long>(rng() % (2 * range + 1)) - static_cast<long>(range);
      if (c != 0) f = f + b * Rat(c);
    }
    bool invertible = true;
    std::vector<RatMatrix> inv;
    for (int v = 0; v < m.quiver()->vertex_count(); ++v) {
      auto iv = solve(f.vertex(v), RatMatrix::identity(n.dim(v)));
      if (!iv || f.vertex(v).rows() != f.vertex(v).cols() || rank(f.vertex(v)) != f.vertex(v).rows()) {
        invertible = false;
        break;
      }
      inv.push_back(*iv);
    }
    if (!invertible) continue;
    RepMap g(n, m, std::move(inv));
    assert(compose(g, f).is_identity() && compose(f, g).is_identity());
    return std::make_pair(f, g);
  }
  return std::nullopt;
}

bool modules_isomorphic(const Rep& m, const Rep& n) { return find_module_iso(m, n).has_value(); }

Rep rep_forget(const Rep& m, const QuiverPtr& shadow) {
  return Rep(shadow, m.dims(), {});
}

RepMap map_forget(const RepMap& f, const QuiverPtr& shadow) {
  std::vector<RatMatrix> comp;
  for (int v = 0; v < shadow->vertex_count(); ++v) comp.push_back(f.vertex(v));
  return RepMap(rep_forget(f.source(), shadow), rep_forget(f.target(), shadow), std::move(comp));
}

Rep rep_at_vertex(const Rep& m, int v, const QuiverPtr& single) {
  return Rep(single, {m.dim(v)}, {});
}

RepMap map_at_vertex(const RepMap& f, int v, const QuiverPtr& single) {
  return RepMap(rep_at_vertex(f.source(), v, single), rep_at_vertex(f.target(), v, single),
                {f.vertex(v)});
}

}  // namespace weightforge
