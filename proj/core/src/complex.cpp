#include "weightforge/complex.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace weightforge {

Complex::Complex(QuiverPtr q, int lo, std::vector<Rep> terms, std::vector<RepMap> diffs)
    : q_(std::move(q)), lo_(lo), terms_(std::move(terms)), diffs_(std::move(diffs)) {
  if (terms_.empty()) {
    lo_ = 0;
    if (!diffs_.empty()) throw std::invalid_argument("complex: differentials without terms");
    return;
  }
  if (diffs_.size() + 1 != terms_.size())
    throw std::invalid_argument("complex: need exactly one differential between consecutive terms");
  for (size_t k = 0; k < diffs_.size(); ++k) {
    if (!(diffs_[k].source() == terms_[k]) || !(diffs_[k].target() == terms_[k + 1]))
      throw std::invalid_argument("complex: differential endpoints mismatch at degree " +
                                  std::to_string(lo_ + static_cast<int>(k)));
  }
  for (size_t k = 0; k + 1 < diffs_.size(); ++k)
    if (!compose(diffs_[k + 1], diffs_[k]).is_zero())
      throw std::invalid_argument("complex: d^2 != 0 at degree " + std::to_string(lo_ + static_cast<int>(k)));
}

Complex Complex::zero_complex(QuiverPtr q) { return Complex(std::move(q), 0, {}, {}); }

Complex Complex::from_module(const Rep& m, int degree) {
  return Complex(m.quiver(), degree, {m}, {});
}

Rep Complex::term(int n) const {
  if (terms_.empty() || n < lo_ || n > hi()) return Rep::zero(q_);
  return terms_[n - lo_];
}

RepMap Complex::diff(int n) const {
  if (!terms_.empty() && n >= lo_ && n < hi()) return diffs_[n - lo_];
  return RepMap::zero(term(n), term(n + 1));
}

int Complex::total_dim() const {
  int t = 0;
  for (const auto& m : terms_) t += m.total_dim();
  return t;
}

Complex Complex::shift(int k) const {
  if (terms_.empty()) return *this;
  std::vector<RepMap> diffs = diffs_;
  if (k % 2 != 0)
    for (auto& d : diffs) d = d * Rat(-1);
  return Complex(q_, lo_ - k, terms_, std::move(diffs));
}

Complex Complex::trim() const {
  int a = lo_, b = hi();
  while (a <= b && term(a).total_dim() == 0) ++a;
  while (b >= a && term(b).total_dim() == 0) --b;
  if (a > b) return zero_complex(q_);
  std::vector<Rep> terms;
  std::vector<RepMap> diffs;
  for (int n = a; n <= b; ++n) terms.push_back(term(n));
  for (int n = a; n < b; ++n) diffs.push_back(diff(n));
  return Complex(q_, a, std::move(terms), std::move(diffs));
}

bool Complex::operator==(const Complex& o) const {
  if (q_ != o.q_ && !q_->same_shape(*o.q_)) return false;
  Complex a = trim(), b = o.trim();
  return a.lo_ == b.lo_ && a.terms_ == b.terms_ && a.diffs_ == b.diffs_;
}

std::string Complex::describe() const {
  std::ostringstream os;
  if (terms_.empty()) return "0";
  for (int n = lo_; n <= hi(); ++n) os << (n > lo_ ? " -> " : "") << "[" << n << "]" << term(n).describe();
  return os.str();
}

ChainMap::ChainMap(Complex src, Complex tgt, int lo, std::vector<RepMap> comps)
    : src_(std::move(src)), tgt_(std::move(tgt)), lo_(lo), comps_(std::move(comps)) {
  for (size_t k = 0; k < comps_.size(); ++k) {
    int n = lo_ + static_cast<int>(k);
    if (!(comps_[k].source() == src_.term(n)) || !(comps_[k].target() == tgt_.term(n)))
      throw std::invalid_argument("chain map: component endpoints mismatch at degree " + std::to_string(n));
  }
  int a = std::min(src_.lo(), tgt_.lo()) - 1;
  int b = std::max(src_.hi(), tgt_.hi()) + 1;
  for (int n = a; n <= b; ++n) {
    if (!(compose(tgt_.diff(n), component(n)) == compose(component(n + 1), src_.diff(n))))
      throw std::invalid_argument("chain map: does not commute with d at degree " + std::to_string(n));
  }
}

ChainMap ChainMap::zero(const Complex& src, const Complex& tgt) {
  return ChainMap(src, tgt, 0, {});
}

ChainMap ChainMap::identity(const Complex& x) {
  std::vector<RepMap> comps;
  for (int n = x.lo(); n <= x.hi(); ++n) comps.push_back(RepMap::identity(x.term(n)));
  return ChainMap(x, x, x.lo(), std::move(comps));
}

RepMap ChainMap::component(int n) const {
  int k = n - lo_;
  if (k >= 0 && k < static_cast<int>(comps_.size())) return comps_[k];
  return RepMap::zero(src_.term(n), tgt_.term(n));
}

ChainMap ChainMap::operator+(const ChainMap& o) const {
  int a = std::min(src_.lo(), tgt_.lo());
  int b = std::max(src_.hi(), tgt_.hi());
  std::vector<RepMap> comps;
  for (int n = a; n <= b; ++n) comps.push_back(component(n) + o.component(n));
  return ChainMap(src_, tgt_, a, std::move(comps));
}

ChainMap ChainMap::operator-(const ChainMap& o) const { return *this + (o * Rat(-1)); }

ChainMap ChainMap::operator*(const Rat& s) const {
  std::vector<RepMap> comps;
  for (const auto& c : comps_) comps.push_back(c * s);
  return ChainMap(src_, tgt_, lo_, comps_.empty() ? std::vector<RepMap>{} : std::move(comps));
}

bool ChainMap::operator==(const ChainMap& o) const {
  if (!(src_ == o.src_) || !(tgt_ == o.tgt_)) return false;
  int a = std::min(src_.lo(), tgt_.lo());
  int b = std::max(src_.hi(), tgt_.hi());
  for (int n = a; n <= b; ++n)
    if (!(component(n) == o.component(n))) return false;
  return true;
}

bool ChainMap::is_zero_map() const {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

ChainMap ChainMap::shift(int k) const {
  std::vector<RepMap> comps = comps_;
  return ChainMap(src_.shift(k), tgt_.shift(k), lo_ - k, std::move(comps));
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (!(g.source() == f.target())) throw std::invalid_argument("compose(chain): middle objects differ");
  int a = std::min(f.source().lo(), g.target().lo());
  int b = std::max(f.source().hi(), g.target().hi());
  std::vector<RepMap> comps;
  for (int n = a; n <= b; ++n) comps.push_back(compose(g.component(n), f.component(n)));
  return ChainMap(f.source(), g.target(), a, std::move(comps));
}

CohomologyData cohomology_data(const Complex& x, int j) {
  Rep xj = x.term(j);
  SubRep z = kernel_sub(x.diff(j));
  SubRep b = sub_from_map(x.diff(j - 1));
  auto [zrep, zincl] = sub_to_rep(xj, z);
  // Express the boundaries inside the cycle coordinates.
  SubRep b_in_z;
  for (int v = 0; v < xj.quiver()->vertex_count(); ++v)
    b_in_z.spaces.push_back(image_basis(
        solve_or_throw(zincl.vertex(v), b.spaces[v].basis, "cohomology_data")));
  auto [h, proj] = quotient_by(zrep, b_in_z);
  return {h, zrep, zincl, proj};
}

Rep cohomology(const Complex& x, int j) { return cohomology_data(x, j).h; }

RepMap induced_cohomology_map(const ChainMap& f, int j) {
  CohomologyData dx = cohomology_data(f.source(), j);
  CohomologyData dy = cohomology_data(f.target(), j);
  RepMap g = compose(f.component(j), dx.cycles_incl);  // cycles_X -> Y^j, lands in cycles_Y
  std::vector<RatMatrix> rest;
  for (int v = 0; v < f.source().quiver()->vertex_count(); ++v)
    rest.push_back(solve_or_throw(dy.cycles_incl.vertex(v), g.vertex(v), "induced_cohomology_map"));
  RepMap on_cycles(dx.cycles, dy.cycles, std::move(rest));
  std::vector<RatMatrix> comp;
  for (int v = 0; v < f.source().quiver()->vertex_count(); ++v)
    comp.push_back(induced_on_quotients(on_cycles.vertex(v), dx.to_h.vertex(v), dy.to_h.vertex(v)));
  return RepMap(dx.h, dy.h, std::move(comp));
}

bool is_quasi_iso(const ChainMap& f) {
  int a = std::min(f.source().lo(), f.target().lo());
  int b = std::max(f.source().hi(), f.target().hi());
  for (int j = a; j <= b; ++j) {
    RepMap h = induced_cohomology_map(f, j);
    if (!h.is_injective() || !h.is_surjective()) return false;
  }
  return true;
}

bool is_acyclic(const Complex& x) {
  for (int j = x.lo(); j <= x.hi(); ++j)
    if (cohomology(x, j).total_dim() != 0) return false;
  return true;
}

ComplexWithMap subcomplex(const Complex& x, const std::vector<SubRep>& subs) {
  int len = x.empty_support() ? 0 : x.hi() - x.lo() + 1;
  if (static_cast<int>(subs.size()) != len) throw std::invalid_argument("subcomplex: wrong number of degrees");
  std::vector<Rep> terms;
  std::vector<RepMap> incls;
  for (int k = 0; k < len; ++k) {
    auto [r, i] = sub_to_rep(x.term(x.lo() + k), subs[k]);
    terms.push_back(r);
    incls.push_back(i);
  }
  std::vector<RepMap> diffs;
  for (int k = 0; k + 1 < len; ++k) {
    // d restricted to the subobjects; solvability checks closure under d.
    const RepMap& d = x.diff(x.lo() + k);
    std::vector<RatMatrix> comp;
    for (int v = 0; v < x.quiver()->vertex_count(); ++v) {
      auto c = solve(incls[k + 1].vertex(v), d.vertex(v) * incls[k].vertex(v));
      if (!c) throw std::invalid_argument("subcomplex: not closed under the differential");
      comp.push_back(*c);
    }
    diffs.push_back(RepMap(terms[k], terms[k + 1], std::move(comp)));
  }
  Complex sub(x.quiver(), x.lo(), terms, std::move(diffs));
  ChainMap incl(sub, x, x.lo(), std::move(incls));
  return {sub, incl};
}

ComplexWithMap quotient_complex(const Complex& x, const std::vector<SubRep>& subs) {
  int len = x.empty_support() ? 0 : x.hi() - x.lo() + 1;
  if (static_cast<int>(subs.size()) != len)
    throw std::invalid_argument("quotient_complex: wrong number of degrees");
  std::vector<Rep> terms;
  std::vector<RepMap> projs;
  for (int k = 0; k < len; ++k) {
    auto [r, p] = quotient_by(x.term(x.lo() + k), subs[k]);
    terms.push_back(r);
    projs.push_back(p);
  }
  std::vector<RepMap> diffs;
  for (int k = 0; k + 1 < len; ++k) {
    const RepMap& d = x.diff(x.lo() + k);
    std::vector<RatMatrix> comp;
    for (int v = 0; v < x.quiver()->vertex_count(); ++v)
      comp.push_back(induced_on_quotients(d.vertex(v), projs[k].vertex(v), projs[k + 1].vertex(v)));
    diffs.push_back(RepMap(terms[k], terms[k + 1], std::move(comp)));
  }
  Complex quo(x.quiver(), x.lo(), terms, std::move(diffs));
  ChainMap proj(x, quo, x.lo(), std::move(projs));
  return {quo, proj};
}

namespace {

std::vector<SubRep> tau_le_subs(const Complex& x, int i) {
  std::vector<SubRep> subs;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    if (n < i)
      subs.push_back(full_sub(x.term(n)));
    else if (n == i)
      subs.push_back(kernel_sub(x.diff(n)));
    else
      subs.push_back(zero_sub(x.term(n)));
  }
  return subs;
}

}  // namespace

ComplexWithMap tau_le(const Complex& x, int i) {
  auto out = subcomplex(x, tau_le_subs(x, i));
  return out;
}

ComplexWithMap tau_ge(const Complex& x, int i) {
  return quotient_complex(x, tau_le_subs(x, i - 1));
}

ComplexWithMap sigma_ge_degree(const Complex& x, int d) {
  std::vector<SubRep> subs;
  for (int n = x.lo(); n <= x.hi(); ++n)
    subs.push_back(n >= d ? full_sub(x.term(n)) : zero_sub(x.term(n)));
  return subcomplex(x, subs);
}

ComplexWithMap sigma_le_degree(const Complex& x, int d) {
  std::vector<SubRep> subs;
  for (int n = x.lo(); n <= x.hi(); ++n)
    subs.push_back(n > d ? full_sub(x.term(n)) : zero_sub(x.term(n)));
  return quotient_complex(x, subs);
}

ConeData cone(const ChainMap& f) {
  const Complex& x = f.source();
  const Complex& y = f.target();
  QuiverPtr q = x.quiver();
  int lo = std::min(x.lo() - 1, y.lo());
  int hi = std::max(x.hi() - 1, y.hi());
  if (x.empty_support() && y.empty_support()) {
    Complex c = Complex::zero_complex(q);
    return {c, ChainMap::zero(y, c), ChainMap::zero(c, x.shift(1))};
  }
  std::vector<Rep> terms;
  std::vector<RepSum> sums;
  for (int n = lo; n <= hi; ++n) {
    RepSum s = direct_sum({x.term(n + 1), y.term(n)});
    terms.push_back(s.sum);
    sums.push_back(std::move(s));
  }
  std::vector<RepMap> diffs;
  for (int n = lo; n < hi; ++n) {
    const RepSum& s0 = sums[n - lo];
    const RepSum& s1 = sums[n - lo + 1];
    RepMap d = compose(s1.inject[0], compose(x.diff(n + 1) * Rat(-1), s0.project[0])) +
               compose(s1.inject[1], compose(f.component(n + 1), s0.project[0])) +
               compose(s1.inject[1], compose(y.diff(n), s0.project[1]));
    diffs.push_back(d);
  }
  Complex c(q, lo, terms, std::move(diffs));
  std::vector<RepMap> incl, proj;
  for (int n = lo; n <= hi; ++n) {
    incl.push_back(sums[n - lo].inject[1]);
    proj.push_back(sums[n - lo].project[0]);
  }
  return {c, ChainMap(y, c, lo, std::move(incl)), ChainMap(c, x.shift(1), lo, std::move(proj))};
}

Complex formal_complex(const QuiverPtr& q, const std::vector<std::pair<int, Rep>>& terms) {
  if (terms.empty()) return Complex::zero_complex(q);
  int lo = terms[0].first, hi = terms[0].first;
  for (const auto& [d, m] : terms) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  std::vector<Rep> list(hi - lo + 1, Rep::zero(q));
  for (const auto& [d, m] : terms) {
    if (list[d - lo].total_dim() != 0) throw std::invalid_argument("formal_complex: duplicate degree");
    list[d - lo] = m;
  }
  std::vector<RepMap> diffs;
  for (int k = 0; k + 1 < static_cast<int>(list.size()); ++k)
    diffs.push_back(RepMap::zero(list[k], list[k + 1]));
  return Complex(q, lo, std::move(list), std::move(diffs));
}

ComplexSum direct_sum_complexes(const std::vector<Complex>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum_complexes: empty");
  QuiverPtr q = parts[0].quiver();
  bool all_empty = true;
  int lo = 0, hi = -1;
  for (const auto& p : parts) {
    if (p.empty_support()) continue;
    if (all_empty) {
      lo = p.lo();
      hi = p.hi();
      all_empty = false;
    } else {
      lo = std::min(lo, p.lo());
      hi = std::max(hi, p.hi());
    }
  }
  if (all_empty) {
    Complex z = Complex::zero_complex(q);
    ComplexSum out{z, {}, {}};
    for (const auto& p : parts) {
      out.inject.push_back(ChainMap::zero(p, z));
      out.project.push_back(ChainMap::zero(z, p));
    }
    return out;
  }
  std::vector<Rep> terms;
  std::vector<RepSum> sums;
  for (int n = lo; n <= hi; ++n) {
    std::vector<Rep> slice;
    for (const auto& p : parts) slice.push_back(p.term(n));
    RepSum s = direct_sum(slice);
    terms.push_back(s.sum);
    sums.push_back(std::move(s));
  }
  std::vector<RepMap> diffs;
  for (int n = lo; n < hi; ++n) {
    RepMap d = RepMap::zero(terms[n - lo], terms[n - lo + 1]);
    for (size_t i = 0; i < parts.size(); ++i)
      d = d + compose(sums[n - lo + 1].inject[i],
                      compose(parts[i].diff(n), sums[n - lo].project[i]));
    diffs.push_back(d);
  }
  Complex sum(q, lo, terms, std::move(diffs));
  ComplexSum out{sum, {}, {}};
  for (size_t i = 0; i < parts.size(); ++i) {
    std::vector<RepMap> inj, proj;
    for (int n = lo; n <= hi; ++n) {
      inj.push_back(sums[n - lo].inject[i]);
      proj.push_back(sums[n - lo].project[i]);
    }
    out.inject.push_back(ChainMap(parts[i], sum, lo, std::move(inj)));
    out.project.push_back(ChainMap(sum, parts[i], lo, std::move(proj)));
  }
  return out;
}

ChainMap identity_chain(const Complex& a, const Complex& b) {
  int lo = std::min(a.lo(), b.lo());
  int hi = std::max(a.hi(), b.hi());
  std::vector<RepMap> comps;
  for (int n = lo; n <= hi; ++n) {
    Rep s = a.term(n), t = b.term(n);
    if (s.dims() != t.dims()) throw std::logic_error("identity_chain: term dimensions differ");
    std::vector<RatMatrix> mats;
    for (int v = 0; v < s.quiver()->vertex_count(); ++v) mats.push_back(RatMatrix::identity(s.dim(v)));
    comps.emplace_back(s, t, std::move(mats));
  }
  return ChainMap(a, b, lo, std::move(comps));
}

Complex complex_forget(const Complex& x, const QuiverPtr& shadow) {
  std::vector<Rep> terms;
  std::vector<RepMap> diffs;
  for (int n = x.lo(); n <= x.hi(); ++n) terms.push_back(rep_forget(x.term(n), shadow));
  for (int n = x.lo(); n < x.hi(); ++n) diffs.push_back(map_forget(x.diff(n), shadow));
  if (terms.empty()) return Complex::zero_complex(shadow);
  return Complex(shadow, x.lo(), std::move(terms), std::move(diffs));
}

ChainMap chain_map_forget(const ChainMap& f, const QuiverPtr& shadow) {
  Complex src = complex_forget(f.source(), shadow);
  Complex tgt = complex_forget(f.target(), shadow);
  int a = std::min(src.lo(), tgt.lo());
  int b = std::max(src.hi(), tgt.hi());
  std::vector<RepMap> comps;
  for (int n = a; n <= b; ++n) comps.push_back(map_forget(f.component(n), shadow));
  return ChainMap(src, tgt, a, std::move(comps));
}

Complex complex_at_vertex(const Complex& x, int v, const QuiverPtr& single) {
  std::vector<Rep> terms;
  std::vector<RepMap> diffs;
  for (int n = x.lo(); n <= x.hi(); ++n) terms.push_back(rep_at_vertex(x.term(n), v, single));
  for (int n = x.lo(); n < x.hi(); ++n) diffs.push_back(map_at_vertex(x.diff(n), v, single));
  if (terms.empty()) return Complex::zero_complex(single);
  return Complex(single, x.lo(), std::move(terms), std::move(diffs));
}

}  // namespace weightforge
