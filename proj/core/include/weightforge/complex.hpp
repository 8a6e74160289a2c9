#pragma once

#include <utility>
#include <vector>

#include "weightforge/rep.hpp"

namespace weightforge {

// Bounded cohomological complex of representations; d raises degree and
// d^{n+1} o d^n = 0 exactly. Sign conventions, fixed once:
//   X[k]^n = X^{n+k}, with differential multiplied by (-1)^k;
//   cone(f)^n = X^{n+1} (+) Y^n with d(x, y) = (-d x, f x + d y).
class Complex {
 public:
  Complex(QuiverPtr q, int lo, std::vector<Rep> terms, std::vector<RepMap> diffs);
  static Complex zero_complex(QuiverPtr q);
  static Complex from_module(const Rep& m, int degree);

  const QuiverPtr& quiver() const { return q_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
  bool empty_support() const { return terms_.empty(); }

  Rep term(int n) const;     // zero rep outside the support
  RepMap diff(int n) const;  // zero map outside

  int total_dim() const;
  bool is_zero_object() const { return total_dim() == 0; }

  Complex shift(int k) const;
  Complex trim() const;  // drops zero terms at both ends

  bool operator==(const Complex& o) const;
  bool operator!=(const Complex& o) const { return !(*this == o); }

  std::string describe() const;

 private:
  QuiverPtr q_;
  int lo_ = 0;
  std::vector<Rep> terms_;
  std::vector<RepMap> diffs_;  // diffs_[k] : terms_[k] -> terms_[k+1]
};

// Degreewise morphism commuting with the differentials exactly.
class ChainMap {
 public:
  ChainMap(Complex src, Complex tgt, int lo, std::vector<RepMap> comps);
  static ChainMap zero(const Complex& src, const Complex& tgt);
  static ChainMap identity(const Complex& x);

  const Complex& source() const { return src_; }
  const Complex& target() const { return tgt_; }
  RepMap component(int n) const;

  ChainMap operator+(const ChainMap& o) const;
  ChainMap operator-(const ChainMap& o) const;
  ChainMap operator*(const Rat& s) const;
  bool operator==(const ChainMap& o) const;
  bool is_zero_map() const;  // literally zero, not just null-homotopic

  ChainMap shift(int k) const;

 private:
  Complex src_, tgt_;
  int lo_ = 0;
  std::vector<RepMap> comps_;
};

ChainMap compose(const ChainMap& g, const ChainMap& f);

struct CohomologyData {
  Rep h;
  Rep cycles;
  RepMap cycles_incl;  // cycles -> X^j
  RepMap to_h;         // cycles -> h, surjective with kernel the boundaries
};
CohomologyData cohomology_data(const Complex& x, int j);
Rep cohomology(const Complex& x, int j);
// H^j(f); the induced map between the canonical cohomology models.
RepMap induced_cohomology_map(const ChainMap& f, int j);
bool is_quasi_iso(const ChainMap& f);
bool is_acyclic(const Complex& x);

struct ComplexWithMap {
  Complex cx;
  ChainMap map;
};

// Degreewise subobject (entries indexed from x.lo()); checks closure under d.
ComplexWithMap subcomplex(const Complex& x, const std::vector<SubRep>& subs);
ComplexWithMap quotient_complex(const Complex& x, const std::vector<SubRep>& subs);

// Canonical t-truncations: tau_le keeps ker d^i in degree i; tau_ge(i) is the
// quotient by tau_le(i-1).
ComplexWithMap tau_le(const Complex& x, int i);   // map: piece -> x
ComplexWithMap tau_ge(const Complex& x, int i);   // map: x -> piece
// Stupid (brutal) truncations by degree.
ComplexWithMap sigma_ge_degree(const Complex& x, int d);  // subcomplex, degrees >= d
ComplexWithMap sigma_le_degree(const Complex& x, int d);  // quotient, degrees <= d

struct ConeData {
  Complex cone;
  ChainMap incl;  // Y -> cone
  ChainMap proj;  // cone -> X[1]
};
ConeData cone(const ChainMap& f);

// Zero-differential complex with the given terms (missing degrees are zero).
Complex formal_complex(const QuiverPtr& q, const std::vector<std::pair<int, Rep>>& terms);

struct ComplexSum {
  Complex sum;
  std::vector<ChainMap> inject;
  std::vector<ChainMap> project;
};
ComplexSum direct_sum_complexes(const std::vector<Complex>& parts);

// Identity-matrix chain map between complexes with equal terms (used to
// relate value-equal complexes produced by different constructions).
ChainMap identity_chain(const Complex& a, const Complex& b);

Complex complex_forget(const Complex& x, const QuiverPtr& shadow);
ChainMap chain_map_forget(const ChainMap& f, const QuiverPtr& shadow);
Complex complex_at_vertex(const Complex& x, int v, const QuiverPtr& single);

}  // namespace weightforge
