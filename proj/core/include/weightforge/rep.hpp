#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weightforge/matrix.hpp"
#include "weightforge/quiver.hpp"

namespace weightforge {

// Finite-dimensional representation of a weighted quiver: a vector space per
// vertex and a matrix per arrow (rows = dim target, cols = dim source).
class Rep {
 public:
  Rep(QuiverPtr q, std::vector<int> dims, std::vector<RatMatrix> arrows);
  static Rep zero(QuiverPtr q);

  const QuiverPtr& quiver() const { return q_; }
  int dim(int v) const { return dims_[v]; }
  const std::vector<int>& dims() const { return dims_; }
  const RatMatrix& arrow_matrix(int a) const { return arr_[a]; }
  int total_dim() const;
  bool is_zero() const { return total_dim() == 0; }

  bool operator==(const Rep& o) const;
  bool operator!=(const Rep& o) const { return !(*this == o); }

  std::string describe() const;

 private:
  QuiverPtr q_;
  std::vector<int> dims_;
  std::vector<RatMatrix> arr_;
};

// A morphism of representations; the intertwining relations
// f_tgt(a) * M_a = N_a * f_src(a) hold exactly (validated on construction).
class RepMap {
 public:
  RepMap(Rep src, Rep tgt, std::vector<RatMatrix> components);
  static RepMap zero(const Rep& src, const Rep& tgt);
  static RepMap identity(const Rep& m);

  const Rep& source() const { return src_; }
  const Rep& target() const { return tgt_; }
  const RatMatrix& vertex(int v) const { return comp_[v]; }

  RepMap operator+(const RepMap& o) const;
  RepMap operator-(const RepMap& o) const;
  RepMap operator*(const Rat& s) const;
  bool operator==(const RepMap& o) const;
  bool is_zero() const;
  bool is_identity() const;
  bool is_injective() const;
  bool is_surjective() const;

  std::string describe() const;

 private:
  Rep src_, tgt_;
  std::vector<RatMatrix> comp_;
};

// g after f.
RepMap compose(const RepMap& g, const RepMap& f);

Rep simple(const QuiverPtr& q, int v);
// Indecomposable projective at v: basis at w = directed paths v ~> w, arrows
// acting by path concatenation.
Rep projective(const QuiverPtr& q, int v);

struct RepSum {
  Rep sum;
  std::vector<RepMap> inject;
  std::vector<RepMap> project;
};
RepSum direct_sum(const std::vector<Rep>& parts);

struct RepWithMap {
  Rep rep;
  RepMap map;  // inclusion into (or projection from) the ambient object
};

RepWithMap kernel(const RepMap& f);    // map: K -> src
RepWithMap cokernel(const RepMap& f);  // map: tgt -> C

struct ImageData {
  Rep image;
  RepMap inclusion;     // image -> tgt
  RepMap corestriction;  // src -> image
};
ImageData image(const RepMap& f);

std::vector<RepMap> hom_basis(const Rep& m, const Rep& n);
int hom_dim(const Rep& m, const Rep& n);

// Subobject of a fixed representation, stored as one subspace per vertex,
// closed under the arrow action.
struct SubRep {
  std::vector<Subspace> spaces;

  int total_dim() const;
};
SubRep sub_from_map(const RepMap& f);        // image of f as a subobject of target
SubRep kernel_sub(const RepMap& f);          // kernel as a subobject of source
SubRep full_sub(const Rep& m);
SubRep zero_sub(const Rep& m);
SubRep sub_sum(const SubRep& a, const SubRep& b);
SubRep sub_intersect(const SubRep& a, const SubRep& b);
bool sub_equal(const SubRep& a, const SubRep& b);
bool sub_contains(const SubRep& outer, const SubRep& inner);
// Checks arrow-closure and materializes the subobject with its inclusion.
RepWithMap sub_to_rep(const Rep& ambient, const SubRep& s);
RepWithMap quotient_by(const Rep& ambient, const SubRep& s);  // map: ambient -> quotient
SubRep map_sub(const RepMap& f, const SubRep& s);             // image of a subobject
SubRep preimage_sub(const RepMap& f, const SubRep& s);

// Minimal projective resolution 0 -> p1 -> p0 -> m -> 0 (path algebras of
// acyclic quivers are hereditary, so length 1 always suffices).
struct Resolution {
  Rep p1, p0;
  RepMap d;    // p1 -> p0, injective
  RepMap eps;  // p0 -> m, surjective
};
Resolution minimal_resolution(const Rep& m);
bool is_projective(const Rep& m);

struct Ext1 {
  int dim = 0;
  Resolution res;               // resolution of the source argument
  std::vector<RepMap> classes;  // representatives p1 -> n of a basis of Ext^1
};
Ext1 ext1(const Rep& m, const Rep& n);

// Euler form <dim m, dim n>; equals dim Hom - dim Ext^1 for any two reps.
long long euler_form(const Rep& m, const Rep& n);

// W_{<= i}: the subrepresentation supported on vertices of weight <= i.
// Requires an admissible quiver (otherwise the span need not be a subobject).
RepWithMap w_le_module(const Rep& m, int i);
RepWithMap w_ge_quotient(const Rep& m, int i);  // m / W_{<= i-1} m
Rep gr_module(const Rep& m, int i);
// Restriction of a map to the weight-<= i subrepresentations.
RepMap w_le_restrict(const RepMap& f, int i);

bool in_weight_slice(const Rep& m, int i);

struct IdempotentSplit {
  Rep summand;
  RepMap inclusion;
  RepMap projection;
};
IdempotentSplit split_idempotent_module(const Rep& m, const RepMap& e);

struct SliceReport {
  bool semisimple = true;
  std::string witness;  // offending arrow or nonzero Ext class, when not
};
SliceReport is_semisimple_slice(const QuiverPtr& q, int i);

// Searches for mutually inverse intertwiners. The witness returned is exact;
// only the search is randomized (deterministically seeded).
std::optional<std::pair<RepMap, RepMap>> find_module_iso(const Rep& m, const Rep& n);
bool modules_isomorphic(const Rep& m, const Rep& n);

// Forget the arrow action (onto the arrowless shadow quiver), or keep a
// single vertex. These are the exact functors used by spectral-sequence
// value categories.
Rep rep_forget(const Rep& m, const QuiverPtr& shadow);
RepMap map_forget(const RepMap& f, const QuiverPtr& shadow);
Rep rep_at_vertex(const Rep& m, int v, const QuiverPtr& single);
RepMap map_at_vertex(const RepMap& f, int v, const QuiverPtr& single);

}  // namespace weightforge
