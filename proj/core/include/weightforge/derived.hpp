#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "weightforge/complex.hpp"

namespace weightforge {

// Formality-shaped projective replacement: P^n = p0(H^n) (+) p1(H^{n+1})
// built from the minimal resolutions of the cohomology modules, together
// with a genuine quasi-isomorphism into the original complex. Deterministic,
// so equal complexes (even equal cohomology) share the same replacement.
struct ProjReplacement {
  Complex p;
  ChainMap q;  // p -> x, quasi-isomorphism
  int rlo = 0, rhi = -1;          // window of (possibly) nonzero cohomology
  std::vector<Resolution> res;    // res[j - rlo] resolves H^j(x)
  std::vector<RepSum> sums;       // block structure of P^n for n in [rlo-1, rhi]
};

std::shared_ptr<const ProjReplacement> proj_replace(const Complex& x);

// A degree -1 family s^n : P^n -> Q^{n-1} of morphisms in the module category.
struct Homotopy {
  int lo = 0;
  std::vector<RepMap> comps;
};

std::vector<ChainMap> chain_map_basis(const Complex& p, const Complex& q);
ChainMap homotopy_value(const Complex& p, const Complex& q, const Homotopy& s);  // d s + s d
// Finds s with d s + s d = f (exact witness that f is null-homotopic).
std::optional<Homotopy> solve_homotopy(const ChainMap& f);

// Solves post o h ~ rhs for a chain map h (existence up to homotopy).
std::optional<ChainMap> solve_post_compose(const ChainMap& post, const ChainMap& rhs);
// Solves h o pre ~ rhs.
std::optional<ChainMap> solve_pre_compose(const ChainMap& pre, const ChainMap& rhs);
// Lifts f through a quasi-isomorphism q with projective bounded source of f.
ChainMap lift_through_qis(const ChainMap& f, const ChainMap& qis);
// Module-level comparison lift: l with eps o l = phi (eps surjective,
// phi out of a projective).
RepMap lift_through_surjection(const RepMap& phi, const RepMap& eps);
// Exact two-sided homotopy inverse, when it exists.
std::optional<ChainMap> find_homotopy_inverse(const ChainMap& h);

// The group C(X, Y[n]) of morphisms in the derived category: chain maps
// between the projective replacements modulo null-homotopic ones.
class HomSpace {
 public:
  HomSpace(Complex x, Complex y, int n);

  const Complex& source() const { return x_; }
  const Complex& target() const { return y_; }
  int shift() const { return n_; }
  int dim() const { return static_cast<int>(class_basis_.size()); }
  const std::vector<ChainMap>& class_basis() const { return class_basis_; }
  const Complex& px() const { return px_; }
  const Complex& py_shifted() const { return py_shifted_; }

  // Class coordinates of a chain map px -> py[n].
  RatMatrix coords_of(const ChainMap& f) const;
  ChainMap rep_from_coords(const RatMatrix& coords) const;

 private:
  Complex x_, y_;
  int n_;
  Complex px_, py_shifted_;
  std::vector<ChainMap> chain_basis_;
  RatMatrix chain_cols_;
  RatMatrix class_proj_;  // chain coords -> class coords
  std::vector<ChainMap> class_basis_;
};

HomSpace hom_derived(const Complex& x, const Complex& y, int n);
int hom_derived_dim(const Complex& x, const Complex& y, int n);

// A morphism X -> Y[n] in the derived category, carried by a chain-map
// representative between the canonical projective replacements.
struct DClass {
  Complex src, tgt;
  int n = 0;
  ChainMap rep;  // proj_replace(src)->p  ->  proj_replace(tgt)->p.shift(n)
};

DClass zero_class(const Complex& x, const Complex& y, int n);
DClass identity_class(const Complex& x);
DClass class_of_chain(const ChainMap& f);
// f : src -> tgt_base[n] as a genuine chain map whose target is the shifted
// complex; records the class against the unshifted base.
DClass class_of_chain_into_shift(const ChainMap& f, const Complex& tgt_base, int n);
DClass compose(const DClass& g, const DClass& f);
DClass class_add(const DClass& a, const DClass& b);
DClass class_scale(const DClass& a, const Rat& s);
DClass shift_class(const DClass& f, int k);
bool class_is_zero(const DClass& f);
bool class_equal(const DClass& a, const DClass& b);
// H^j(f) : H^j(src) -> H^{j+n}(tgt).
RepMap class_cohomology(const DClass& f, int j);

struct FormalitySplit {
  std::vector<std::pair<int, Rep>> pieces;  // (degree j, H^j(x)) for nonzero H^j
  Complex formal;                           // zero-differential model
  DClass to_x;                              // formal -> x
  DClass from_x;                            // x -> formal
};
FormalitySplit formality_split(const Complex& x);

// Canonical inclusion/projection classes of the degree-j cohomology block
// H^j(x)[-j] under the formality splitting.
DClass block_inject(const Complex& x, int j);
DClass block_project(const Complex& x, int j);

std::optional<std::pair<DClass, DClass>> find_complex_iso(const Complex& x, const Complex& y);
bool complexes_isomorphic(const Complex& x, const Complex& y);

struct DerivedSplit {
  Complex summand;
  DClass inclusion;   // summand -> x
  DClass projection;  // x -> summand
};
// Splits an idempotent up to homotopy by the weight-block recursion:
// split the top block, split the rest, conjugate the off-diagonal part away
// with h = id - d o s1 + s2 o d.
DerivedSplit split_idempotent_derived(const Complex& x, const DClass& e);

struct Triangle {
  Complex a, b, c;
  DClass u;  // a -> b
  DClass v;  // b -> c
  DClass w;  // c -> a[1]
};

Triangle cone_triangle(const ChainMap& f);
// Checks the triangle is isomorphic to the mapping-cone triangle of u.
bool validate_triangle(const Triangle& t);

// Matrix of f |-> g o f between class bases (for hom-LES bookkeeping).
RatMatrix class_compose_matrix(const DClass& g, const HomSpace& from, const HomSpace& to);
// Matrix of b |-> b o f; from = C(Y, Z[n]), f : X -> Y[m], to = C(X, Z[n+m]).
RatMatrix class_precompose_matrix(const DClass& f, const HomSpace& from, const HomSpace& to);

// Relabels the cone of u : A -> X by an isomorphic complex c, returning the
// triangle (A, X, c) with transported maps.
Triangle triangle_with_cone_object(const DClass& u, const Complex& c);

}  // namespace weightforge
