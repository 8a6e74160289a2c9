#pragma once

#include <map>

#include "weightforge/weight.hpp"

namespace weightforge {

// Homological functor tags. THomology is H = (-)^{tau=0} with values in the
// module category; TotalDim composes with the exact forgetful functor to
// (vertex-)graded vector spaces; DimAtVertex keeps a single vertex. All three
// are implemented by transporting complexes to a shadow quiver, so one code
// path computes every spectral sequence.
struct HomFunctor {
  enum class Tag { THomology, TotalDim, DimAtVertex };
  Tag tag = Tag::THomology;
  int vertex = -1;

  static HomFunctor t_homology() { return {Tag::THomology, -1}; }
  static HomFunctor total_dim() { return {Tag::TotalDim, -1}; }
  static HomFunctor dim_at_vertex(int v) { return {Tag::DimAtVertex, v}; }
  std::string name() const;
};

// Weight Postnikov tower: nested subcomplexes
//   0 = steps[0] <= steps[1] <= ... <= steps.back() = top,
// steps[k] being a choice of w_{<= wlo-1+k}(x); successive quotients are
// pure. The zigzag (common, to_top, to_x) identifies the top with x.
struct WeightTower {
  Complex x;
  WeightMode mode = WeightMode::Transversal;
  int wlo = 0, whi = -1;  // pure pieces carry weights wlo..whi
  std::vector<Complex> steps;
  std::vector<ChainMap> incl;  // incl[k] : steps[k] -> steps[k+1]
  Complex common;
  ChainMap to_top, to_x;  // quasi-isomorphisms

  const Complex& top() const { return steps.back(); }
  int step_count() const { return static_cast<int>(steps.size()); }
  // Composite inclusion steps[k] -> top.
  ChainMap incl_to_top(int k) const;
};

WeightTower build_tower(const Complex& x, WeightMode mode);
// An independent choice: interior steps twisted by a degreewise automorphism
// (Transversal), or the whole object padded by a contractible projective
// summand (StupidOnProj).
WeightTower build_tower_randomized(const Complex& x, WeightMode mode, Rng& rng);

struct PageEntry {
  int p = 0, q = 0;
  Rep value;
  RepMap d;  // d_r out of this spot (between materialized page objects)
};

struct Page {
  int r = 1;
  std::vector<PageEntry> entries;  // sorted by (p, q); zero spots omitted
  bool differentials_vanish = true;
};

// Exact-couple-generated weight spectral sequence with pages E_1..E_stable
// and the induced filtration on every H_m.
class SpecSeq {
 public:
  SpecSeq(HomFunctor functor, WeightTower tower);

  const HomFunctor& functor() const { return functor_; }
  const WeightTower& tower() const { return tower_; }
  const QuiverPtr& value_quiver() const { return value_quiver_; }
  const std::vector<Page>& pages() const { return pages_; }
  int stable_r() const { return stable_r_; }
  bool degenerates_at_e2() const { return degenerate_; }

  // Canonical model of H_m(x) in the value category, and the E_inf /
  // weight filtration subobjects inside it (increasing in k).
  const Rep& h_of_x(int m) const;
  int h_lo() const { return nlo_; }
  int h_hi() const { return nhi_; }
  // W_{<=k} H_m as a subobject of h_of_x(m).
  SubRep weight_filtration_step(int m, int k) const;
  int e_inf_dim(int p, int q) const;
  int e_inf_total_dim(int m) const;

 private:
  HomFunctor functor_;
  WeightTower tower_;
  QuiverPtr value_quiver_;
  int nlo_ = 0, nhi_ = -1;
  std::vector<Page> pages_;
  int stable_r_ = 2;
  bool degenerate_ = true;
  std::map<int, Rep> hx_;
  std::map<std::pair<int, int>, SubRep> filt_;          // (m, k) -> subobject
  std::map<std::pair<int, int>, int> e_inf_dims_;       // (p, q)
};

SpecSeq run_ss(const HomFunctor& h, const Complex& x, WeightMode mode);
bool degenerates_at_e2(const HomFunctor& h, const Complex& x, WeightMode mode);

// W_i H(x) = Im(H(w_{<=i} x) -> H(x)) as a subobject of the canonical model
// of H^0; independent of the tower used to compute it.
SubRep weight_filtration_homology(const HomFunctor& h, const Complex& x, int i, WeightMode mode);
SubRep weight_filtration_homology_on(const HomFunctor& h, const WeightTower& tower, int i);
Rep h_value(const HomFunctor& h, const Complex& x, int m);
// Induced map H^0(F f) between the canonical models.
RepMap h_induced(const HomFunctor& h, const ChainMap& f);

// Strict compatibility of H(f) with the weight filtration at level i:
// W_i H(x) surjects onto W_i H(y) /\ im H(f). Requires degeneration of both
// spectral sequences (throws std::domain_error otherwise).
bool strictness_check(const HomFunctor& h, const ChainMap& f, int i, WeightMode mode);

struct HeartFiltration {
  Rep object;
  std::vector<std::pair<int, SubRep>> steps;  // increasing, separated, exhaustive
};
HeartFiltration heart_filtration_from_degeneration(const Rep& m, WeightMode mode);

struct GrWitness {
  Rep gr;        // W_{<=i} m / W_{<=i-1} m
  Rep gr_dual;   // W_{<=i}(m / W_{<=i-1} m)
  RepMap iso;    // the canonical map gr -> gr_dual, an isomorphism
};
GrWitness gr_heart(const Rep& m, int i);

struct K0Class {
  std::vector<long long> coords;  // indexed by the simples S_v
  bool operator==(const K0Class& o) const { return coords == o.coords; }
  K0Class operator+(const K0Class& o) const;
  K0Class operator-() const;
};
K0Class k0_of_rep(const Rep& m);
K0Class k0_class(const Complex& x);
bool k0_check_triangle(const Triangle& t);

// M in A_{<=i} iff H^0 of (the canonical) w_{<=i} M surjects onto M.
bool epimorphism_criterion(const Rep& m, int i, WeightMode mode);

}  // namespace weightforge
