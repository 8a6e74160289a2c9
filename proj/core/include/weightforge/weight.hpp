#pragma once

#include "weightforge/derived.hpp"
#include "weightforge/selftest.hpp"

namespace weightforge {

// Two shipped weight structures on D^b(rep Q):
//   Transversal  - from the weight filtration of an admissible quiver; pure
//                  weight-i objects are A_i[-i] (slice modules shifted).
//   StupidOnProj - the stupid filtration on bounded complexes of
//                  projectives; a complex concentrated in degree d is pure
//                  of weight -d, so C^{w<=i} is "supported in degrees >= -i".
enum class WeightMode { Transversal, StupidOnProj };

enum class Side { Le, Ge };

bool all_terms_projective(const Complex& x);
// Throws when x is not a legal input for the mode.
void require_mode_input(const Complex& x, WeightMode mode);

// Membership in C^{w<=i} / C^{w>=i}. Shifts obey
// membership_w(x[k], i) == membership_w(x, i-k)  (C^{w<=i} = C^{w<=0}[i]).
bool membership_w(const Complex& x, int i, Side side, WeightMode mode);

struct WeightRange {
  int lo = 0;
  int hi = -1;  // lo > hi iff x is zero
};
WeightRange weight_range(const Complex& x, WeightMode mode);

// Triangle w_{<=i}x -> x -> w_{>=i+1}x.
Triangle weight_decompose(const Complex& x, int i, WeightMode mode);

// Weight decomposition of a heart object with all three terms modules.
Triangle nice_decompose(const Rep& m, int i);

// Condition (v'): the image of H^0 of any choice of w_{<=i}x inside x
// extends to a nice decomposition.
bool image_condition_check(const Complex& x, int i, Rng& rng);

struct HwSplitting {
  std::vector<std::pair<int, Complex>> pieces;  // (i, object of A_i[-i])
  DClass to_x, from_x;                          // mutually inverse witnesses
};
// Splits an object of the heart C^{w=0} into its pure slices.
HwSplitting split_hw_object(const Complex& x, WeightMode mode);

struct AdjointPiece {
  Complex object;
  DClass unit_or_counit;
};
// Right adjoint b_i to the inclusion of <A_s : s <= i>; counit b_i x -> x.
AdjointPiece b_adjoint(const Complex& x, int i);
// Left adjoint a_{i,j}; unit x -> a_{i,j} x. Requires x in C_{<= i}.
AdjointPiece a_adjoint(const Complex& x, int i, int j);

struct OrthEntry {
  std::string src, tgt;  // vertex ids of the two simples
  int wi = 0, wj = 0, s = 0;
  int dim = 0;
  bool allowed = false;  // nonzero permitted at (i == j, s == 0) or 1 <= s <= i-j
};

struct TransversalityReport {
  bool acyclic = false;
  bool admissible = false;
  std::vector<std::string> quiver_errors;
  std::vector<OrthEntry> table;
  bool strong_semi_orthogonality = false;
  std::vector<std::pair<int, SliceReport>> slices;
  bool all_slices_semisimple = false;
  bool generating = false;
  std::string generation_note;
  int nice_cases = 0;
  bool nice_decompositions_sampled = false;
  int image_cases = 0;
  bool image_condition_sampled = false;
  bool constructive_checks_run = false;  // false when not admissible
  bool overall = false;
};

TransversalityReport check_transversality(const QuiverPtr& q, uint64_t seed, int sample_budget);

struct TriangleMorphismParts {
  DClass h;  // between the w_{<=i} pieces
  DClass k;  // between the w_{>=i+1} pieces
};
// Completes g to a morphism of the two chosen weight decompositions.
TriangleMorphismParts extend_to_decompositions(const DClass& g, const Triangle& tx,
                                               const Triangle& ty);

}  // namespace weightforge
