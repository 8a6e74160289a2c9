#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "weightforge/derived.hpp"

namespace weightforge {

// Deterministic generator (splitmix64) so reports are reproducible across
// standard libraries and platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}
  uint64_t next();
  int range(int lo, int hi);  // inclusive
  Rat rat_small();            // uniform in {-2,...,2}
  bool coin() { return range(0, 1) == 1; }

 private:
  uint64_t state_;
};

// Acyclic by construction: arrows only go from higher to lower weight when
// admissible, and along a fixed vertex order otherwise.
QuiverPtr random_admissible_quiver(Rng& rng, int max_vertices = 6);
QuiverPtr random_acyclic_quiver(Rng& rng, int max_vertices = 6);

Rep random_rep(Rng& rng, const QuiverPtr& q, int max_dim = 4);
// Samples the solution space of the intertwining equations.
RepMap random_rep_map(Rng& rng, const Rep& m, const Rep& n);
// Formal part plus contractible summands, conjugated by a random
// automorphism; every bounded complex is isomorphic to one of these.
Complex random_complex(Rng& rng, const QuiverPtr& q, int max_amplitude = 4, int max_dim = 3);
Complex random_projective_complex(Rng& rng, const QuiverPtr& q, int max_amplitude = 4,
                                  int max_copies = 2);
ChainMap random_chain_map(Rng& rng, const Complex& x, const Complex& y);
// A split idempotent twisted by an invertible class (id + square-zero part).
DClass random_split_idempotent(Rng& rng, const Complex& x);

struct InvariantCounter {
  int passed = 0;
  int failed = 0;
};

struct SelftestReport {
  uint64_t seed = 0;
  int cases = 0;
  std::map<std::string, InvariantCounter> invariants;  // ordered for determinism
  bool all_passed() const;
};

SelftestReport run_selftest(uint64_t seed, int cases);

}  // namespace weightforge
