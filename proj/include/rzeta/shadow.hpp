#pragma once
#include <array>
#include <cstdint>
#include <vector>

#include "rzeta/lattice.hpp"

namespace rzeta {

/// Shadow of a level-r element: the mod-p reduction of its level-r
/// centralizer module, as a canonical subspace of coordinates.
struct ShadowRecord {
  Subspace shadow;
  int dim = 0;
};

ShadowRecord lie_shadow(const LieLattice& L, const Sl4Element& a);

struct SpLiftScan {
  int64_t count = 0;
  int64_t dim_matches = 0;  // lifts passing the cheap dimension pre-filter
  std::vector<std::array<int64_t, 16>> witnesses;  // first few, deterministic
};

/// Exact scan of all p^15 lifts of a to level r+1, counting those whose
/// shadow equals the shadow of a.  The divisor-count pre-filter rejects a
/// lift as soon as its shadow dimension drops.
SpLiftScan shadow_preserving_lifts(const LieLattice& L, const Sl4Element& a, int workers = 1,
                                   int max_witnesses = 3);

/// e12 + e34 + 3(e13 + e24) at the given level (p = 3).
Sl4Element builtin_b(int level);
/// The non-lifting example matrix over Z/27.
Sl4Element builtin_z();

struct TheoremGReport {
  // centralizer of beta(b) at level 6
  int free_generators = 0;              // expect 5
  std::vector<int> derived_valuations;  // nonzero invariant factors; expect 0, 0, 1
  // shadow-preserving lifts of red_3(b)
  int shadow_dim = 0;                   // expect 5
  int64_t sp_count = 0;                 // expect 3^13
  // the Newton-constructed level-5 family over the 12 free coordinates
  int64_t constructed = 0;              // expect 3^12
  bool constructed_distinct = false;    // pairwise distinct mod 3^4
  int64_t sp_admitting = 0;             // members whose level-5 truncation is an sp lift
  int64_t dead_end_count = 0;           // sp_count - sp_admitting
  // the example matrix z
  int64_t z_sp_count = 0;               // expect 0
  bool ok() const;
};

/// The full Part-III experiment at p = 3.  full_scans enables the two 3^15
/// lift scans; the Newton family is always constructed.
TheoremGReport theorem_g_experiment(int workers = 1, bool full_scans = true);

}  // namespace rzeta
