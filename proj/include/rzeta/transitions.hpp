#pragma once
#include <cstdint>
#include <map>
#include <vector>

#include "rzeta/classify.hpp"
#include "rzeta/lattice.hpp"

namespace rzeta {

/// Counts of points w in F_q^dim(S) by rank of the subalgebra commutator
/// matrix of S.  Only even ranks occur.
struct RankCensus {
  int64_t q = 3;
  int dim = 0;
  std::map<int, int64_t> counts;
  int64_t total() const;
};

/// Exhaustive rank census over a bracket-closed subspace.  The basis is
/// re-arranged so that the derived subalgebra spans the leading coordinates,
/// which exposes the variables the matrix cannot contain; those contribute a
/// plain power of q.
RankCensus rank_census(const LieLattice& L, const Subspace& S, int workers = 1);

/// |L_{2k}| / |L_0|; NonDivisible if the division is not exact.
int64_t transition_ratio(const RankCensus& census, int rank2k);

/// Cross-section representative of a centralizer class (Sub subtypes get
/// their own representatives).
Sl4Element class_representative(ClassLabel c, int64_t q);
Sl4Element subtype_representative(SubType t, int64_t q);

/// For every y in the centralizer subspace of a: form the level-2 lift
/// a + p*y^T and tally the dimension of its shadow (the mod-p reduction of
/// its level-2 centralizer).  Aggregated by dimension this reproduces, for a
/// rank-exact representative, the rank-locus counts |L_2k| of the
/// centralizer's commutator matrix.
std::map<int, int64_t> direct_transition_census(const LieLattice& L, const Sl4Element& a,
                                                int workers = 1);
/// Level-1 experiment: classify a + y^T in sl4(F_q) directly.  For nilpotent
/// representatives this reproduces the transition rows (including the fine
/// dimension-7 split of the dimension-9 nilpotent class); for semisimple
/// representatives it does not, which is reported, not asserted.
std::map<Classification, int64_t> direct_transition_census_verbose(const LieLattice& L,
                                                                   const Sl4Element& a,
                                                                   int workers = 1);

struct FiberCensus {
  // per gl2-orbit type: the common fiber cardinality and the number of base
  // points (in F_q^4, i.e. including the central coordinate)
  int64_t central_fiber = 0, central_base = 0;
  int64_t nilpotent_fiber = 0, nilpotent_base = 0;
  int64_t split_fiber = 0, split_base = 0;
  int64_t nonsplit_fiber = 0, nonsplit_base = 0;
  bool fibers_constant = false;  // verified, not assumed
};

struct N211Analysis {
  int64_t q = 3;
  int64_t L4 = 0;
  FiberCensus fibers;
  bool ideal_match = false;   // eq-gens-rank-4 zero set == {rank <= 4}, pointwise
  bool matrix_match = false;  // computed commutator matrix equals the printed one
};

/// Exhaustive scan of the 9-variable commutator matrix of the dimension-9
/// nilpotent centralizer: |L_4|, the gl2 fiber census of the projection that
/// zeroes the first five coordinates, and the rank-4 radical-ideal check.
N211Analysis n211_rank4_analysis(int64_t q, int workers = 1);

/// |F_S| for a sequence of sl4 centralizer classes (decreasing d_c), by
/// direct enumeration: the first class is scanned member by member, and each
/// step counts lift directions into the next class (rank census of the
/// member's centralizer for dimension-determined targets; the level-1 sum
/// census for the fine dimension-7 split out of N211).  Cost-guarded; q = 3
/// intended.
int64_t f_set_enumerate_sl4(const std::vector<Classification>& seq, int64_t q, int workers = 1);

/// Expected transition value tau(from -> to) evaluated from Table jumps.
int64_t expected_transition(ClassLabel from, ClassLabel to, int64_t q);

}  // namespace rzeta
