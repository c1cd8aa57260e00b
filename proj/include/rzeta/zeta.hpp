#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rzeta/classify.hpp"
#include "rzeta/lattice.hpp"
#include "rzeta/ratfunc.hpp"

namespace rzeta {

/// Kernel-class data feeding the Poincare-series assembly: per class the
/// pair (d_c, d'_c), a cardinality polynomial in q and transition polynomials
/// to lower classes.  Unlisted transitions are zero.
struct KernelClass {
  std::string label;
  int d_c = 0;
  int d_prime = 0;
  LaurentPoly cardinality;
  std::map<std::string, LaurentPoly> transitions;
};

struct KernelClassData {
  int d = 0;
  int h = 0;
  std::vector<KernelClass> classes;
};

/// The sl4 data backed by Table card / Table jumps.
KernelClassData sl4_kernel_class_data();

/// Sum over all subsets I of [h-1]_0 and all I-sequences with nonempty
/// classes of |C_S| q^-(d-d'_last) prod_c X_c/(1-X_c), X_c = q^(d-d'_c)
/// t^((d-d_c)/2); the empty sequence contributes 1.
BivariateRational assemble_poincare(const KernelClassData& data);

/// q^15m * P(s) with t -> q^-2 t (the shift s -> s+2).
BivariateRational sl4_zeta(int m);

struct ZetaVerdicts {
  bool theorem_b_match = false;
  bool f1_eq_g1 = false;
  bool zeta_at_minus2_zero = false;
  std::pair<int, int> reciprocity_f{0, 0};
  std::pair<int, int> reciprocity_g{0, 0};
  bool reciprocity_ok = false;
  Rational abscissa_poincare;
  Rational abscissa_group;
  bool all() const {
    return theorem_b_match && f1_eq_g1 && zeta_at_minus2_zero && reciprocity_ok;
  }
};

/// Runs every Theorem B self-check against the transcribed reference data.
ZetaVerdicts theorem_b_verdicts();

enum class AbscissaMode { Poincare, Group };

struct AbscissaResult {
  Rational value;
  std::string attaining_class;
};

AbscissaResult abscissa(const KernelClassData& data, AbscissaMode mode);

// ---------------------------------------------------------------------------
// Brute-force Poincare oracles

/// Exact |N_{I,r}|: primitive w mod p^N whose divisor profile matches the
/// pattern built from I and the multiplicities mu_j = i_{j+1} - i_j.
int64_t bruteforce_counts(const LieLattice& L, int64_t p, const std::vector<int>& I,
                          const std::vector<int>& rvec, int workers = 1);

/// Divisor-profile census over all primitive w mod p^N in one scan.
std::map<std::vector<int>, int64_t> profile_census(const LieLattice& L, int64_t p, int N,
                                                   int workers = 1);

/// Kernel classes of L over F_p computed on the fly: per class the pair
/// (d_c, d'_c), the exact member count, and per-point class ids.
struct NumericClassData {
  int d = 0, h = 0;
  int64_t p = 3;
  std::vector<std::pair<int, int>> class_dims;  // (d_c, d_prime), d_c descending
  std::vector<int64_t> class_sizes;
  std::vector<int8_t> point_class;  // indexed by coordinate code; -1 for w = 0
};

NumericClassData numeric_kernel_classes(const LieLattice& L, int64_t p);

/// Exact |F_S| for a sequence of class ids (decreasing d_c) by direct
/// enumeration per Def-cal-F with the operational membership orientation.
int64_t f_set_count(const LieLattice& L, const NumericClassData& data,
                    const std::vector<int>& seq);

/// Predicted |N_{I,r}| from Theorem C given exact |F_S| values.
int64_t predicted_count(const LieLattice& L, const NumericClassData& data,
                        const std::vector<int>& I, const std::vector<int>& rvec);

// ---------------------------------------------------------------------------
// Rank-preserving lifts (Cor. n_lifts machinery)

/// True iff every profile entry is 0 or r.
bool profile_clamped(const DivisorProfile& prof, int r);

/// rk of the isolator of [V, V] at working precision, V = module_kernel of
/// the evaluated commutator matrix at level r.
int derived_isolator_rank(const LieLattice& L, int64_t p, int r,
                          const std::vector<int64_t>& w);

/// Exact count of rank-preserving lifts of w (level r) to level r+1 by full
/// enumeration of the p^d lifts.
int64_t rank_preserving_lift_count(const LieLattice& L, int64_t p, int r,
                                   const std::vector<int64_t>& w, int workers = 1);

/// Same count via the matrix pencil: congruence-reduce R at a lift of w, read
/// the trailing block of S^t R(z) S as a linear system in z mod p.  Exact for
/// clamped w; used where the p^d enumeration is out of reach.
int64_t rank_preserving_lift_count_pencil(const LieLattice& L, int64_t p, int r,
                                          const std::vector<int64_t>& w);

/// Series expansion coefficients of the zeta function (m = 1) up to t^deg.
std::vector<LaurentPoly> zeta_series(int deg);

}  // namespace rzeta
