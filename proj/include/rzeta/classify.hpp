#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rzeta/lattice.hpp"
#include "rzeta/ratfunc.hpp"

namespace rzeta {

enum class ClassLabel { Zero, Reg, Sub, S22Diag, S22Non, N22, D211, N211 };
enum class SubType { None, N31, T31TwoEV, T31ThreeEV, Diag31, NonJor31 };

std::string to_string(ClassLabel c);
std::string to_string(SubType s);
ClassLabel class_label_from_string(const std::string& s);

/// Centralizer data attached to a label: dimension and derived dimension.
int class_dim(ClassLabel c);
int class_derived_dim(ClassLabel c);

struct Classification {
  ClassLabel label = ClassLabel::Zero;
  SubType subtype = SubType::None;
  bool operator==(const Classification&) const = default;
  bool operator<(const Classification& o) const {
    return std::pair(label, subtype) < std::pair(o.label, o.subtype);
  }
};

/// Monic polynomial of degree <= 4 over F_p.
struct PolyFq {
  int64_t p = 3;
  int deg = 0;
  std::array<int64_t, 5> c{};  // c[k] = coefficient of X^k, c[deg] = 1

  bool operator==(const PolyFq&) const = default;
  int64_t eval(int64_t x) const;
};

Sl4Element cross_section_31(int64_t alpha, int64_t beta, int64_t p);
Sl4Element cross_section_22(int64_t alpha, int64_t p);
Sl4Element cross_section_211(int64_t alpha, int64_t p);

PolyFq char_poly(const Sl4Element& x);  // division-free Leibniz expansion
PolyFq min_poly(const Sl4Element& x);   // least monic annihilator

/// Exact factorization into monic irreducibles by exhaustive trial division
/// over degrees 1 and 2 (deg f <= 4, p <= 11 keeps this trivial).
std::vector<std::pair<PolyFq, int>> factor_small(const PolyFq& f);

/// Conjugation-invariant classification from characteristic-polynomial data
/// and ranks of evaluated factors.
Classification classify(const Sl4Element& x);

struct CensusRow {
  Classification cls;
  int64_t count = 0;
};

struct CensusResult {
  int64_t q = 3;
  bool exhaustive = true;
  int64_t sample_size = 0;
  std::map<Classification, int64_t> counts;
};

/// Exhaustive census of all q^15 - 1 nonzero elements (q = 3 only), or a
/// seeded uniform sample.  Deterministic for any worker count.
CensusResult census(int64_t q, bool exhaustive, int workers = 1,
                    int64_t sample_size = 0, uint64_t seed = 0);

struct ClassInfo {
  ClassLabel label;
  int d_c;
  int d_prime;
  LaurentPoly cardinality;
  std::string cardinality_display;
  std::map<ClassLabel, LaurentPoly> transitions;
};

struct ClassTable {
  std::vector<ClassInfo> classes;  // Reg, Sub, S22Diag, S22Non, N22, D211, N211
  std::map<SubType, LaurentPoly> subtype_cardinalities;
  std::map<SubType, std::string> subtype_displays;

  const ClassInfo& info(ClassLabel c) const;
  const LaurentPoly& transition(ClassLabel from, ClassLabel to) const;  // zero if unlisted
};

/// The fixed table data (Table card / Table jumps), loaded from the data dir.
const ClassTable& class_table();

/// Census CSV: class,subtype,count,polynomial,polynomial_at_q,match.
std::string census_csv(const CensusResult& res);
/// True iff every exhaustive count matches its table polynomial at q.
bool census_matches_table(const CensusResult& res);

}  // namespace rzeta
