#include "rzeta/transitions.hpp"

#include <cmath>

#include "rzeta/parallel.hpp"

namespace rzeta {

int64_t RankCensus::total() const {
  int64_t t = 0;
  for (auto& [r, c] : counts) t += c;
  return t;
}

namespace {

// basis of S with the derived subalgebra spanning the leading rows; in these
// coordinates the commutator matrix only involves the first d' variables
FpMatrix derived_adapted_basis(const LieLattice& L, const Subspace& S, int* derived_dim_out) {
  const int k = S.dim();
  const int64_t p = S.p;
  FpMatrix br(p, k * (k - 1) / 2, S.ambient);
  int row = 0;
  std::vector<int64_t> x(S.ambient), y(S.ambient);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      for (int t = 0; t < S.ambient; ++t) { x[t] = S.basis.at(a, t); y[t] = S.basis.at(b, t); }
      auto z = L.bracket(x, y);
      std::vector<int32_t> v(S.ambient);
      for (int t = 0; t < S.ambient; ++t) {
        int64_t c = z[t] % p;
        v[t] = int32_t(c < 0 ? c + p : c);
      }
      if (!S.contains(v)) throw NotSubalgebra();
      for (int t = 0; t < S.ambient; ++t) br.at(row, t) = v[t];
      ++row;
    }
  Subspace derived = span_rows(br);
  *derived_dim_out = derived.dim();
  // extend the derived basis to a basis of S by greedy rank extension
  FpMatrix rows(p, k, S.ambient);
  for (int i = 0; i < derived.dim(); ++i)
    for (int t = 0; t < S.ambient; ++t) rows.at(i, t) = derived.basis.at(i, t);
  int have = derived.dim();
  for (int i = 0; i < k && have < k; ++i) {
    for (int t = 0; t < S.ambient; ++t) rows.at(have, t) = S.basis.at(i, t);
    FpMatrix probe(p, have + 1, S.ambient);
    for (int a = 0; a <= have; ++a)
      for (int t = 0; t < S.ambient; ++t) probe.at(a, t) = rows.at(a, t);
    if (fp_rank(probe) == have + 1) ++have;
  }
  if (have != k) throw Error("basis extension failed");
  return rows;
}

}  // namespace

RankCensus rank_census(const LieLattice& L, const Subspace& S, int workers) {
  const int64_t q = S.p;
  int dprime = 0;
  FpMatrix basis = derived_adapted_basis(L, S, &dprime);
  auto R = subalgebra_commutator_matrix(L, basis);
  const int k = S.dim();
  // variables beyond the derived block cannot appear
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int h = dprime; h < k; ++h)
        if (R.at(i, j, h) != 0) throw Error("derived-adapted basis: unexpected variable");
  if (std::pow(double(q), dprime) > 6.5e7) throw TooLarge("rank census refused");
  const int64_t scans = ipow(q, dprime);
  const int64_t mult = ipow(q, k - dprime);

  // per-variable evaluated matrices over F_q
  std::vector<FpMatrix> mats;
  for (int v = 0; v < dprime; ++v) {
    std::vector<int32_t> e(k, 0);
    e[v] = 1;
    mats.push_back(evaluate_fp(R, e, q));
  }
  using Counts = std::map<int, int64_t>;
  auto counts = parallel_reduce<Counts>(
      scans, workers, {},
      [&](int64_t lo, int64_t hi, Counts& local) {
        std::vector<int32_t> w(dprime, 0);
        FpMatrix M(q, k, k);
        FpMatrix scratch(q, k, k);
        int64_t code = lo;
        for (int i = 0; i < dprime; ++i) { w[i] = int32_t(code % q); code /= q; }
        for (int i = 0; i < dprime; ++i)
          if (w[i])
            for (size_t t = 0; t < M.a.size(); ++t)
              M.a[t] = int32_t((M.a[t] + w[i] * mats[i].a[t]) % q);
        for (int64_t c2 = lo; c2 < hi; ++c2) {
          if (c2 != lo) {
            for (int i = 0; i < dprime; ++i) {
              for (size_t t = 0; t < M.a.size(); ++t)
                M.a[t] = int32_t((M.a[t] + mats[i].a[t]) % q);
              if (++w[i] < q) break;
              w[i] = 0;
            }
          }
          scratch.a = M.a;
          local[fp_rank(scratch)] += 1;
        }
      },
      [](Counts& a, const Counts& b) {
        for (auto& [k2, c] : b) a[k2] += c;
      });
  RankCensus res;
  res.q = q;
  res.dim = k;
  for (auto& [r, c] : counts) res.counts[r] = c * mult;
  return res;
}

int64_t transition_ratio(const RankCensus& census, int rank2k) {
  auto it0 = census.counts.find(0);
  if (it0 == census.counts.end()) throw NonDivisible("rank-0 locus is empty");
  auto it = census.counts.find(rank2k);
  int64_t num = it == census.counts.end() ? 0 : it->second;
  if (num % it0->second != 0)
    throw NonDivisible("|L_" + std::to_string(rank2k) + "| not divisible by |L_0|");
  return num / it0->second;
}

namespace {

int64_t first_nonsquare(int64_t q) {
  for (int64_t a = 2; a < q; ++a)
    if (!is_square({a, q})) return a;
  throw Error("no non-square found");
}

}  // namespace

Sl4Element subtype_representative(SubType t, int64_t q) {
  switch (t) {
    case SubType::N31: return cross_section_31(0, 0, q);
    case SubType::T31TwoEV: return cross_section_31(1, 0, q);
    case SubType::T31ThreeEV: return cross_section_31(1, (q - 4 % q + q) % q, q);  // beta = -4
    case SubType::Diag31: {
      // -beta a nonzero square, beta != -4 alpha^2; alpha = 0 works
      return cross_section_31(0, q - 1, q);  // beta = -1, -beta = 1 = 1^2
    }
    case SubType::NonJor31: return cross_section_31(1, (q - first_nonsquare(q)) % q, q);
    default: throw Error("subtype has no representative");
  }
}

Sl4Element class_representative(ClassLabel c, int64_t q) {
  switch (c) {
    case ClassLabel::Zero: return sl4_zero(q, 1);
    case ClassLabel::Reg: {
      // companion-type regular nilpotent e12 + e23 + e34
      return sl4_from_int({0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0}, q, 1);
    }
    case ClassLabel::Sub: return cross_section_31(0, 0, q);
    case ClassLabel::S22Diag: return cross_section_22(1, q);
    case ClassLabel::S22Non: return cross_section_22(first_nonsquare(q), q);
    case ClassLabel::N22: return cross_section_22(0, q);
    case ClassLabel::D211: return cross_section_211(1, q);
    case ClassLabel::N211: return cross_section_211(0, q);
  }
  throw Error("unreachable");
}

namespace {

// enumerate y over the F_q-span of the centralizer basis of a and hand each
// combination to the tally function
template <class Tally, class Fn>
Tally census_over_centralizer(const LieLattice& L, const Sl4Element& a, int workers, Fn&& key) {
  const int64_t q = a.p;
  auto C = centralizer_fp(L, coords(a), q);
  const int k = C.dim();
  if (k > 9) throw TooLarge("centralizer too large for the direct census");
  if (std::pow(double(q), k) > 4.5e7) throw TooLarge("direct census refused");
  std::vector<Sl4Element> basis;
  for (int i = 0; i < k; ++i) {
    std::vector<int64_t> v(15);
    for (int t = 0; t < 15; ++t) v[t] = C.basis.at(i, t);
    basis.push_back(element(v, q, 1));
  }
  const int64_t total = ipow(q, k);
  return parallel_reduce<Tally>(
      total, workers, {},
      [&](int64_t lo, int64_t hi, Tally& local) {
        std::vector<int64_t> t(k, 0);
        int64_t code = lo;
        for (int i = 0; i < k; ++i) { t[i] = code % q; code /= q; }
        Sl4Element y = sl4_zero(q, 1);
        for (int i = 0; i < k; ++i)
          if (t[i]) y = sl4_add(y, sl4_scale(t[i], basis[i]));
        for (int64_t c2 = lo; c2 < hi; ++c2) {
          if (c2 != lo) {
            for (int i = 0; i < k; ++i) {
              y = sl4_add(y, basis[i]);
              if (++t[i] < q) break;
              // rolled over: y wrapped around mod p since q * b = 0
              t[i] = 0;
            }
          }
          ++local[key(y)];
        }
      },
      [](Tally& x, const Tally& yv) {
        for (auto& [k2, c] : yv) x[k2] += c;
      });
}

}  // namespace

std::map<int, int64_t> direct_transition_census(const LieLattice& L, const Sl4Element& a,
                                                int workers) {
  const int64_t q = a.p;
  return census_over_centralizer<std::map<int, int64_t>>(
      L, a, workers, [&](const Sl4Element& y) {
        // level-2 lift a + q * y^T; its shadow dimension is the dimension of
        // the target class of the lift direction
        Sl4Element b = sl4_zero(q, 2);
        auto yt = transpose_twist(y);
        for (int t = 0; t < 16; ++t) b.m[t] = (a.m[t] + q * yt.m[t]) % (q * q);
        return module_kernel_modp(adjoint_matrix(L, coords(b), q, 2)).dim();
      });
}

std::map<Classification, int64_t> direct_transition_census_verbose(const LieLattice& L,
                                                                   const Sl4Element& a,
                                                                   int workers) {
  return census_over_centralizer<std::map<Classification, int64_t>>(
      L, a, workers,
      [&](const Sl4Element& y) { return classify(sl4_add(a, transpose_twist(y))); });
}

N211Analysis n211_rank4_analysis(int64_t q, int workers) {
  N211Analysis out;
  out.q = q;
  auto L = build_sl(4);
  // the table basis of the centralizer of e12: c0..c8
  const std::array<std::array<int64_t, 16>, 9> tb{{
      {0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},   // e13
      {0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},   // e14
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0},   // e32
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0},   // e42
      {0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},   // e12
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0},   // e43
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0},   // e34
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, -1, 0},  // e33 - e44 (fixed below)
      {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1}, // e11+e22-e33-e44 (fixed below)
  }};
  FpMatrix rows(q, 9, 15);
  for (int i = 0; i < 9; ++i) {
    std::array<int64_t, 16> m = tb[i];
    if (i == 7) { m = {}; m[10] = 1; m[15] = -1; }
    if (i == 8) { m = {}; m[0] = 1; m[5] = 1; m[10] = -1; m[15] = -1; }
    auto c = coords(sl4_from_int(m, q, 1));
    for (int t = 0; t < 15; ++t) rows.at(i, t) = int32_t(c[t]);
  }
  auto R = subalgebra_commutator_matrix(L, rows);

  // verify R against the printed matrix (entries over Y_0..Y_8)
  {
    // printed entries as (i, j, var, coeff), upper triangle
    const int E[][4] = {
        {0, 2, 4, 1},  {0, 6, 1, 1},  {0, 7, 0, 1},  {0, 8, 0, -2},
        {1, 3, 4, 1},  {1, 5, 0, 1},  {1, 7, 1, -1}, {1, 8, 1, -2},
        {2, 5, 3, -1}, {2, 7, 2, -1}, {2, 8, 2, 2},
        {3, 6, 2, -1}, {3, 7, 3, 1},  {3, 8, 3, 2},
        {5, 6, 7, -1}, {5, 7, 5, 2},
        {6, 7, 6, -2}};
    LinearFormMatrix P(9);
    for (auto& e : E) {
      int64_t c = ((e[3] % q) + q) % q;
      P.at(e[0], e[1], e[2]) = int32_t(c);
      P.at(e[1], e[0], e[2]) = int32_t(c ? q - c : 0);
    }
    out.matrix_match = (P.coeff == R.coeff);
  }

  // Y8 cannot occur (c8 is not in the derived subalgebra)
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      if (R.at(i, j, 8) != 0) throw Error("unexpected Y8 dependence");

  const int64_t scans = ipow(q, 8);
  std::vector<FpMatrix> mats;
  for (int v = 0; v < 8; ++v) {
    std::vector<int32_t> e(9, 0);
    e[v] = 1;
    mats.push_back(evaluate_fp(R, e, q));
  }
  // the seven generators of the rank-4 radical ideal
  auto gens_vanish = [&](const std::vector<int32_t>& Y) {
    auto md = [&](int64_t v) { return ((v % q) + q) % q; };
    int64_t g1 = md(Y[0] * Y[3] - Y[4] * Y[5]);
    int64_t g2 = md(Y[1] * Y[2] - Y[4] * Y[6]);
    int64_t g3 = md(Y[0] * Y[2] - Y[1] * Y[3] - Y[4] * Y[7]);
    int64_t g4 = md(Y[2] * Y[2] % q * Y[5] - Y[3] * Y[3] % q * Y[6] - Y[2] * Y[3] % q * Y[7]);
    int64_t g5 = md(Y[1] * Y[1] % q * Y[5] - Y[0] * Y[0] % q * Y[6] + Y[0] * Y[1] % q * Y[7]);
    int64_t g6 = md(Y[1] * Y[3] % q * Y[3] - Y[2] * Y[4] % q * Y[5] + Y[3] * Y[4] % q * Y[7]);
    int64_t g7 = md(Y[1] * Y[1] % q * Y[3] - Y[0] * Y[4] % q * Y[6] + Y[1] * Y[4] % q * Y[7]);
    return !(g1 || g2 || g3 || g4 || g5 || g6 || g7);
  };

  struct Local {
    std::map<std::array<int32_t, 3>, int64_t> fiber;  // (c5, c6, c7) -> |L4 preimage|
    int64_t L4 = 0;
    bool ideal_ok = true;
  };
  auto merged = parallel_reduce<Local>(
      scans, workers, {},
      [&](int64_t lo, int64_t hi, Local& local) {
        std::vector<int32_t> w(8, 0);
        FpMatrix M(q, 9, 9), scratch(q, 9, 9);
        int64_t code = lo;
        for (int i = 0; i < 8; ++i) { w[i] = int32_t(code % q); code /= q; }
        for (int i = 0; i < 8; ++i)
          if (w[i])
            for (size_t t = 0; t < M.a.size(); ++t)
              M.a[t] = int32_t((M.a[t] + w[i] * mats[i].a[t]) % q);
        for (int64_t c2 = lo; c2 < hi; ++c2) {
          if (c2 != lo) {
            for (int i = 0; i < 8; ++i) {
              for (size_t t = 0; t < M.a.size(); ++t)
                M.a[t] = int32_t((M.a[t] + mats[i].a[t]) % q);
              if (++w[i] < q) break;
              w[i] = 0;
            }
          }
          scratch.a = M.a;
          int rank = fp_rank(scratch);
          bool vanish = gens_vanish(w);
          if (vanish != (rank <= 4)) local.ideal_ok = false;
          if (rank == 4) {
            ++local.L4;
            local.fiber[{w[5], w[6], w[7]}] += 1;
          }
        }
      },
      [](Local& a, const Local& b) {
        a.L4 += b.L4;
        a.ideal_ok = a.ideal_ok && b.ideal_ok;
        for (auto& [k, c] : b.fiber) a.fiber[k] += c;
      });

  out.L4 = merged.L4 * q;  // Y8 free
  out.ideal_match = merged.ideal_ok;

  // orbit type of a projected point: the coordinates are dual, so the
  // invariant is the dual quadratic Q = Y7^2 + 4 Y5 Y6 of the sl2 pairing
  // (at q = 3 this is the -det of the trace-zero part, matching the naive
  // reading; at larger q the factor 4 matters)
  auto& f = out.fibers;
  f.fibers_constant = true;
  auto note = [&](int64_t& fiber, int64_t& base, int64_t val) {
    if (base == 0) fiber = val;
    else if (fiber != val) f.fibers_constant = false;
    base += 1;
  };
  for (int32_t c5 = 0; c5 < q; ++c5)
    for (int32_t c6 = 0; c6 < q; ++c6)
      for (int32_t c7 = 0; c7 < q; ++c7) {
        auto it = merged.fiber.find({c5, c6, c7});
        int64_t val = it == merged.fiber.end() ? 0 : it->second;
        if (!c5 && !c6 && !c7) {
          note(f.central_fiber, f.central_base, val);
          continue;
        }
        int64_t quad = ((int64_t(c7) * c7 + 4 * int64_t(c5) * c6) % q + q) % q;
        if (quad == 0) note(f.nilpotent_fiber, f.nilpotent_base, val);
        else if (is_square({quad, q})) note(f.split_fiber, f.split_base, val);
        else note(f.nonsplit_fiber, f.nonsplit_base, val);
      }
  // base points live in F_q^4: the central coordinate c8 is free
  f.central_base *= q;
  f.nilpotent_base *= q;
  f.split_base *= q;
  f.nonsplit_base *= q;
  return out;
}

namespace {

// class membership with an unset subtype matching any subtype
bool class_matches(const Classification& got, const Classification& want) {
  if (got.label != want.label) return false;
  return want.subtype == SubType::None || got.subtype == want.subtype;
}

// derived basis of the centralizer of y, as elements
std::vector<Sl4Element> centralizer_derived_basis(const LieLattice& L, const Sl4Element& y) {
  const int64_t q = y.p;
  auto C = centralizer_fp(L, coords(y), q);
  const int k = C.dim();
  FpMatrix br(q, k * (k - 1) / 2, 15);
  int row = 0;
  std::vector<int64_t> xv(15), yv(15);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      for (int t = 0; t < 15; ++t) { xv[t] = C.basis.at(a, t); yv[t] = C.basis.at(b, t); }
      auto z = L.bracket(xv, yv);
      for (int t = 0; t < 15; ++t) {
        int64_t v = z[t] % q;
        br.at(row, t) = int32_t(v < 0 ? v + q : v);
      }
      ++row;
    }
  auto derived = span_rows(br);
  std::vector<Sl4Element> out;
  for (int i = 0; i < derived.dim(); ++i) {
    std::vector<int64_t> v(15);
    for (int t = 0; t < 15; ++t) v[t] = derived.basis.at(i, t);
    out.push_back(element(v, q, 1));
  }
  return out;
}

// level-1 sum census over the transposed derived subalgebra of C(y); valid
// for the fine dimension-7 split out of the nilpotent dimension-9 class
int64_t fine_step_count(const LieLattice& L, const Sl4Element& y, const Classification& target,
                        std::vector<Sl4Element>* successors) {
  const int64_t q = y.p;
  auto db = centralizer_derived_basis(L, y);
  const int dp = int(db.size());
  int64_t count = 0;
  std::vector<int64_t> coeff(dp, 0);
  Sl4Element x = sl4_zero(q, 1);
  for (int64_t cc = 0; cc < ipow(q, dp); ++cc) {
    if (cc) {
      for (int i = 0; i < dp; ++i) {
        x = sl4_add(x, transpose_twist(db[i]));
        if (++coeff[i] < q) break;
        coeff[i] = 0;
      }
    }
    Sl4Element y2 = sl4_add(y, sl4_scale(q - 1, x));  // y - x
    if (class_matches(classify(y2), target)) {
      ++count;
      if (successors) successors->push_back(y2);
    }
  }
  return count;
}

// dimension-determined step: the rank census of the centralizer of y
int64_t dim_step_count(const LieLattice& L, const Sl4Element& y, int target_dim) {
  auto census = rank_census(L, centralizer_fp(L, coords(y), y.p), 1);
  return transition_ratio(census, census.dim - target_dim);
}

}  // namespace

int64_t f_set_enumerate_sl4(const std::vector<Classification>& seq, int64_t q, int workers) {
  if (seq.empty()) return 1;
  for (size_t i = 0; i + 1 < seq.size(); ++i)
    if (class_dim(seq[i].label) <= class_dim(seq[i + 1].label))
      throw Error("sequence must have strictly decreasing centralizer dimensions");
  if (q != 3) throw TooLarge("sl4 F-set enumeration is a 3^15 scan; q = 3 only");
  auto L = build_sl(4);

  // a step is fine when the target is a specific dimension-7 class (only
  // reached from the dimension-9 nilpotent class in the table); fine steps
  // produce actual successor elements, dimension steps only counts, so a
  // dimension step may not be followed by another step
  for (size_t j = 0; j + 2 < seq.size(); ++j)
    if (class_dim(seq[j + 1].label) != 7)
      throw Error("interior steps must target a dimension-7 class");

  // member scan of the first class
  std::function<int64_t(const Sl4Element&, size_t)> walk = [&](const Sl4Element& y,
                                                               size_t j) -> int64_t {
    if (j + 1 == seq.size()) return 1;
    const Classification& target = seq[j + 1];
    bool fine = class_dim(target.label) == 7 && seq.size() > j + 2;
    if (class_dim(target.label) == 7 && !fine) {
      // final fine target: count without successors
      return fine_step_count(L, y, target, nullptr);
    }
    if (!fine) return dim_step_count(L, y, class_dim(target.label));
    std::vector<Sl4Element> next;
    fine_step_count(L, y, target, &next);
    int64_t acc = 0;
    for (auto& y2 : next) acc += walk(y2, j + 1);
    return acc;
  };

  const int64_t total = ipow(q, 15);
  return parallel_reduce<int64_t>(
      total, workers, 0,
      [&](int64_t lo, int64_t hi, int64_t& local) {
        std::vector<int64_t> w(15, 0);
        int64_t code = lo;
        for (int i = 0; i < 15; ++i) { w[i] = code % q; code /= q; }
        for (int64_t c2 = lo; c2 < hi; ++c2) {
          if (c2 != lo) {
            for (int i = 0; i < 15; ++i) {
              if (++w[i] < q) break;
              w[i] = 0;
            }
          }
          if (c2 == 0) continue;
          auto y = element(w, q, 1);
          if (!class_matches(classify(y), seq[0])) continue;
          local += walk(y, 0);
        }
      },
      [](int64_t& a, const int64_t& b) { a += b; });
}

int64_t expected_transition(ClassLabel from, ClassLabel to, int64_t q) {
  auto& poly = class_table().transition(from, to);
  Rational v = poly.evaluate(Rational(q), 1);
  if (boost::multiprecision::denominator(v) != 1) throw Error("non-integer transition value");
  return int64_t(boost::multiprecision::numerator(v));
}

}  // namespace rzeta
