#include "rzeta/classify.hpp"

#include <json.hpp>
#include <mutex>
#include <random>
#include <sstream>

#include "rzeta/data.hpp"
#include "rzeta/parallel.hpp"

namespace rzeta {

std::string to_string(ClassLabel c) {
  switch (c) {
    case ClassLabel::Zero: return "Zero";
    case ClassLabel::Reg: return "Reg";
    case ClassLabel::Sub: return "Sub";
    case ClassLabel::S22Diag: return "S22Diag";
    case ClassLabel::S22Non: return "S22Non";
    case ClassLabel::N22: return "N22";
    case ClassLabel::D211: return "D211";
    case ClassLabel::N211: return "N211";
  }
  return "?";
}

std::string to_string(SubType s) {
  switch (s) {
    case SubType::None: return "";
    case SubType::N31: return "N31";
    case SubType::T31TwoEV: return "T31TwoEV";
    case SubType::T31ThreeEV: return "T31ThreeEV";
    case SubType::Diag31: return "Diag31";
    case SubType::NonJor31: return "NonJor31";
  }
  return "?";
}

ClassLabel class_label_from_string(const std::string& s) {
  for (ClassLabel c : {ClassLabel::Zero, ClassLabel::Reg, ClassLabel::Sub, ClassLabel::S22Diag,
                       ClassLabel::S22Non, ClassLabel::N22, ClassLabel::D211, ClassLabel::N211})
    if (to_string(c) == s) return c;
  throw Error("unknown class label: " + s);
}

int class_dim(ClassLabel c) {
  switch (c) {
    case ClassLabel::Zero: return 15;
    case ClassLabel::Reg: return 3;
    case ClassLabel::Sub: return 5;
    case ClassLabel::S22Diag:
    case ClassLabel::S22Non:
    case ClassLabel::N22: return 7;
    case ClassLabel::D211:
    case ClassLabel::N211: return 9;
  }
  return -1;
}

int class_derived_dim(ClassLabel c) {
  switch (c) {
    case ClassLabel::Zero: return 15;
    case ClassLabel::Reg: return 0;
    case ClassLabel::Sub: return 3;
    case ClassLabel::S22Diag:
    case ClassLabel::S22Non:
    case ClassLabel::N22: return 6;
    case ClassLabel::D211:
    case ClassLabel::N211: return 8;
  }
  return -1;
}

int64_t PolyFq::eval(int64_t x) const {
  int64_t v = 0;
  for (int k = deg; k >= 0; --k) v = (v * x + c[k]) % p;
  return v;
}

Sl4Element cross_section_31(int64_t alpha, int64_t beta, int64_t p) {
  // char poly (X - a)^2 (X^2 + 2aX + b + a^2); see the displayed chi_a
  return sl4_from_int({alpha, 0, 0, 0,
                       0, alpha, 1, 0,
                       0, 0, -alpha, 1,
                       0, 0, -beta, -alpha}, p, 1);
}

Sl4Element cross_section_22(int64_t alpha, int64_t p) {
  return sl4_from_int({0, 1, 0, 0,
                       alpha, 0, 0, 0,
                       0, 0, 0, 1,
                       0, 0, alpha, 0}, p, 1);
}

Sl4Element cross_section_211(int64_t alpha, int64_t p) {
  return sl4_from_int({3 * alpha, 1, 0, 0,
                       0, -alpha, 0, 0,
                       0, 0, -alpha, 0,
                       0, 0, 0, -alpha}, p, 1);
}

PolyFq char_poly(const Sl4Element& x) {
  const int64_t p = x.p;
  // det(X I - A) expanded over the 24 permutations; entries are the linear
  // polynomials X*delta_ij - a_ij, so each term is a product of four of them
  static const int perms[24][4] = {
      {0,1,2,3},{0,1,3,2},{0,2,1,3},{0,2,3,1},{0,3,1,2},{0,3,2,1},
      {1,0,2,3},{1,0,3,2},{1,2,0,3},{1,2,3,0},{1,3,0,2},{1,3,2,0},
      {2,0,1,3},{2,0,3,1},{2,1,0,3},{2,1,3,0},{2,3,0,1},{2,3,1,0},
      {3,0,1,2},{3,0,2,1},{3,1,0,2},{3,1,2,0},{3,2,0,1},{3,2,1,0}};
  static const int signs[24] = {1,-1,-1,1,1,-1, -1,1,1,-1,-1,1, 1,-1,-1,1,1,-1, -1,1,1,-1,-1,1};
  int64_t out[5] = {0, 0, 0, 0, 0};
  for (int t = 0; t < 24; ++t) {
    int64_t poly[5] = {1, 0, 0, 0, 0};
    int deg = 0;
    for (int i = 0; i < 4; ++i) {
      int j = perms[t][i];
      int64_t a = ((x.at(i, j) % p) + p) % p;
      if (i == j) {
        int64_t next[5] = {0, 0, 0, 0, 0};
        for (int k = 0; k <= deg; ++k) {
          next[k + 1] = (next[k + 1] + poly[k]) % p;
          next[k] = (next[k] - a * poly[k]) % p;
        }
        ++deg;
        for (int k = 0; k <= deg; ++k) poly[k] = next[k];
      } else {
        for (int k = 0; k <= deg; ++k) poly[k] = (poly[k] * (p - a)) % p;
      }
    }
    for (int k = 0; k <= deg; ++k) out[k] = (out[k] + signs[t] * poly[k]) % p;
  }
  PolyFq f;
  f.p = p;
  f.deg = 4;
  for (int k = 0; k <= 4; ++k) f.c[k] = ((out[k] % p) + p) % p;
  return f;
}

namespace {

// monic division: returns quotient if g divides f exactly, else nullopt-like
bool poly_divide(const PolyFq& f, const PolyFq& g, PolyFq* quot) {
  const int64_t p = f.p;
  int64_t rem[5];
  for (int k = 0; k <= 4; ++k) rem[k] = f.c[k];
  int rdeg = f.deg;
  int64_t q[5] = {0, 0, 0, 0, 0};
  while (rdeg >= g.deg) {
    bool zero = true;
    for (int k = 0; k <= rdeg; ++k)
      if (rem[k]) { zero = false; break; }
    if (zero) { rdeg = -1; break; }
    if (rem[rdeg] == 0) { --rdeg; continue; }
    int64_t c = rem[rdeg];  // g monic
    int shift = rdeg - g.deg;
    q[shift] = (q[shift] + c) % p;
    for (int k = 0; k <= g.deg; ++k)
      rem[k + shift] = ((rem[k + shift] - c * g.c[k]) % p + p) % p;
    --rdeg;
  }
  for (int k = 0; k <= (rdeg < 0 ? -1 : rdeg); ++k)
    if (rem[k]) return false;
  for (int k = 0; k <= 4 && rdeg >= 0; ++k)
    if (k <= rdeg && rem[k]) return false;
  if (quot) {
    quot->p = p;
    quot->deg = f.deg - g.deg;
    for (int k = 0; k <= 4; ++k) quot->c[k] = k <= quot->deg ? q[k] : 0;
  }
  return true;
}

PolyFq poly_mul(const PolyFq& a, const PolyFq& b) {
  PolyFq r;
  r.p = a.p;
  r.deg = a.deg + b.deg;
  for (int i = 0; i <= a.deg; ++i)
    for (int j = 0; j <= b.deg; ++j) r.c[i + j] = (r.c[i + j] + a.c[i] * b.c[j]) % a.p;
  return r;
}

PolyFq linear(int64_t root, int64_t p) {
  PolyFq f;
  f.p = p;
  f.deg = 1;
  f.c[0] = ((-root) % p + p) % p;
  f.c[1] = 1;
  return f;
}

// evaluate a monic poly at a 4x4 matrix
Sl4Element poly_at(const PolyFq& f, const Sl4Element& x) {
  // Horner over matrices; constant terms need the identity, which is not
  // traceless, so work on raw 4x4 arrays
  const int64_t m = x.modulus();
  std::array<int64_t, 16> acc{};
  for (int k = f.deg; k >= 0; --k) {
    std::array<int64_t, 16> next{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        int64_t s = 0;
        for (int l = 0; l < 4; ++l) s += acc[4 * i + l] * x.at(l, j);
        next[4 * i + j] = s % m;
      }
    for (int i = 0; i < 4; ++i) next[5 * i] = (next[5 * i] + f.c[k]) % m;
    acc = next;
  }
  Sl4Element r = sl4_zero(x.p, x.r);
  r.m = acc;  // not traceless in general; used only for rank/zero tests
  return r;
}

int rank4(const std::array<int64_t, 16>& mat, int64_t p) {
  int64_t M[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) M[i][j] = ((mat[4 * i + j] % p) + p) % p;
  int rank = 0;
  for (int col = 0; col < 4 && rank < 4; ++col) {
    int piv = -1;
    for (int i = rank; i < 4; ++i)
      if (M[i][col]) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(M[piv], M[rank]);
    for (int i = rank + 1; i < 4; ++i) {
      if (!M[i][col]) continue;
      // eliminate using exact field inverse
      int64_t f = (M[i][col] * field_inverse({M[rank][col], p}).value) % p;
      for (int j = col; j < 4; ++j) M[i][j] = ((M[i][j] - f * M[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::vector<std::pair<PolyFq, int>> factor_small(const PolyFq& f) {
  if (f.deg > 4) throw Error("factor_small expects degree <= 4");
  const int64_t p = f.p;
  std::vector<std::pair<PolyFq, int>> out;
  PolyFq rest = f;
  // linear factors by root search
  for (int64_t a = 0; a < p && rest.deg > 0; ++a) {
    PolyFq lin = linear(a, p);
    int mult = 0;
    PolyFq q;
    while (rest.deg >= 1 && poly_divide(rest, lin, &q)) {
      rest = q;
      ++mult;
    }
    if (mult) out.push_back({lin, mult});
  }
  // remaining part factors into irreducible monic quadratics
  for (int64_t b = 0; b < p && rest.deg > 0; ++b)
    for (int64_t c = 0; c < p && rest.deg > 0; ++c) {
      // X^2 + bX + c irreducible iff b^2 - 4c is a non-square
      int64_t disc = ((b * b - 4 * c) % p + p) % p;
      if (disc == 0 || is_square({disc, p})) continue;
      PolyFq quad;
      quad.p = p;
      quad.deg = 2;
      quad.c[0] = c;
      quad.c[1] = b;
      quad.c[2] = 1;
      int mult = 0;
      PolyFq q;
      while (rest.deg >= 2 && poly_divide(rest, quad, &q)) {
        rest = q;
        ++mult;
      }
      if (mult) out.push_back({quad, mult});
    }
  // a remainder with no factor of degree <= 2 is itself irreducible
  if (rest.deg >= 3) {
    out.push_back({rest, 1});
    rest.deg = 0;
    rest.c = {1, 0, 0, 0, 0};
  }
  if (rest.deg != 0) throw Error("factor_small: leftover factor");
  // sanity: product of factors = f
  PolyFq prod;
  prod.p = p;
  prod.deg = 0;
  prod.c[0] = 1;
  for (auto& [g, m] : out)
    for (int k = 0; k < m; ++k) prod = poly_mul(prod, g);
  if (!(prod == f)) throw Error("factor_small: product check failed");
  return out;
}

PolyFq min_poly(const Sl4Element& x) {
  auto chi = char_poly(x);
  auto factors = factor_small(chi);
  // enumerate monic divisors in degree order, test annihilation
  int n = int(factors.size());
  std::vector<int> exps(n, 0);
  PolyFq best;
  int best_deg = 5;
  std::function<void(int, PolyFq, int)> rec = [&](int i, PolyFq cur, int deg) {
    if (deg >= best_deg) return;
    if (i == n) {
      if (deg == 0) return;
      auto val = poly_at(cur, x);
      for (auto v : val.m)
        if (v % x.p != 0) return;
      best = cur;
      best_deg = deg;
      return;
    }
    PolyFq acc = cur;
    for (int e = 0; e <= factors[i].second; ++e) {
      rec(i + 1, acc, deg + e * factors[i].first.deg);
      if (e < factors[i].second) acc = poly_mul(acc, factors[i].first);
    }
  };
  PolyFq one;
  one.p = x.p;
  one.deg = 0;
  one.c[0] = 1;
  rec(0, one, 0);
  if (best_deg == 5) throw Error("min_poly: no annihilator found");
  return best;
}

Classification classify(const Sl4Element& x) {
  const int64_t p = x.p;
  auto chi = char_poly(x);

  // collect factor data: per irreducible factor, its multiplicity and the
  // block partition read from kernel dimensions of powers
  struct FactorData {
    int deg;
    int mult;
    std::vector<int> blocks;  // partition of mult
  };
  std::vector<FactorData> fd;
  bool has_quad = false;
  int64_t roots_seen = 0;

  auto blocks_from_kernels = [&](const PolyFq& g, int mult) {
    // dim ker g(x)^j = deg(g) * sum_i min(b_i, j)
    std::vector<int> blocks;
    if (mult == 1) return std::vector<int>{1};
    std::vector<int> kdim(mult + 1, 0);
    Sl4Element pw = poly_at(g, x);
    std::array<int64_t, 16> acc = pw.m;
    for (int j = 1; j <= mult; ++j) {
      kdim[j] = (4 - rank4(acc, p)) / g.deg;
      if (j < mult) {
        // acc *= g(x)
        std::array<int64_t, 16> next{};
        const int64_t m = x.modulus();
        for (int i = 0; i < 4; ++i)
          for (int jj = 0; jj < 4; ++jj) {
            int64_t s = 0;
            for (int l = 0; l < 4; ++l) s += acc[4 * i + l] * pw.m[4 * l + jj];
            next[4 * i + jj] = s % m;
          }
        acc = next;
      }
    }
    // number of blocks of size >= j is kdim[j] - kdim[j-1]
    std::vector<int> geq(mult + 2, 0);
    for (int j = 1; j <= mult; ++j) geq[j] = kdim[j] - kdim[j - 1];
    for (int j = mult; j >= 1; --j)
      for (int b = 0; b < geq[j] - geq[j + 1]; ++b) blocks.push_back(j);
    return blocks;
  };

  auto factors = factor_small(chi);
  for (auto& [g, mult] : factors) {
    FactorData d;
    d.deg = g.deg;
    d.mult = mult;
    d.blocks = blocks_from_kernels(g, mult);
    fd.push_back(d);
    if (g.deg == 2) has_quad = true;
    if (g.deg == 1) roots_seen += mult;
  }

  // dim of the gl4 centralizer from the block data
  int dim_gl = 0;
  for (auto& d : fd) {
    // n(partition) = sum over pairs min(b_i, b_j)
    int n = 0;
    for (int a : d.blocks)
      for (int b : d.blocks) n += std::min(a, b);
    dim_gl += d.deg * n;
  }
  int k = dim_gl - 1;

  bool nilpotent = (chi.deg == 4);
  for (int j = 0; j < 4; ++j) nilpotent = nilpotent && (chi.c[j] == 0);

  Classification res;
  switch (k) {
    case 15:
      res.label = ClassLabel::Zero;
      return res;
    case 3:
      res.label = ClassLabel::Reg;
      return res;
    case 5: {
      res.label = ClassLabel::Sub;
      if (nilpotent) {
        res.subtype = SubType::N31;
      } else if (has_quad) {
        res.subtype = SubType::NonJor31;
      } else {
        // split, not nilpotent, dim 5
        bool semisimple = true;
        int mult3 = 0, mult2 = 0;
        for (auto& d : fd) {
          if (d.blocks.size() != size_t(d.mult)) semisimple = false;
          if (d.deg == 1 && d.mult == 3) ++mult3;
          if (d.deg == 1 && d.mult == 2) ++mult2;
        }
        if (semisimple) res.subtype = SubType::Diag31;
        else if (mult3 == 1) res.subtype = SubType::T31ThreeEV;
        else if (mult2 == 2) res.subtype = SubType::T31TwoEV;
        else throw UnexpectedDimension("unrecognized dimension-5 split type");
      }
      return res;
    }
    case 7: {
      if (nilpotent) res.label = ClassLabel::N22;
      else if (has_quad) res.label = ClassLabel::S22Non;
      else res.label = ClassLabel::S22Diag;
      return res;
    }
    case 9: {
      res.label = nilpotent ? ClassLabel::N211 : ClassLabel::D211;
      return res;
    }
    default:
      throw UnexpectedDimension("centralizer dimension " + std::to_string(k));
  }
}

CensusResult census(int64_t q, bool exhaustive, int workers, int64_t sample_size, uint64_t seed) {
  CensusResult res;
  res.q = q;
  res.exhaustive = exhaustive;
  if (exhaustive) {
    if (q != 3) throw TooLarge("exhaustive census only for q = 3 (3^15 points)");
    int64_t total = ipow(3, 15);
    using Counts = std::map<Classification, int64_t>;
    auto counts = parallel_reduce<Counts>(
        total, workers, {},
        [&](int64_t lo, int64_t hi, Counts& local) {
          std::vector<int64_t> v(15, 0);
          int64_t code = lo;
          for (int i = 0; i < 15; ++i) { v[i] = code % 3; code /= 3; }
          for (int64_t w = lo; w < hi; ++w) {
            if (w != lo) {
              // odometer increment
              for (int i = 0; i < 15; ++i) {
                if (++v[i] < 3) break;
                v[i] = 0;
              }
            }
            if (w == 0) continue;  // skip zero element
            ++local[classify(element(v, 3, 1))];
          }
        },
        [](Counts& a, const Counts& b) {
          for (auto& [k2, c] : b) a[k2] += c;
        });
    res.counts = std::move(counts);
  } else {
    if (sample_size <= 0) sample_size = 100000;
    res.sample_size = sample_size;
    std::mt19937_64 rng(seed);
    for (int64_t t = 0; t < sample_size; ++t) {
      std::vector<int64_t> v(15);
      bool nonzero = false;
      for (auto& c : v) {
        c = int64_t(rng() % uint64_t(q));
        nonzero = nonzero || c;
      }
      if (!nonzero) { --t; continue; }
      ++res.counts[classify(element(v, q, 1))];
    }
  }
  return res;
}

namespace {

LaurentPoly poly_from_json(const nlohmann::json& terms) {
  LaurentPoly P;
  for (auto& t : terms) {
    Rational c(BigInt(t[1].get<int64_t>()), BigInt(t[2].get<int64_t>()));
    P.add_term(t[0].get<int>(), 0, c);
  }
  return P;
}

SubType subtype_from_string(const std::string& s) {
  for (SubType t : {SubType::N31, SubType::T31TwoEV, SubType::T31ThreeEV, SubType::Diag31,
                    SubType::NonJor31})
    if (to_string(t) == s) return t;
  throw Error("unknown subtype: " + s);
}

ClassTable load_class_table() {
  auto j = nlohmann::json::parse(read_file(data_dir() + "/sl4_class_data.json"));
  ClassTable tab;
  for (auto& c : j["classes"]) {
    ClassInfo info;
    info.label = class_label_from_string(c["label"].get<std::string>());
    info.d_c = c["d_c"].get<int>();
    info.d_prime = c["d_prime"].get<int>();
    info.cardinality = poly_from_json(c["cardinality"]);
    info.cardinality_display = c["cardinality_display"].get<std::string>();
    for (auto& [to, poly] : c["transitions"].items())
      info.transitions[class_label_from_string(to)] = poly_from_json(poly);
    tab.classes.push_back(std::move(info));
  }
  for (auto& s : j["sub_subtypes"]) {
    SubType t = subtype_from_string(s["label"].get<std::string>());
    tab.subtype_cardinalities[t] = poly_from_json(s["cardinality"]);
    tab.subtype_displays[t] = s["cardinality_display"].get<std::string>();
  }
  return tab;
}

}  // namespace

const ClassInfo& ClassTable::info(ClassLabel c) const {
  for (auto& i : classes)
    if (i.label == c) return i;
  throw Error("class not in table: " + to_string(c));
}

const LaurentPoly& ClassTable::transition(ClassLabel from, ClassLabel to) const {
  static const LaurentPoly zero;
  auto& i = info(from);
  auto it = i.transitions.find(to);
  return it == i.transitions.end() ? zero : it->second;
}

const ClassTable& class_table() {
  static const ClassTable tab = load_class_table();
  return tab;
}

std::string census_csv(const CensusResult& res) {
  auto& tab = class_table();
  std::ostringstream os;
  os << "class,subtype,count,polynomial,polynomial_at_q,match\n";
  Rational q(res.q);
  for (auto& [cls, count] : res.counts) {
    std::string polytext = "";
    Rational at_q = -1;
    if (cls.label == ClassLabel::Sub && cls.subtype != SubType::None) {
      at_q = tab.subtype_cardinalities.at(cls.subtype).evaluate(q, 1);
      polytext = tab.subtype_displays.at(cls.subtype);
    } else if (cls.label != ClassLabel::Zero) {
      at_q = tab.info(cls.label).cardinality.evaluate(q, 1);
      polytext = tab.info(cls.label).cardinality_display;
    }
    bool match = res.exhaustive && at_q == count;
    os << to_string(cls.label) << ',' << to_string(cls.subtype) << ',' << count << ","
       << '"' << polytext << '"' << ',' << at_q.str() << ','
       << (res.exhaustive ? (match ? "true" : "false") : "n/a") << '\n';
  }
  return os.str();
}

bool census_matches_table(const CensusResult& res) {
  if (!res.exhaustive) return false;
  auto& tab = class_table();
  Rational q(res.q);
  // counts must be grouped per subtype for Sub and per label otherwise,
  // and every class of the table must be present
  std::map<Classification, Rational> expected;
  for (auto& [t, poly] : tab.subtype_cardinalities)
    expected[{ClassLabel::Sub, t}] = poly.evaluate(q, 1);
  for (auto& i : tab.classes)
    if (i.label != ClassLabel::Sub) expected[{i.label, SubType::None}] = i.cardinality.evaluate(q, 1);
  if (expected.size() != res.counts.size()) return false;
  for (auto& [cls, want] : expected) {
    auto it = res.counts.find(cls);
    if (it == res.counts.end() || Rational(it->second) != want) return false;
  }
  return true;
}

}  // namespace rzeta
