#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rzeta/classify.hpp"
#include "rzeta/data.hpp"

using namespace rzeta;

namespace {

Sl4Element random_element(std::mt19937_64& rng, int64_t p) {
  std::vector<int64_t> v(15);
  for (auto& c : v) c = int64_t(rng() % uint64_t(p));
  return element(v, p, 1);
}

Sl4Element conjugate(const Sl4Element& x, std::mt19937_64& rng) {
  // random g in GL4(F_p), returns g x g^-1
  const int64_t p = x.p;
  while (true) {
    std::array<int64_t, 16> g{};
    for (auto& e : g) e = int64_t(rng() % uint64_t(p));
    // invert by gaussian elimination on [g | I]
    int64_t M[4][8];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) { M[i][j] = g[4 * i + j]; M[i][4 + j] = (i == j); }
    bool ok = true;
    for (int col = 0; col < 4 && ok; ++col) {
      int piv = -1;
      for (int i = col; i < 4; ++i)
        if (M[i][col]) { piv = i; break; }
      if (piv < 0) { ok = false; break; }
      for (int j = 0; j < 8; ++j) std::swap(M[piv][j], M[col][j]);
      int64_t inv = field_inverse({M[col][col], p}).value;
      for (int j = 0; j < 8; ++j) M[col][j] = (M[col][j] * inv) % p;
      for (int i = 0; i < 4; ++i) {
        if (i == col || !M[i][col]) continue;
        int64_t f = M[i][col];
        for (int j = 0; j < 8; ++j) M[i][j] = ((M[i][j] - f * M[col][j]) % p + p) % p;
      }
    }
    if (!ok) continue;
    std::array<int64_t, 16> gi{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) gi[4 * i + j] = M[i][4 + j];
    // g x gi
    std::array<int64_t, 16> t{}, r{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        int64_t s = 0;
        for (int l = 0; l < 4; ++l) s += g[4 * i + l] * x.at(l, j);
        t[4 * i + j] = s % p;
      }
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        int64_t s = 0;
        for (int l = 0; l < 4; ++l) s += t[4 * i + l] * gi[4 * l + j];
        r[4 * i + j] = s % p;
      }
    return sl4_from_int(r, p, 1);
  }
}

}  // namespace

TEST_CASE("cross sections") {
  // C22(0) = e12 + e34
  auto a = cross_section_22(0, 5);
  CHECK(a.at(0, 1) == 1);
  CHECK(a.at(2, 3) == 1);
  CHECK(a.at(1, 0) == 0);
  // C211(alpha): diagonal (3a, -a, -a, -a), 1 at (1,2)
  auto b = cross_section_211(2, 7);
  CHECK(b.at(0, 0) == 6);
  CHECK(b.at(1, 1) == 5);
  CHECK(b.at(0, 1) == 1);
  // char(C31(a,b)) = (X-a)^2 (X^2 + 2aX + b + a^2)
  for (int64_t al = 0; al < 5; ++al)
    for (int64_t be = 0; be < 5; ++be) {
      auto x = cross_section_31(al, be, 5);
      auto chi = char_poly(x);
      PolyFq want;  // multiply (X-a)^2 by (X^2+2aX+b+a^2) by hand
      want.p = 5;
      want.deg = 4;
      // (X-a)^2 = X^2 - 2aX + a^2
      int64_t u1 = ((-2 * al) % 5 + 5) % 5, u0 = (al * al) % 5;
      int64_t v1 = (2 * al) % 5, v0 = ((be + al * al) % 5 + 5) % 5;
      want.c[4] = 1;
      want.c[3] = (u1 + v1) % 5;
      want.c[2] = (u0 + u1 * v1 + v0) % 5;
      want.c[1] = (u1 * v0 + u0 * v1) % 5;
      want.c[0] = (u0 * v0) % 5;
      CHECK(chi == want);
      // min(C31(a,b)) = (X-a)(X^2+2aX+b+a^2)
      auto mu = min_poly(x);
      PolyFq wmin;
      wmin.p = 5;
      wmin.deg = 3;
      int64_t l0 = (5 - al) % 5;
      wmin.c[3] = 1;
      wmin.c[2] = (l0 + v1) % 5;
      wmin.c[1] = (l0 * v1 + v0) % 5;
      wmin.c[0] = (l0 * v0) % 5;
      CHECK(mu == wmin);
    }
}

TEST_CASE("char and min of zero") {
  auto z = sl4_zero(7, 1);
  auto chi = char_poly(z);
  CHECK(chi.deg == 4);
  for (int k = 0; k < 4; ++k) CHECK(chi.c[k] == 0);
  auto mu = min_poly(z);
  CHECK(mu.deg == 1);
  CHECK(mu.c[0] == 0);
}

TEST_CASE("factor_small") {
  // X^2 - a, a non-square -> irreducible
  PolyFq f;
  f.p = 7;
  f.deg = 2;
  f.c[0] = 7 - 3;  // X^2 - 3; 3 is a non-square mod 7
  f.c[2] = 1;
  REQUIRE_FALSE(is_square({3, 7}));
  auto fs = factor_small(f);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].first.deg == 2);
  CHECK(fs[0].second == 1);
  // X^2 - 4 = (X-2)(X+2)
  PolyFq g;
  g.p = 7;
  g.deg = 2;
  g.c[0] = 3;  // -4 mod 7
  g.c[2] = 1;
  auto gs = factor_small(g);
  REQUIRE(gs.size() == 2);
  CHECK(gs[0].first.deg == 1);
  CHECK(gs[1].first.deg == 1);
  // X^4 -> (X)^4
  PolyFq h;
  h.p = 5;
  h.deg = 4;
  h.c[4] = 1;
  auto hs = factor_small(h);
  REQUIRE(hs.size() == 1);
  CHECK(hs[0].second == 4);
  CHECK(hs[0].first.deg == 1);
  CHECK(hs[0].first.c[0] == 0);
}

TEST_CASE("classification of cross sections matches table row conditions") {
  for (int64_t p : {3, 5, 7}) {
    // [2,2]: alpha nonzero square -> S22Diag; non-square -> S22Non; 0 -> N22
    for (int64_t al = 0; al < p; ++al) {
      auto c = classify(cross_section_22(al, p));
      if (al == 0) CHECK(c.label == ClassLabel::N22);
      else if (is_square({al, p})) CHECK(c.label == ClassLabel::S22Diag);
      else CHECK(c.label == ClassLabel::S22Non);
    }
    // [2,1,1]: alpha = 0 -> N211, else D211
    for (int64_t al = 0; al < p; ++al) {
      auto c = classify(cross_section_211(al, p));
      CHECK(c.label == (al == 0 ? ClassLabel::N211 : ClassLabel::D211));
    }
    // [3,1] rows
    for (int64_t al = 0; al < p; ++al)
      for (int64_t be = 0; be < p; ++be) {
        auto c = classify(cross_section_31(al, be, p));
        CHECK(c.label == ClassLabel::Sub);
        int64_t mb = (p - be) % p;  // -beta
        if (al == 0 && be == 0) CHECK(c.subtype == SubType::N31);
        else if (al != 0 && be == 0) CHECK(c.subtype == SubType::T31TwoEV);
        else if (al != 0 && be == ((p - 4 * al * al % p) % p)) CHECK(c.subtype == SubType::T31ThreeEV);
        else if (mb != 0 && is_square({mb, p})) CHECK(c.subtype == SubType::Diag31);
        else CHECK(c.subtype == SubType::NonJor31);
      }
  }
}

TEST_CASE("classify invariance under conjugation and transpose") {
  std::mt19937_64 rng(71);
  for (int64_t p : {3, 5}) {
    for (int t = 0; t < 3000; ++t) {
      auto x = random_element(rng, p);
      auto c = classify(x);
      CHECK(classify(conjugate(x, rng)) == c);
      CHECK(classify(transpose_twist(x)) == c);
    }
  }
}

TEST_CASE("classification agrees with centralizer dimensions") {
  auto L = build_sl(4);
  std::mt19937_64 rng(73);
  for (int64_t p : {3, 5}) {
    for (int t = 0; t < 400; ++t) {
      auto x = random_element(rng, p);
      auto c = classify(x);
      auto C = centralizer_fp(L, coords(x), p);
      CHECK(C.dim() == class_dim(c.label));
      CHECK(derived_dim(L, C) == class_derived_dim(c.label));
    }
  }
}

TEST_CASE("min poly divides char poly and annihilates") {
  std::mt19937_64 rng(79);
  for (int t = 0; t < 500; ++t) {
    auto x = random_element(rng, 5);
    auto chi = char_poly(x);
    auto mu = min_poly(x);
    // mu | chi: trial division via factorizations
    auto fc = factor_small(chi);
    auto fm = factor_small(mu);
    for (auto& [g, m] : fm) {
      bool found = false;
      for (auto& [g2, m2] : fc)
        if (g == g2 && m2 >= m) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("class table data") {
  auto& tab = class_table();
  REQUIRE(tab.classes.size() == 7);
  Rational q(3);
  // spot values at q = 3
  CHECK(tab.info(ClassLabel::N211).cardinality.evaluate(q, 1) == 1040);
  CHECK(tab.info(ClassLabel::S22Non).cardinality.evaluate(q, 1) == 4212);
  // tau(Sub -> Reg) = q^3 - 1
  CHECK(tab.transition(ClassLabel::Sub, ClassLabel::Reg).evaluate(q, 1) == 26);
  // tau(N211 -> Reg) = q^8 - q^5 - q^4 - q^3 + 2 q^2
  CHECK(tab.transition(ClassLabel::N211, ClassLabel::Reg).evaluate(q, 1) ==
        6561 - 243 - 81 - 27 + 18);
  // unlisted transitions are zero
  CHECK(tab.transition(ClassLabel::S22Non, ClassLabel::Sub).is_zero());
  // sum of cardinalities (classes + zero) = q^15 as polynomials
  LaurentPoly total = LaurentPoly::constant(1);
  for (auto& i : tab.classes) total = total + i.cardinality;
  CHECK(total == LaurentPoly::q_power(15));
  // Sub cardinality equals the sum of its subtypes
  LaurentPoly sub;
  for (auto& [t, poly] : tab.subtype_cardinalities) sub = sub + poly;
  CHECK(sub == tab.info(ClassLabel::Sub).cardinality);
  // d_c / d'_c columns
  for (auto& i : tab.classes) {
    CHECK(i.d_c == class_dim(i.label));
    CHECK(i.d_prime == class_derived_dim(i.label));
  }
}

TEST_CASE("sampled census runs and finds mostly regular elements") {
  auto res = census(5, false, 1, 2000, 42);
  CHECK(res.sample_size == 2000);
  int64_t total = 0, reg = 0;
  for (auto& [c, n] : res.counts) {
    total += n;
    if (c.label == ClassLabel::Reg) reg += n;
  }
  CHECK(total == 2000);
  CHECK(reg > 1800);
  CHECK_THROWS_AS(census(5, true), TooLarge);
}
