#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rzeta/lattice.hpp"

using namespace rzeta;

TEST_CASE("sl2 structure") {
  auto L = build_sl(2);
  CHECK(L.d == 3);
  auto R = commutator_matrix(L);
  // R = [[0, -2Y1, Y2], [2Y1, 0, -2Y3], [-Y2, 2Y3, 0]]
  auto M = evaluate_fp(R, {1, 0, 0}, 5);  // Y1 = 1
  CHECK(M.at(0, 1) == 5 - 2);
  CHECK(M.at(1, 0) == 2);
  CHECK(M.at(0, 2) == 0);
  auto M2 = evaluate_fp(R, {0, 1, 0}, 5);  // Y2 = 1
  CHECK(M2.at(0, 2) == 1);
  CHECK(M2.at(2, 0) == 4);
  CHECK(M2.at(0, 1) == 0);
  auto M3 = evaluate_fp(R, {0, 0, 1}, 5);  // Y3 = 1
  CHECK(M3.at(1, 2) == 5 - 2);
}

TEST_CASE("sl4 basics") {
  auto L = build_sl(4);
  CHECK(L.d == 15);
  // [e12, f21] = h12
  std::vector<int64_t> e12(15, 0), f21(15, 0);
  e12[3] = 1;
  f21[9] = 1;
  auto br = L.bracket(e12, f21);
  std::vector<int64_t> h12(15, 0);
  h12[0] = 1;
  CHECK(br == h12);
  // commutator matrix entry (e12-row, f21-column) = unit vector at position 1
  auto R = commutator_matrix(L);
  for (int h = 0; h < 15; ++h) CHECK(R.at(3, 9, h) == (h == 0 ? 1 : 0));
  for (int i = 0; i < 15; ++i)
    for (int h = 0; h < 15; ++h) CHECK(R.at(i, i, h) == 0);
}

TEST_CASE("evaluate linearity") {
  auto L = build_sl(4);
  auto R = commutator_matrix(L);
  std::mt19937_64 rng(3);
  std::vector<int64_t> w(15);
  for (auto& x : w) x = int64_t(rng() % 25);
  auto Z = evaluate_zr(R, std::vector<int64_t>(15, 0), 5, 2);
  for (auto v : Z.a) CHECK(v == 0);
  auto M = evaluate_zr(R, w, 5, 2);
  std::vector<int64_t> w3 = w;
  for (auto& x : w3) x = (3 * x) % 25;
  auto M3 = evaluate_zr(R, w3, 5, 2);
  for (size_t k = 0; k < M.a.size(); ++k) CHECK(M3.a[k] == (3 * M.a[k]) % 25);
}

TEST_CASE("killing matrix") {
  auto L = build_sl(4);
  auto K = killing_matrix(L);
  // kappa(h12, h12) = 16, kappa(e14, f41) = 8
  CHECK(K[0] == 16);
  CHECK(K[8 * 15 + 14] == 8);
  __int128 det = integer_determinant(K, 15);
  __int128 want = 4;
  for (int i = 0; i < 15; ++i) want *= 8;
  CHECK(det == want);
  // determinant is a power of two: p-unimodular for every odd p
  __int128 d = det;
  while (d % 2 == 0) d /= 2;
  CHECK(d == 1);
}

TEST_CASE("coords and element round trip") {
  std::mt19937_64 rng(17);
  std::vector<int64_t> h12(15, 0);
  h12[0] = 1;
  auto x = element(h12, 7, 1);
  CHECK(x.at(0, 0) == 1);
  CHECK(x.at(1, 1) == 6);
  CHECK(coords(x) == h12);
  for (int t = 0; t < 1000; ++t) {
    std::vector<int64_t> v(15);
    for (auto& c : v) c = int64_t(rng() % 49);
    auto e = element(v, 7, 2);
    CHECK(e.trace_zero());
    CHECK(coords(e) == v);
  }
  // coords(e12 + e34) has units at positions 4 and 6 (1-based)
  std::array<int64_t, 16> m{};
  m[1] = 1;   // (0,1)
  m[11] = 1;  // (2,3)
  auto y = sl4_from_int(m, 5, 1);
  auto c = coords(y);
  for (int i = 0; i < 15; ++i) CHECK(c[i] == ((i == 3 || i == 5) ? 1 : 0));
  // non-traceless input rejected
  std::array<int64_t, 16> bad{};
  bad[0] = 1;
  CHECK_THROWS_AS(sl4_from_int(bad, 5, 1), NonZeroTrace);
}

TEST_CASE("transpose twist") {
  std::mt19937_64 rng(29);
  // beta(e12) = f21
  std::vector<int64_t> e12(15, 0);
  e12[3] = 1;
  auto b = transpose_twist(element(e12, 5, 1));
  std::vector<int64_t> f21(15, 0);
  f21[9] = 1;
  CHECK(coords(b) == f21);
  for (int t = 0; t < 200; ++t) {
    std::vector<int64_t> v(15), w(15);
    for (auto& c : v) c = int64_t(rng() % 5);
    for (auto& c : w) c = int64_t(rng() % 5);
    auto x = element(v, 5, 1), y = element(w, 5, 1);
    // involution
    CHECK(coords(transpose_twist(transpose_twist(x))) == v);
    // anti-automorphism: beta([x,y]) = [beta(y), beta(x)]
    auto lhs = transpose_twist(sl4_bracket(x, y));
    auto rhs = sl4_bracket(transpose_twist(y), transpose_twist(x));
    CHECK(lhs.m == rhs.m);
  }
}

TEST_CASE("centralizers of cross-section style elements") {
  auto L = build_sl(4);
  // x = e12 + e34: centralizer dimension 7 over F_3
  std::vector<int64_t> v(15, 0);
  v[3] = 1;
  v[5] = 1;
  CHECK(centralizer_fp(L, v, 3).dim() == 7);
  // centralizer(0) = full space
  CHECK(centralizer_fp(L, std::vector<int64_t>(15, 0), 3).dim() == 15);
  // diag(3a,-a,-a,-a) + e12 with a = 1 over F_5: dimension 9
  std::array<int64_t, 16> m{};
  m[0] = 3;
  m[5] = -1;
  m[10] = -1;
  m[15] = -1;
  m[1] = 1;
  auto x = sl4_from_int(m, 5, 1);
  CHECK(centralizer_fp(L, coords(x), 5).dim() == 9);
}

TEST_CASE("kernel-centralizer bridge on random points") {
  auto L = build_sl(4);
  auto R = commutator_matrix(L);
  std::mt19937_64 rng(37);
  for (int t = 0; t < 2000; ++t) {
    std::vector<int64_t> v(15);
    for (auto& c : v) c = int64_t(rng() % 5);
    auto x = element(v, 5, 1);
    auto bx = killing_dual_coords(x);
    std::vector<int32_t> w(bx.begin(), bx.end());
    auto ker = rank_and_kernel(evaluate_fp(R, w, 5)).second;
    auto cen = centralizer_fp(L, v, 5);
    CHECK(subspace_equal(ker, cen));
  }
}

TEST_CASE("derived dimension") {
  auto L = build_sl(4);
  // full sl4 over F_3 is perfect
  FpMatrix full(3, 15, 15);
  for (int i = 0; i < 15; ++i) full.at(i, i) = 1;
  CHECK(derived_dim(L, span_rows(full)) == 15);
  // centralizer of e12+e34 has derived dimension 6
  std::vector<int64_t> v(15, 0);
  v[3] = 1;
  v[5] = 1;
  CHECK(derived_dim(L, centralizer_fp(L, v, 3)) == 6);
  // abelian regular centralizer
  std::array<int64_t, 16> m{};  // diag(1,2,-1,-2)
  m[0] = 1; m[5] = 2; m[10] = -1; m[15] = -2;
  auto x = sl4_from_int(m, 7, 1);
  auto C = centralizer_fp(L, coords(x), 7);
  CHECK(C.dim() == 3);
  CHECK(derived_dim(L, C) == 0);
  // a non-subalgebra is rejected
  FpMatrix rows(3, 1, 15);
  rows.at(0, 3) = 1;  // span{e12} is fine (abelian) ...
  CHECK(derived_dim(L, span_rows(rows)) == 0);
  FpMatrix rows2(3, 2, 15);
  rows2.at(0, 3) = 1;  // e12
  rows2.at(1, 9) = 1;  // f21: [e12,f21] = h12 not in span
  CHECK_THROWS_AS(derived_dim(L, span_rows(rows2)), NotSubalgebra);
}

TEST_CASE("subalgebra commutator matrix of the subregular nilpotent centralizer") {
  auto L = build_sl(4);
  // a = C_[3,1](0,0): e23 + e34 shape -- per cross-section with alpha=beta=0:
  // rows: [[0,0,0,0],[0,0,1,0],[0,0,0,1],[0,0,0,0]]
  std::array<int64_t, 16> m{};
  m[6] = 1;   // (1,2)
  m[11] = 1;  // (2,3)
  auto a = sl4_from_int(m, 5, 1);
  auto C = centralizer_fp(L, coords(a), 5);
  REQUIRE(C.dim() == 5);
  // table basis: c0 = e14, c1 = e21, c2 = e24, c3 = e23+e34, c4 = -3e11+e22+e33+e44
  std::array<std::array<int64_t, 16>, 5> basis{};
  basis[0][3] = 1;                                      // e14
  basis[1][4] = 1;                                      // e21
  basis[2][7] = 1;                                      // e24
  basis[3][6] = 1; basis[3][11] = 1;                    // e23 + e34
  basis[4][0] = -3; basis[4][5] = 1; basis[4][10] = 1; basis[4][15] = 1;
  FpMatrix rows(5, 5, 15);
  for (int i = 0; i < 5; ++i) {
    auto c = coords(sl4_from_int(basis[i], 5, 1));
    for (int j = 0; j < 15; ++j) rows.at(i, j) = int32_t(c[j]);
  }
  // the table basis spans the centralizer
  CHECK(subspace_equal(span_rows(rows), C));
  auto R = subalgebra_commutator_matrix(L, rows);
  // displayed matrix: [[0,-Y2,0,0,4Y0],[Y2,0,0,0,-4Y1],[0,..],[0,..],[-4Y0,4Y1,0,0,0]]
  auto M = evaluate_fp(R, {1, 0, 0, 0, 0}, 5);  // Y0 = 1
  CHECK(M.at(0, 4) == 4);
  CHECK(M.at(4, 0) == 1);  // -4 mod 5
  auto M2 = evaluate_fp(R, {0, 1, 0, 0, 0}, 5);  // Y1 = 1
  CHECK(M2.at(1, 4) == 1);  // -4 mod 5
  CHECK(M2.at(4, 1) == 4);
  auto M3 = evaluate_fp(R, {0, 0, 1, 0, 0}, 5);  // Y2 = 1
  CHECK(M3.at(0, 1) == 4);  // -1 mod 5
  CHECK(M3.at(1, 0) == 1);
  // rows 2 and 3 of the form matrix vanish identically
  for (int h = 0; h < 5; ++h) {
    for (int j = 0; j < 5; ++j) {
      CHECK(R.at(2, j, h) == 0);
      CHECK(R.at(3, j, h) == 0);
    }
  }
  // abelian subspace gives the zero matrix
  FpMatrix ab(5, 2, 15);
  ab.at(0, 3) = 1;  // e12
  ab.at(1, 6) = 1;  // e13
  auto Rab = subalgebra_commutator_matrix(L, ab);
  for (auto c : Rab.coeff) CHECK(c == 0);
}

TEST_CASE("structure constants dump and load round trip") {
  for (int n : {2, 3, 4}) {
    auto L = build_sl(n);
    auto text = dump_structure_constants(L);
    auto L2 = load_structure_constants(text, L.name);
    CHECK(L2.d == L.d);
    CHECK(L2.constants == L.constants);
  }
}

TEST_CASE("sl centralizer dims land in the sheet list") {
  auto L = build_sl(4);
  std::mt19937_64 rng(43);
  for (int t = 0; t < 3000; ++t) {
    std::vector<int64_t> v(15);
    for (auto& c : v) c = int64_t(rng() % 3);
    int k = centralizer_fp(L, v, 3).dim();
    bool ok = k == 3 || k == 5 || k == 7 || k == 9 || k == 15;
    CHECK(ok);
  }
}
