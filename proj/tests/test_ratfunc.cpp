#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rzeta/ratfunc.hpp"

using namespace rzeta;

namespace {

BivariateRational random_ratfunc(std::mt19937_64& rng) {
  auto rand_poly = [&](bool nonzero) {
    LaurentPoly P;
    int k = 1 + int(rng() % 4);
    for (int i = 0; i < k; ++i)
      P.add_term(int(rng() % 7) - 3, int(rng() % 7) - 3, int(rng() % 9) - 4);
    if (nonzero && P.is_zero()) P.add_term(0, 0, 1);
    return P;
  };
  return {rand_poly(false), rand_poly(true)};
}

}  // namespace

TEST_CASE("laurent arithmetic basics") {
  // (1 - q t^3) + (q t^3) = 1
  auto a = LaurentPoly::constant(1) - LaurentPoly::monomial(1, 1, 3);
  auto b = LaurentPoly::monomial(1, 1, 3);
  CHECK(a + b == LaurentPoly::constant(1));

  // x/(1-x) + 1 = 1/(1-x) for x = q^3 t^6
  auto x = LaurentPoly::monomial(1, 3, 6);
  auto one_minus = LaurentPoly::constant(1) - x;
  BivariateRational lhs = BivariateRational(x, one_minus) +
                          BivariateRational(LaurentPoly::constant(1), LaurentPoly::constant(1));
  BivariateRational rhs(LaurentPoly::constant(1), one_minus);
  CHECK(equals(lhs, rhs));

  // (a/b)*(c/d) = (ac)/(bd)
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    auto A = random_ratfunc(rng), B = random_ratfunc(rng);
    auto P = A * B;
    CHECK(P.num == A.num * B.num);
    CHECK(P.den == A.den * B.den);
  }
  CHECK_THROWS_AS(BivariateRational(LaurentPoly::constant(1), LaurentPoly()), ZeroDenominator);
}

TEST_CASE("equality by cross multiplication") {
  // (q^2-1)/(q-1) == (q+1)/1
  LaurentPoly q2m1 = LaurentPoly::q_power(2) - LaurentPoly::constant(1);
  LaurentPoly qm1 = LaurentPoly::q_power(1) - LaurentPoly::constant(1);
  LaurentPoly qp1 = LaurentPoly::q_power(1) + LaurentPoly::constant(1);
  CHECK(equals({q2m1, qm1}, {qp1, LaurentPoly::constant(1)}));

  auto one = LaurentPoly::constant(1);
  BivariateRational A(one, one - LaurentPoly::monomial(1, 1, 1));
  BivariateRational B(one, one - LaurentPoly::monomial(1, 1, 2));
  CHECK_FALSE(equals(A, B));
  CHECK(equals(A, A));
}

TEST_CASE("equality is an equivalence relation on random functions") {
  std::mt19937_64 rng(9);
  std::vector<BivariateRational> fs;
  for (int i = 0; i < 40; ++i) fs.push_back(random_ratfunc(rng));
  for (auto& f : fs) CHECK(equals(f, f));
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < i; ++j) {
      bool ij = equals(fs[i], fs[j]);
      CHECK(ij == equals(fs[j], fs[i]));
    }
  // transitivity spot check: scaled copies are all equal
  auto f = random_ratfunc(rng);
  auto two = LaurentPoly::constant(2), three = LaurentPoly::constant(3);
  BivariateRational f2(f.num * two, f.den * two), f3(f.num * three, f.den * three);
  CHECK(equals(f, f2));
  CHECK(equals(f2, f3));
  CHECK(equals(f, f3));
}

TEST_CASE("substitution") {
  // t -> q^-2 t applied to q^15 t^6 gives q^3 t^6
  auto P = LaurentPoly::monomial(1, 15, 6);
  CHECK(P.substitute_monomial(1, 1, -2) == LaurentPoly::monomial(1, 3, 6));
  // q -> 1/q, t -> 1/t applied to 1 - q t^3
  auto Q = LaurentPoly::constant(1) - LaurentPoly::monomial(1, 1, 3);
  CHECK(Q.substitute_monomial(-1, -1, 0) ==
        LaurentPoly::constant(1) - LaurentPoly::monomial(1, -1, -3));
  // double inversion is the identity
  std::mt19937_64 rng(13);
  for (int t = 0; t < 100; ++t) {
    auto A = random_ratfunc(rng);
    auto B = A.substitute_monomial(-1, -1, 0).substitute_monomial(-1, -1, 0);
    CHECK(A.num == B.num);
    CHECK(A.den == B.den);
  }
  // evaluation at a rational point
  auto F = LaurentPoly::monomial(1, 15, 6);
  CHECK(F.evaluate(3, Rational(1, 9)) == Rational(14348907) / Rational(531441));
}

TEST_CASE("evaluation is multiplicative") {
  std::mt19937_64 rng(21);
  int done = 0;
  while (done < 100) {
    auto A = random_ratfunc(rng), B = random_ratfunc(rng);
    Rational q(int(rng() % 7) + 2), t(int(rng() % 5) + 1, int(rng() % 3) + 2);
    try {
      Rational lhs = (A * B).evaluate(q, t);
      Rational rhs = A.evaluate(q, t) * B.evaluate(q, t);
      CHECK(lhs == rhs);
      ++done;
    } catch (const ZeroDenominator&) {
      // denominator vanished at the sample point; draw again
    }
  }
}

TEST_CASE("reciprocity exponents") {
  // 1 + t -> (0, 1)
  auto P = LaurentPoly::constant(1) + LaurentPoly::monomial(1, 0, 1);
  CHECK(reciprocity_exponents(P) == std::pair<int, int>{0, 1});
  // q + t is palindromic with (1, 1); 1 + q + t is not
  auto Q = LaurentPoly::q_power(1) + LaurentPoly::monomial(1, 0, 1);
  CHECK(reciprocity_exponents(Q) == std::pair<int, int>{1, 1});
  CHECK_THROWS_AS(reciprocity_exponents(Q + LaurentPoly::constant(1)), NotPalindromic);
  CHECK_THROWS_AS(reciprocity_exponents(LaurentPoly()), NotPalindromic);
  // symmetric product: (1 + q t)(1 + q^3 t) -> a = 4, b = 2
  auto R = (LaurentPoly::constant(1) + LaurentPoly::monomial(1, 1, 1)) *
           (LaurentPoly::constant(1) + LaurentPoly::monomial(1, 3, 1));
  CHECK(reciprocity_exponents(R) == std::pair<int, int>{4, 2});
}

TEST_CASE("t series expansion") {
  // 1/(1 - q t) = sum q^k t^k
  auto one = LaurentPoly::constant(1);
  BivariateRational A(one, one - LaurentPoly::monomial(1, 1, 1));
  auto S = t_series(A, 8);
  for (int k = 0; k <= 8; ++k) CHECK(S[k] == LaurentPoly::q_power(k));
  // reproduces the numerator when multiplied back
  BivariateRational B(LaurentPoly::monomial(2, 3, 1) + one,
                      (one - LaurentPoly::monomial(1, 2, 2)) * LaurentPoly::q_power(4));
  auto SB = t_series(B, 10);
  LaurentPoly acc;
  for (int k = 0; k <= 10; ++k) acc = acc + SB[k] * LaurentPoly::monomial(1, 0, k);
  // acc * den - num must vanish up to t^10
  auto resid = acc * B.den - B.num;
  for (auto& [m, c] : resid.terms()) CHECK(m.second > 10);
}

TEST_CASE("pretty printing and serialization") {
  auto P = LaurentPoly::monomial(1, 1, 18) - LaurentPoly::monomial(Rational(1, 2), 7, 15) +
           LaurentPoly::q_power(9);
  CHECK(P.pretty() == "q*t^18 - 1/2*q^7*t^15 + q^9");
  auto quads = serialize_terms(P);
  REQUIRE(quads.size() == 3);
  CHECK(quads[0] == std::array<std::string, 4>{"1", "18", "1", "1"});
  CHECK(quads[1] == std::array<std::string, 4>{"7", "15", "-1", "2"});
  CHECK(quads[2] == std::array<std::string, 4>{"9", "0", "1", "1"});
}
