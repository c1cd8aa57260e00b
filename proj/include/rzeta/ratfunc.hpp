#pragma once
#include <array>
#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rzeta/errors.hpp"

namespace rzeta {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exponent pair (power of q, power of t).
using Mono = std::pair<int, int>;

/// Laurent polynomial in (q, t) with exact rational coefficients.  Zero
/// coefficients are never stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly constant(const Rational& c);
  static LaurentPoly monomial(const Rational& c, int eq, int et);
  static LaurentPoly q_power(int e) { return monomial(1, e, 0); }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Mono, Rational>& terms() const { return terms_; }
  void add_term(int eq, int et, const Rational& c);

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  bool operator==(const LaurentPoly&) const = default;

  /// Exact substitution q -> q^a, t -> q^c t^b with a, b in {1, -1}.
  LaurentPoly substitute_monomial(int a, int b, int c) const;
  /// Collapse t -> q^k (exponent map (eq, et) -> eq + k*et).
  LaurentPoly collapse_t(int k) const;
  Rational evaluate(const Rational& q, const Rational& t) const;

  std::string pretty() const;  // descending t-degree, then descending q-degree

 private:
  std::map<Mono, Rational> terms_;
};

/// Unique (a, b) with q^a t^b P(1/q, 1/t) = P, if it exists.
std::pair<int, int> reciprocity_exponents(const LaurentPoly& P);  // NotPalindromic

/// Ratio of Laurent polynomials; no gcd normalization, equality by
/// cross-multiplication.
struct BivariateRational {
  LaurentPoly num;
  LaurentPoly den = LaurentPoly::constant(1);

  BivariateRational() = default;
  BivariateRational(LaurentPoly n, LaurentPoly d);

  BivariateRational operator+(const BivariateRational& o) const;
  BivariateRational operator-(const BivariateRational& o) const;
  BivariateRational operator*(const BivariateRational& o) const;
  BivariateRational operator-() const;

  BivariateRational substitute_monomial(int a, int b, int c) const;
  Rational evaluate(const Rational& q, const Rational& t) const;
};

bool equals(const BivariateRational& A, const BivariateRational& B);

/// Coefficients of the t-expansion of N/D up to t^deg, as Laurent polynomials
/// in q.  D must have a nonzero constant term in t whose q-part is a unit
/// monomial (the case for all assembled denominators here).
std::vector<LaurentPoly> t_series(const BivariateRational& A, int deg);

/// JSON-ready sorted quadruples (eq, et, num, den).
std::vector<std::array<std::string, 4>> serialize_terms(const LaurentPoly& P);

}  // namespace rzeta
