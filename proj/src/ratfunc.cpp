#include "rzeta/ratfunc.hpp"

#include <array>
#include <sstream>

namespace rzeta {

LaurentPoly LaurentPoly::constant(const Rational& c) { return monomial(c, 0, 0); }

LaurentPoly LaurentPoly::monomial(const Rational& c, int eq, int et) {
  LaurentPoly P;
  if (c != 0) P.terms_[{eq, et}] = c;
  return P;
}

void LaurentPoly::add_term(int eq, int et, const Rational& c) {
  if (c == 0) return;
  if (std::abs(eq) > 10000 || std::abs(et) > 10000) throw Error("exponent guard exceeded");
  auto it = terms_.find({eq, et});
  if (it == terms_.end()) {
    terms_[{eq, et}] = c;
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly R = *this;
  for (auto& [m, c] : o.terms_) R.add_term(m.first, m.second, c);
  return R;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly R = *this;
  for (auto& [m, c] : o.terms_) R.add_term(m.first, m.second, -c);
  return R;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly R;
  for (auto& [m, c] : terms_) R.terms_[m] = -c;
  return R;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly R;
  for (auto& [m1, c1] : terms_)
    for (auto& [m2, c2] : o.terms_)
      R.add_term(m1.first + m2.first, m1.second + m2.second, c1 * c2);
  return R;
}

LaurentPoly LaurentPoly::substitute_monomial(int a, int b, int c) const {
  if ((a != 1 && a != -1) || (b != 1 && b != -1))
    throw Error("substitution must send q, t to monomial times q^'+-1', t^'+-1'");
  LaurentPoly R;
  for (auto& [m, co] : terms_)
    R.add_term(a * m.first + c * m.second, b * m.second, co);
  return R;
}

LaurentPoly LaurentPoly::collapse_t(int k) const {
  LaurentPoly R;
  for (auto& [m, co] : terms_) R.add_term(m.first + k * m.second, 0, co);
  return R;
}

namespace {

Rational rat_pow(const Rational& x, int e) {
  if (e < 0) {
    if (x == 0) throw ZeroDenominator();
    return Rational(1) / rat_pow(x, -e);
  }
  Rational r = 1, b = x;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace

Rational LaurentPoly::evaluate(const Rational& q, const Rational& t) const {
  Rational s = 0;
  for (auto& [m, c] : terms_) s += c * rat_pow(q, m.first) * rat_pow(t, m.second);
  return s;
}

std::string LaurentPoly::pretty() const {
  if (terms_.empty()) return "0";
  // descending t-degree, then descending q-degree
  std::vector<std::pair<Mono, Rational>> v(terms_.begin(), terms_.end());
  std::sort(v.begin(), v.end(), [](auto& a, auto& b) {
    if (a.first.second != b.first.second) return a.first.second > b.first.second;
    return a.first.first > b.first.first;
  });
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : v) {
    Rational ac = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool unit = (ac == 1) && (m.first != 0 || m.second != 0);
    if (!unit) os << ac.str();
    if (m.first != 0) {
      if (!unit) os << "*";
      os << "q";
      if (m.first != 1) os << "^" << m.first;
    }
    if (m.second != 0) {
      if (m.first != 0 || !unit) os << "*";
      os << "t";
      if (m.second != 1) os << "^" << m.second;
    }
  }
  return os.str();
}

std::pair<int, int> reciprocity_exponents(const LaurentPoly& P) {
  if (P.is_zero()) throw NotPalindromic();
  const auto& T = P.terms();
  // the involution (e,f) -> (a-e, b-f) reverses lex order, so it must pair the
  // lex extremes; that forces (a, b)
  Mono lo = T.begin()->first, hi = T.rbegin()->first;
  int a = lo.first + hi.first, b = lo.second + hi.second;
  for (auto& [m, c] : T) {
    auto it = T.find({a - m.first, b - m.second});
    if (it == T.end() || it->second != c) throw NotPalindromic();
  }
  return {a, b};
}

BivariateRational::BivariateRational(LaurentPoly n, LaurentPoly d)
    : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw ZeroDenominator();
}

BivariateRational BivariateRational::operator+(const BivariateRational& o) const {
  return {num * o.den + o.num * den, den * o.den};
}

BivariateRational BivariateRational::operator-(const BivariateRational& o) const {
  return {num * o.den - o.num * den, den * o.den};
}

BivariateRational BivariateRational::operator*(const BivariateRational& o) const {
  return {num * o.num, den * o.den};
}

BivariateRational BivariateRational::operator-() const { return {-num, den}; }

BivariateRational BivariateRational::substitute_monomial(int a, int b, int c) const {
  return {num.substitute_monomial(a, b, c), den.substitute_monomial(a, b, c)};
}

Rational BivariateRational::evaluate(const Rational& q, const Rational& t) const {
  Rational d = den.evaluate(q, t);
  if (d == 0) throw ZeroDenominator();
  return num.evaluate(q, t) / d;
}

bool equals(const BivariateRational& A, const BivariateRational& B) {
  return A.num * B.den == B.num * A.den;
}

std::vector<LaurentPoly> t_series(const BivariateRational& A, int deg) {
  // split numerator and denominator by t-degree
  auto split = [&](const LaurentPoly& P) {
    std::map<int, LaurentPoly> by_t;
    for (auto& [m, c] : P.terms()) by_t[m.second].add_term(m.first, 0, c);
    return by_t;
  };
  auto N = split(A.num), D = split(A.den);
  int tmin = D.begin()->first;
  // normalize so the denominator starts at t^0
  if (tmin != 0) {
    std::map<int, LaurentPoly> D2, N2;
    for (auto& [k, P] : D) D2[k - tmin] = P;
    for (auto& [k, P] : N) N2[k - tmin] = P;
    D = std::move(D2);
    N = std::move(N2);
  }
  if (!N.empty() && N.begin()->first < 0)
    throw Error("t_series: numerator has lower t-order than denominator");
  const LaurentPoly& D0 = D.at(0);
  if (D0.terms().size() != 1) throw Error("t_series: denominator t-constant must be a monomial");
  auto [d0m, d0c] = *D0.terms().begin();
  if (d0m.second != 0) throw Error("t_series: internal");
  LaurentPoly d0inv = LaurentPoly::monomial(Rational(1) / d0c, -d0m.first, 0);

  std::vector<LaurentPoly> S(deg + 1);
  for (int k = 0; k <= deg; ++k) {
    LaurentPoly acc = N.count(k) ? N.at(k) : LaurentPoly();
    for (int j = 1; j <= k; ++j) {
      if (!D.count(j) || S[k - j].is_zero()) continue;
      acc = acc - D.at(j) * S[k - j];
    }
    S[k] = acc * d0inv;
  }
  return S;
}

std::vector<std::array<std::string, 4>> serialize_terms(const LaurentPoly& P) {
  std::vector<std::array<std::string, 4>> out;
  for (auto& [m, c] : P.terms())
    out.push_back({std::to_string(m.first), std::to_string(m.second),
                   boost::multiprecision::numerator(c).str(),
                   boost::multiprecision::denominator(c).str()});
  return out;
}

}  // namespace rzeta
