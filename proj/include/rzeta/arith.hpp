#pragma once
#include <cstdint>
#include <vector>

#include "rzeta/errors.hpp"

namespace rzeta {

bool is_prime(int64_t n);

/// p^e for small arguments, checked against int64 overflow.
int64_t ipow(int64_t p, int e);

/// Element of the prime field F_p, p an odd prime.
struct FieldElem {
  int64_t value = 0;
  int64_t p = 3;

  FieldElem() = default;
  FieldElem(int64_t v, int64_t prime);

  FieldElem operator+(FieldElem o) const;
  FieldElem operator-(FieldElem o) const;
  FieldElem operator*(FieldElem o) const;
  FieldElem operator-() const;
  bool operator==(const FieldElem&) const = default;
};

FieldElem field_inverse(FieldElem a);  // throws ZeroInverse on a = 0
bool is_square(FieldElem a);           // Euler criterion; true for 0

/// Element of Z/p^r.
struct RingElem {
  int64_t value = 0;
  int64_t p = 3;
  int r = 1;

  RingElem() = default;
  RingElem(int64_t v, int64_t prime, int level);

  int64_t modulus() const { return ipow(p, r); }
  RingElem operator+(RingElem o) const;
  RingElem operator-(RingElem o) const;
  RingElem operator*(RingElem o) const;
  RingElem operator-() const;
  bool operator==(const RingElem&) const = default;
};

/// Largest v <= r with p^v | value; v(0) = r.
int valuation(const RingElem& x);

/// Reduction Z/p^r -> Z/p^t, 1 <= t <= r.  Throws BadLevel otherwise.
RingElem reduce_level(const RingElem& x, int t);

/// Mod-p^r arithmetic context for matrix kernels: plain int64 values in
/// [0, p^r), no per-element modulus storage.
struct ZrCtx {
  int64_t p;
  int r;
  int64_t m;  // p^r
  ZrCtx(int64_t prime, int level);

  int64_t add(int64_t a, int64_t b) const { int64_t s = a + b; return s >= m ? s - m : s; }
  int64_t sub(int64_t a, int64_t b) const { int64_t s = a - b; return s < 0 ? s + m : s; }
  int64_t mul(int64_t a, int64_t b) const { return (a * b) % m; }
  int64_t neg(int64_t a) const { return a == 0 ? 0 : m - a; }
  int64_t reduce(int64_t a) const { a %= m; return a < 0 ? a + m : a; }
  int val(int64_t a) const;                 // valuation, val(0) = r
  int64_t unit_inverse(int64_t a) const;    // a must be a unit
};

}  // namespace rzeta
