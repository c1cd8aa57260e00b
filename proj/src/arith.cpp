#include "rzeta/arith.hpp"

#include <limits>

namespace rzeta {

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int64_t ipow(int64_t p, int e) {
  int64_t v = 1;
  for (int i = 0; i < e; ++i) {
    if (v > std::numeric_limits<int64_t>::max() / p)
      throw Error("ipow overflow");
    v *= p;
  }
  return v;
}

static int64_t norm_mod(int64_t v, int64_t m) {
  v %= m;
  return v < 0 ? v + m : v;
}

FieldElem::FieldElem(int64_t v, int64_t prime) : p(prime) {
  if (prime < 3 || !is_prime(prime)) throw Error("field modulus must be an odd prime");
  value = norm_mod(v, prime);
}

FieldElem FieldElem::operator+(FieldElem o) const { return {norm_mod(value + o.value, p), p}; }
FieldElem FieldElem::operator-(FieldElem o) const { return {norm_mod(value - o.value, p), p}; }
FieldElem FieldElem::operator*(FieldElem o) const { return {norm_mod(value * o.value, p), p}; }
FieldElem FieldElem::operator-() const { return {norm_mod(-value, p), p}; }

FieldElem field_inverse(FieldElem a) {
  if (a.value == 0) throw ZeroInverse();
  // extended Euclid
  int64_t t = 0, nt = 1, r = a.p, nr = a.value;
  while (nr != 0) {
    int64_t qt = r / nr;
    int64_t tmp = t - qt * nt; t = nt; nt = tmp;
    tmp = r - qt * nr; r = nr; nr = tmp;
  }
  return {norm_mod(t, a.p), a.p};
}

bool is_square(FieldElem a) {
  if (a.value == 0) return true;
  // Euler: a^((p-1)/2) == 1
  int64_t e = (a.p - 1) / 2, base = a.value, acc = 1;
  while (e) {
    if (e & 1) acc = (acc * base) % a.p;
    base = (base * base) % a.p;
    e >>= 1;
  }
  return acc == 1;
}

RingElem::RingElem(int64_t v, int64_t prime, int level) : p(prime), r(level) {
  if (prime < 3 || !is_prime(prime)) throw Error("ring prime must be an odd prime");
  if (level < 1) throw BadLevel("level must be >= 1");
  value = norm_mod(v, ipow(prime, level));
}

RingElem RingElem::operator+(RingElem o) const { return {value + o.value, p, r}; }
RingElem RingElem::operator-(RingElem o) const { return {value - o.value, p, r}; }
RingElem RingElem::operator*(RingElem o) const { return {value * o.value, p, r}; }
RingElem RingElem::operator-() const { return {-value, p, r}; }

int valuation(const RingElem& x) {
  if (x.value == 0) return x.r;
  int v = 0;
  int64_t n = x.value;
  while (n % x.p == 0) { n /= x.p; ++v; }
  return v;
}

RingElem reduce_level(const RingElem& x, int t) {
  if (t < 1 || t > x.r) throw BadLevel("reduce_level: target level out of range");
  return {x.value % ipow(x.p, t), x.p, t};
}

ZrCtx::ZrCtx(int64_t prime, int level) : p(prime), r(level) {
  if (prime < 3 || !is_prime(prime)) throw Error("ring prime must be an odd prime");
  if (level < 1) throw BadLevel("level must be >= 1");
  m = ipow(prime, level);
  if (m > (int64_t(1) << 30)) throw Error("modulus too large for ZrCtx fast arithmetic");
}

int ZrCtx::val(int64_t a) const {
  if (a == 0) return r;
  int v = 0;
  while (a % p == 0) { a /= p; ++v; }
  return v;
}

int64_t ZrCtx::unit_inverse(int64_t a) const {
  if (a % p == 0) throw ZeroInverse();
  int64_t t = 0, nt = 1, rr = m, nr = a;
  while (nr != 0) {
    int64_t qt = rr / nr;
    int64_t tmp = t - qt * nt; t = nt; nt = tmp;
    tmp = rr - qt * nr; rr = nr; nr = tmp;
  }
  t %= m;
  return t < 0 ? t + m : t;
}

}  // namespace rzeta
