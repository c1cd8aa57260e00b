#include "rzeta/lattice.hpp"

#include <sstream>

#include "rzeta/errors.hpp"

namespace rzeta {

LieLattice::LieLattice(int dim, std::string tag, std::vector<int32_t> consts)
    : d(dim), name(std::move(tag)), constants(std::move(consts)) {
  if (int64_t(constants.size()) != int64_t(d) * d * d)
    throw Error("structure constant array has wrong size");
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int h = 0; h < d; ++h)
        if (lambda(i, j, h) != -lambda(j, i, h))
          throw Error("structure constants are not antisymmetric");
  // Jacobi identity over Z
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k)
        for (int h = 0; h < d; ++h) {
          int64_t s = 0;
          for (int m = 0; m < d; ++m)
            s += int64_t(lambda(j, k, m)) * lambda(i, m, h) +
                 int64_t(lambda(k, i, m)) * lambda(j, m, h) +
                 int64_t(lambda(i, j, m)) * lambda(k, m, h);
          if (s != 0) throw Error("Jacobi identity fails");
        }
}

std::vector<int64_t> LieLattice::bracket(const std::vector<int64_t>& x,
                                         const std::vector<int64_t>& y) const {
  std::vector<int64_t> z(d, 0);
  for (int i = 0; i < d; ++i) {
    if (!x[i]) continue;
    for (int j = 0; j < d; ++j) {
      if (!y[j]) continue;
      int64_t c = x[i] * y[j];
      for (int h = 0; h < d; ++h) z[h] += c * lambda(i, j, h);
    }
  }
  return z;
}

namespace {

using Mat = std::vector<std::vector<int64_t>>;  // n x n integer matrices

Mat unit(int n, int i, int j) {
  Mat m(n, std::vector<int64_t>(n, 0));
  m[i][j] = 1;
  return m;
}

Mat msub(const Mat& a, const Mat& b) {
  Mat c = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) c[i][j] -= b[i][j];
  return c;
}

Mat mmul(const Mat& a, const Mat& b) {
  int n = int(a.size());
  Mat c(n, std::vector<int64_t>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (a[i][k])
        for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Mat mbracket(const Mat& a, const Mat& b) { return msub(mmul(a, b), mmul(b, a)); }

// basis matrices of sl_n in the canonical order
std::vector<Mat> sl_basis(int n) {
  std::vector<Mat> B;
  if (n == 2) {
    B.push_back(unit(2, 0, 1));                      // e
    B.push_back(msub(unit(2, 0, 0), unit(2, 1, 1))); // h
    B.push_back(unit(2, 1, 0));                      // f
  } else if (n == 3) {
    B.push_back(msub(unit(3, 0, 0), unit(3, 1, 1)));  // h12
    B.push_back(msub(unit(3, 1, 1), unit(3, 2, 2)));  // h23
    B.push_back(unit(3, 0, 1));                       // e12
    B.push_back(unit(3, 1, 2));                       // e23
    B.push_back(unit(3, 0, 2));                       // e13
    B.push_back(unit(3, 1, 0));                       // f21
    B.push_back(unit(3, 2, 1));                       // f32
    B.push_back(unit(3, 2, 0));                       // f31
  } else if (n == 4) {
    B.push_back(msub(unit(4, 0, 0), unit(4, 1, 1)));  // h12
    B.push_back(msub(unit(4, 1, 1), unit(4, 2, 2)));  // h23
    B.push_back(msub(unit(4, 2, 2), unit(4, 3, 3)));  // h34
    B.push_back(unit(4, 0, 1));                       // e12
    B.push_back(unit(4, 1, 2));                       // e23
    B.push_back(unit(4, 2, 3));                       // e34
    B.push_back(unit(4, 0, 2));                       // e13
    B.push_back(unit(4, 1, 3));                       // e24
    B.push_back(unit(4, 0, 3));                       // e14
    B.push_back(unit(4, 1, 0));                       // f21
    B.push_back(unit(4, 2, 1));                       // f32
    B.push_back(unit(4, 3, 2));                       // f43
    B.push_back(unit(4, 2, 0));                       // f31
    B.push_back(unit(4, 3, 1));                       // f42
    B.push_back(unit(4, 3, 0));                       // f41
  } else {
    throw Error("build_sl: n must be 2, 3 or 4");
  }
  return B;
}

// coordinates of a traceless matrix w.r.t. sl_basis(n); diagonal entries are
// recovered from telescoping h-coordinates
std::vector<int64_t> sl_coords(int n, const Mat& m) {
  std::vector<int64_t> c;
  if (n == 2) {
    c = {m[0][1], m[0][0], m[1][0]};
  } else if (n == 3) {
    c = {m[0][0], m[0][0] + m[1][1], m[0][1], m[1][2], m[0][2], m[1][0], m[2][1], m[2][0]};
  } else {
    c = {m[0][0], m[0][0] + m[1][1], m[0][0] + m[1][1] + m[2][2],
         m[0][1], m[1][2], m[2][3], m[0][2], m[1][3], m[0][3],
         m[1][0], m[2][1], m[3][2], m[2][0], m[3][1], m[3][0]};
  }
  return c;
}

}  // namespace

LieLattice build_sl(int n) {
  auto B = sl_basis(n);
  int d = int(B.size());
  std::vector<int32_t> lambda(size_t(d) * d * d, 0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      auto c = sl_coords(n, mbracket(B[i], B[j]));
      for (int h = 0; h < d; ++h) lambda[(size_t(i) * d + j) * d + h] = int32_t(c[h]);
    }
  return LieLattice(d, "sl" + std::to_string(n), std::move(lambda));
}

LinearFormMatrix commutator_matrix(const LieLattice& L) {
  LinearFormMatrix R(L.d);
  R.coeff.assign(L.constants.begin(), L.constants.end());
  return R;
}

FpMatrix evaluate_fp(const LinearFormMatrix& R, const std::vector<int32_t>& w, int64_t p) {
  const int d = R.d;
  FpMatrix M(p, d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      int64_t s = 0;
      for (int h = 0; h < d; ++h) s += int64_t(R.at(i, j, h)) * w[h];
      s %= p;
      if (s < 0) s += p;
      M.at(i, j) = int32_t(s);
      M.at(j, i) = int32_t(s ? p - s : 0);
    }
  return M;
}

ZrMatrix evaluate_zr(const LinearFormMatrix& R, const std::vector<int64_t>& w, int64_t p, int r) {
  const int d = R.d;
  ZrMatrix M(p, r, d, d);
  const int64_t m = M.modulus();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      int64_t s = 0;
      for (int h = 0; h < d; ++h) s += R.at(i, j, h) * (w[h] % m);
      s %= m;
      if (s < 0) s += m;
      M.at(i, j) = s;
      M.at(j, i) = s ? m - s : 0;
    }
  return M;
}

std::vector<int64_t> killing_matrix(const LieLattice& sl4) {
  if (sl4.d != 15) throw Error("killing_matrix expects the built-in sl4");
  auto B = sl_basis(4);
  std::vector<int64_t> K(15 * 15);
  for (int i = 0; i < 15; ++i)
    for (int j = 0; j < 15; ++j) {
      Mat prod = mmul(B[i], B[j]);
      int64_t tr = prod[0][0] + prod[1][1] + prod[2][2] + prod[3][3];
      K[size_t(i) * 15 + j] = 8 * tr;
    }
  return K;
}

__int128 integer_determinant(const std::vector<int64_t>& M0, int n) {
  // Bareiss fraction-free elimination
  std::vector<__int128> M(M0.begin(), M0.end());
  auto at = [&](int i, int j) -> __int128& { return M[size_t(i) * n + j]; };
  __int128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int s = -1;
      for (int i = k + 1; i < n; ++i)
        if (at(i, k) != 0) { s = i; break; }
      if (s < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(s, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

bool Sl4Element::trace_zero() const {
  return (at(0, 0) + at(1, 1) + at(2, 2) + at(3, 3)) % modulus() == 0;
}

Sl4Element sl4_zero(int64_t p, int r) {
  Sl4Element x;
  x.p = p;
  x.r = r;
  return x;
}

Sl4Element sl4_from_int(const std::array<int64_t, 16>& entries, int64_t p, int r) {
  Sl4Element x = sl4_zero(p, r);
  int64_t m = x.modulus();
  for (int k = 0; k < 16; ++k) {
    int64_t v = entries[k] % m;
    x.m[k] = v < 0 ? v + m : v;
  }
  if (!x.trace_zero()) throw NonZeroTrace();
  return x;
}

std::vector<int64_t> coords(const Sl4Element& x) {
  if (!x.trace_zero()) throw NonZeroTrace();
  int64_t m = x.modulus();
  auto md = [&](int64_t v) { v %= m; return v < 0 ? v + m : v; };
  std::vector<int64_t> c(15);
  c[0] = x.at(0, 0);
  c[1] = md(x.at(0, 0) + x.at(1, 1));
  c[2] = md(x.at(0, 0) + x.at(1, 1) + x.at(2, 2));
  c[3] = x.at(0, 1);
  c[4] = x.at(1, 2);
  c[5] = x.at(2, 3);
  c[6] = x.at(0, 2);
  c[7] = x.at(1, 3);
  c[8] = x.at(0, 3);
  c[9] = x.at(1, 0);
  c[10] = x.at(2, 1);
  c[11] = x.at(3, 2);
  c[12] = x.at(2, 0);
  c[13] = x.at(3, 1);
  c[14] = x.at(3, 0);
  return c;
}

Sl4Element element(const std::vector<int64_t>& v, int64_t p, int r) {
  Sl4Element x = sl4_zero(p, r);
  int64_t m = x.modulus();
  auto md = [&](int64_t a) { a %= m; return a < 0 ? a + m : a; };
  x.at(0, 0) = md(v[0]);
  x.at(1, 1) = md(v[1] - v[0]);
  x.at(2, 2) = md(v[2] - v[1]);
  x.at(3, 3) = md(-v[2]);
  x.at(0, 1) = md(v[3]);
  x.at(1, 2) = md(v[4]);
  x.at(2, 3) = md(v[5]);
  x.at(0, 2) = md(v[6]);
  x.at(1, 3) = md(v[7]);
  x.at(0, 3) = md(v[8]);
  x.at(1, 0) = md(v[9]);
  x.at(2, 1) = md(v[10]);
  x.at(3, 2) = md(v[11]);
  x.at(2, 0) = md(v[12]);
  x.at(3, 1) = md(v[13]);
  x.at(3, 0) = md(v[14]);
  return x;
}

Sl4Element transpose_twist(const Sl4Element& x) {
  Sl4Element t = x;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t.at(i, j) = x.at(j, i);
  return t;
}

std::vector<int64_t> killing_dual_coords(const Sl4Element& x) {
  auto B = sl_basis(4);
  int64_t m = x.modulus();
  std::vector<int64_t> w(15);
  for (int j = 0; j < 15; ++j) {
    int64_t tr = 0;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) tr += B[j][i][k] * x.at(k, i);
    int64_t v = (8 * tr) % m;
    w[j] = v < 0 ? v + m : v;
  }
  return w;
}

Sl4Element sl4_add(const Sl4Element& a, const Sl4Element& b) {
  Sl4Element c = a;
  int64_t m = a.modulus();
  for (int k = 0; k < 16; ++k) c.m[k] = (a.m[k] + b.m[k]) % m;
  return c;
}

Sl4Element sl4_scale(int64_t s, const Sl4Element& a) {
  Sl4Element c = a;
  int64_t m = a.modulus();
  s %= m;
  if (s < 0) s += m;
  for (int k = 0; k < 16; ++k) c.m[k] = (s * a.m[k]) % m;
  return c;
}

Sl4Element sl4_bracket(const Sl4Element& a, const Sl4Element& b) {
  Sl4Element c = sl4_zero(a.p, a.r);
  int64_t m = a.modulus();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      int64_t s = 0;
      for (int k = 0; k < 4; ++k) s += a.at(i, k) * b.at(k, j) - b.at(i, k) * a.at(k, j);
      s %= m;
      c.at(i, j) = s < 0 ? s + m : s;
    }
  return c;
}

ZrMatrix adjoint_matrix(const LieLattice& L, const std::vector<int64_t>& xc, int64_t p, int r) {
  const int d = L.d;
  ZrMatrix A(p, r, d, d);
  const int64_t m = A.modulus();
  // ad(x)_{h, j} = sum_i x_i lambda_{i j}^h
  for (int j = 0; j < d; ++j)
    for (int h = 0; h < d; ++h) {
      int64_t s = 0;
      for (int i = 0; i < d; ++i)
        if (xc[i]) s += (xc[i] % m) * L.lambda(i, j, h);
      s %= m;
      A.at(h, j) = s < 0 ? s + m : s;
    }
  return A;
}

Subspace centralizer_fp(const LieLattice& L, const std::vector<int64_t>& xc, int64_t p) {
  ZrMatrix A = adjoint_matrix(L, xc, p, 1);
  return rank_and_kernel(A.reduce_modp()).second;
}

ZrMatrix centralizer_zr(const LieLattice& L, const std::vector<int64_t>& xc, int64_t p, int r) {
  return module_kernel(adjoint_matrix(L, xc, p, r));
}

namespace {

// solve y * basis_rows = target over F_p; throws NotSubalgebra if unsolvable
std::vector<int32_t> express_in_basis(const FpMatrix& basis_rows,
                                      const std::vector<int64_t>& target, int64_t p) {
  const int k = basis_rows.rows, d = basis_rows.cols;
  FpMatrix aug(p, d, k + 1);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < k; ++j) aug.at(i, j) = basis_rows.at(j, i);
    int64_t t = target[i] % p;
    aug.at(i, k) = int32_t(t < 0 ? t + p : t);
  }
  // gaussian elimination on the augmented system
  std::vector<int> pivot_row_of_col(k, -1);
  int row = 0;
  for (int col = 0; col < k && row < d; ++col) {
    int pr = -1;
    for (int i = row; i < d; ++i)
      if (aug.at(i, col) != 0) { pr = i; break; }
    if (pr < 0) continue;
    for (int j = 0; j <= k; ++j) std::swap(aug.at(pr, j), aug.at(row, j));
    FieldElem inv = field_inverse({aug.at(row, col), p});
    for (int j = col; j <= k; ++j)
      aug.at(row, j) = int32_t((aug.at(row, j) * inv.value) % p);
    for (int i = 0; i < d; ++i) {
      if (i == row) continue;
      int64_t f = aug.at(i, col);
      if (!f) continue;
      for (int j = col; j <= k; ++j)
        aug.at(i, j) = int32_t(((aug.at(i, j) - f * aug.at(row, j)) % p + p) % p);
    }
    pivot_row_of_col[col] = row;
    ++row;
  }
  for (int i = row; i < d; ++i)
    if (aug.at(i, k) != 0) throw NotSubalgebra();
  std::vector<int32_t> y(k, 0);
  for (int col = 0; col < k; ++col)
    if (pivot_row_of_col[col] >= 0) y[col] = aug.at(pivot_row_of_col[col], k);
  return y;
}

}  // namespace

LinearFormMatrix subalgebra_commutator_matrix(const LieLattice& L, const FpMatrix& basis_rows) {
  const int k = basis_rows.rows;
  const int64_t p = basis_rows.p;
  LinearFormMatrix R(k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      std::vector<int64_t> x(basis_rows.cols), y(basis_rows.cols);
      for (int t = 0; t < basis_rows.cols; ++t) { x[t] = basis_rows.at(i, t); y[t] = basis_rows.at(j, t); }
      auto br = L.bracket(x, y);
      auto c = express_in_basis(basis_rows, br, p);
      for (int h = 0; h < k; ++h) {
        R.at(i, j, h) = c[h];
        R.at(j, i, h) = c[h] ? int32_t(p - c[h]) : 0;
      }
    }
  return R;
}

LinearFormMatrix subalgebra_commutator_matrix(const LieLattice& L, const Subspace& S) {
  return subalgebra_commutator_matrix(L, S.basis);
}

int derived_dim(const LieLattice& L, const Subspace& S) {
  const int k = S.dim();
  const int64_t p = S.p;
  FpMatrix brackets(p, k * (k - 1) / 2, S.ambient);
  int row = 0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      std::vector<int64_t> x(S.ambient), y(S.ambient);
      for (int t = 0; t < S.ambient; ++t) { x[t] = S.basis.at(i, t); y[t] = S.basis.at(j, t); }
      auto br = L.bracket(x, y);
      std::vector<int32_t> v(S.ambient);
      for (int t = 0; t < S.ambient; ++t) {
        int64_t b = br[t] % p;
        v[t] = int32_t(b < 0 ? b + p : b);
      }
      if (!S.contains(v)) throw NotSubalgebra();
      for (int t = 0; t < S.ambient; ++t) brackets.at(row, t) = v[t];
      ++row;
    }
  return span_rows(brackets).dim();
}

std::string dump_structure_constants(const LieLattice& L) {
  std::ostringstream os;
  for (int i = 0; i < L.d; ++i)
    for (int j = 0; j < L.d; ++j)
      for (int h = 0; h < L.d; ++h)
        if (L.lambda(i, j, h))
          os << (i + 1) << ' ' << (j + 1) << ' ' << (h + 1) << ' ' << L.lambda(i, j, h) << '\n';
  return os.str();
}

LieLattice load_structure_constants(const std::string& text, const std::string& name) {
  std::istringstream is(text);
  std::vector<std::array<int64_t, 4>> entries;
  int64_t i, j, h, v, dmax = 0;
  while (is >> i >> j >> h >> v) {
    entries.push_back({i, j, h, v});
    dmax = std::max({dmax, i, j, h});
  }
  int d = int(dmax);
  std::vector<int32_t> lambda(size_t(d) * d * d, 0);
  for (auto& e : entries)
    lambda[(size_t(e[0] - 1) * d + (e[1] - 1)) * d + (e[2] - 1)] = int32_t(e[3]);
  return LieLattice(d, name, std::move(lambda));
}

}  // namespace rzeta
