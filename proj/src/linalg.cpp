#include "rzeta/linalg.hpp"

#include <algorithm>

#include "rzeta/errors.hpp"

namespace rzeta {

bool ZrMatrix::is_antisymmetric() const {
  if (rows != cols) return false;
  int64_t m = modulus();
  for (int i = 0; i < rows; ++i) {
    if (at(i, i) != 0) return false;
    for (int j = i + 1; j < cols; ++j)
      if ((at(i, j) + at(j, i)) % m != 0) return false;
  }
  return true;
}

FpMatrix ZrMatrix::reduce_modp() const {
  FpMatrix R(p, rows, cols);
  for (size_t k = 0; k < a.size(); ++k) R.a[k] = int32_t(a[k] % p);
  return R;
}

FpMatrix fp_mul(const FpMatrix& A, const FpMatrix& B) {
  FpMatrix C(A.p, A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      int64_t aik = A.at(i, k);
      if (!aik) continue;
      for (int j = 0; j < B.cols; ++j)
        C.at(i, j) = int32_t((C.at(i, j) + aik * B.at(k, j)) % A.p);
    }
  return C;
}

ZrMatrix zr_mul(const ZrMatrix& A, const ZrMatrix& B) {
  ZrMatrix C(A.p, A.r, A.rows, B.cols);
  int64_t m = A.modulus();
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      int64_t aik = A.at(i, k);
      if (!aik) continue;
      for (int j = 0; j < B.cols; ++j)
        C.at(i, j) = (C.at(i, j) + aik * B.at(k, j)) % m;
    }
  return C;
}

ZrMatrix zr_transpose(const ZrMatrix& A) {
  ZrMatrix T(A.p, A.r, A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
  return T;
}

ZrMatrix zr_identity(int64_t p, int r, int n) {
  ZrMatrix I(p, r, n, n);
  for (int i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

// ---------------------------------------------------------------------------
// F_p elimination

namespace {

int64_t fp_inv(int64_t a, int64_t p) {
  int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    int64_t q = r / nr, tmp = t - q * nt;
    t = nt; nt = tmp;
    tmp = r - q * nr; r = nr; nr = tmp;
  }
  return t < 0 ? t + p : t;
}

// in-place RREF; returns pivot columns
std::vector<int> rref_inplace(FpMatrix& M) {
  const int64_t p = M.p;
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < M.cols && row < M.rows; ++col) {
    int pr = -1;
    for (int i = row; i < M.rows; ++i)
      if (M.at(i, col) != 0) { pr = i; break; }
    if (pr < 0) continue;
    if (pr != row)
      for (int j = 0; j < M.cols; ++j) std::swap(M.at(pr, j), M.at(row, j));
    int64_t inv = fp_inv(M.at(row, col), p);
    for (int j = col; j < M.cols; ++j)
      M.at(row, j) = int32_t((M.at(row, j) * inv) % p);
    for (int i = 0; i < M.rows; ++i) {
      if (i == row) continue;
      int64_t f = M.at(i, col);
      if (!f) continue;
      for (int j = col; j < M.cols; ++j)
        M.at(i, j) = int32_t(((M.at(i, j) - f * M.at(row, j)) % p + p) % p);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Subspace span_rows(const FpMatrix& rows) {
  FpMatrix M = rows;
  auto pivots = rref_inplace(M);
  Subspace S(rows.p, rows.cols);
  S.basis = FpMatrix(rows.p, int(pivots.size()), rows.cols);
  for (int i = 0; i < int(pivots.size()); ++i)
    for (int j = 0; j < rows.cols; ++j) S.basis.at(i, j) = M.at(i, j);
  return S;
}

bool Subspace::contains(const std::vector<int32_t>& v) const {
  if (int(v.size()) != ambient) throw DimensionMismatch("vector/ambient mismatch");
  std::vector<int64_t> w(v.begin(), v.end());
  for (int i = 0; i < basis.rows; ++i) {
    int piv = -1;
    for (int j = 0; j < ambient; ++j)
      if (basis.at(i, j) != 0) { piv = j; break; }
    int64_t f = w[piv] % p;
    if (!f) continue;
    for (int j = 0; j < ambient; ++j)
      w[j] = ((w[j] - f * basis.at(i, j)) % p + p) % p;
  }
  for (int64_t x : w)
    if (x % p != 0) return false;
  return true;
}

bool subspace_equal(const Subspace& A, const Subspace& B) {
  if (A.ambient != B.ambient || A.p != B.p)
    throw DimensionMismatch("subspace ambient/modulus mismatch");
  return A.basis == B.basis;
}

std::pair<int, Subspace> rank_and_kernel(const FpMatrix& M) {
  FpMatrix R = M;
  auto pivots = rref_inplace(R);
  int rank = int(pivots.size());
  const int64_t p = M.p;
  std::vector<char> is_pivot(M.cols, 0);
  for (int c : pivots) is_pivot[c] = 1;
  FpMatrix K(p, M.cols - rank, M.cols);
  int kr = 0;
  for (int fc = 0; fc < M.cols; ++fc) {
    if (is_pivot[fc]) continue;
    K.at(kr, fc) = 1;
    for (int i = 0; i < rank; ++i) {
      int64_t v = R.at(i, fc);
      if (v) K.at(kr, pivots[i]) = int32_t(p - v);
    }
    ++kr;
  }
  return {rank, span_rows(K)};
}

int fp_rank(const FpMatrix& M) {
  FpMatrix R = M;
  return int(rref_inplace(R).size());
}

// ---------------------------------------------------------------------------
// Smith normal form over Z/p^r

namespace {

struct Pivot { int i = -1, j = -1, v = 1 << 30; };

Pivot min_val_pivot(const ZrMatrix& M, const ZrCtx& cx, int from_i, int from_j) {
  Pivot best;
  for (int i = from_i; i < M.rows; ++i)
    for (int j = from_j; j < M.cols; ++j) {
      int64_t x = M.at(i, j);
      if (!x) continue;
      int v = cx.val(x);
      if (v < best.v) { best = {i, j, v}; if (v == 0) return best; }
    }
  return best;
}

}  // namespace

SmithResult smith_normal_form(const ZrMatrix& M0) {
  ZrCtx cx(M0.p, M0.r);
  ZrMatrix M = M0;
  ZrMatrix U = zr_identity(M.p, M.r, M.rows);
  ZrMatrix V = zr_identity(M.p, M.r, M.cols);
  const int n = std::min(M.rows, M.cols);
  SmithResult res;
  res.exponents.assign(n, M.r);

  for (int k = 0; k < n; ++k) {
    Pivot pv = min_val_pivot(M, cx, k, k);
    if (pv.i < 0) break;  // remaining block is zero
    if (pv.i != k)
      for (int j = 0; j < M.cols; ++j) std::swap(M.at(pv.i, j), M.at(k, j));
    if (pv.i != k)
      for (int j = 0; j < M.rows; ++j) std::swap(U.at(pv.i, j), U.at(k, j));
    if (pv.j != k) {
      for (int i = 0; i < M.rows; ++i) std::swap(M.at(i, pv.j), M.at(i, k));
      for (int i = 0; i < M.cols; ++i) std::swap(V.at(i, pv.j), V.at(i, k));
    }
    const int e = pv.v;
    const int64_t pe = ipow(M.p, e);
    // normalize pivot to p^e (scale row k by the unit inverse)
    int64_t u = cx.unit_inverse(M.at(k, k) / pe);
    for (int j = 0; j < M.cols; ++j) M.at(k, j) = cx.mul(M.at(k, j), u);
    for (int j = 0; j < M.rows; ++j) U.at(k, j) = cx.mul(U.at(k, j), u);
    // clear column k below and row k to the right; entries have val >= e
    for (int i = k + 1; i < M.rows; ++i) {
      int64_t f = M.at(i, k) / pe;
      if (!f) continue;
      for (int j = 0; j < M.cols; ++j)
        M.at(i, j) = cx.sub(M.at(i, j), cx.mul(f, M.at(k, j)));
      for (int j = 0; j < M.rows; ++j)
        U.at(i, j) = cx.sub(U.at(i, j), cx.mul(f, U.at(k, j)));
    }
    for (int j = k + 1; j < M.cols; ++j) {
      int64_t f = M.at(k, j) / pe;
      if (!f) continue;
      for (int i = 0; i < M.rows; ++i)
        M.at(i, j) = cx.sub(M.at(i, j), cx.mul(f, M.at(i, k)));
      for (int i = 0; i < M.cols; ++i)
        V.at(i, j) = cx.sub(V.at(i, j), cx.mul(f, V.at(i, k)));
    }
    res.exponents[k] = e;
  }
  res.U = std::move(U);
  res.V = std::move(V);
  return res;
}

// ---------------------------------------------------------------------------
// Antisymmetric Smith normal form

namespace {

// Shared congruence reduction.  When S is non-null it accumulates the
// column operations so that S^t * M0 * S equals the reduced matrix.
DivisorProfile asnf_run(ZrMatrix& M, ZrMatrix* S) {
  ZrCtx cx(M.p, M.r);
  const int d = M.rows;

  auto col_add = [&](int j, int64_t f, int i) {
    // b_j += f * b_i
    if (!f) return;
    for (int t = 0; t < d; ++t) M.at(t, j) = cx.add(M.at(t, j), cx.mul(f, M.at(t, i)));
    for (int t = 0; t < d; ++t) M.at(j, t) = cx.add(M.at(j, t), cx.mul(f, M.at(i, t)));
    if (S)
      for (int t = 0; t < d; ++t) S->at(t, j) = cx.add(S->at(t, j), cx.mul(f, S->at(t, i)));
  };
  auto col_swap = [&](int i, int j) {
    if (i == j) return;
    for (int t = 0; t < d; ++t) std::swap(M.at(t, i), M.at(t, j));
    for (int t = 0; t < d; ++t) std::swap(M.at(i, t), M.at(j, t));
    if (S)
      for (int t = 0; t < d; ++t) std::swap(S->at(t, i), S->at(t, j));
  };
  auto col_scale = [&](int j, int64_t u) {
    for (int t = 0; t < d; ++t) M.at(t, j) = cx.mul(M.at(t, j), u);
    for (int t = 0; t < d; ++t) M.at(j, t) = cx.mul(M.at(j, t), u);
    if (S)
      for (int t = 0; t < d; ++t) S->at(t, j) = cx.mul(S->at(t, j), u);
  };

  DivisorProfile prof;
  prof.odd_slot = (d % 2 == 1);
  int k = 0;
  while (d - k >= 2) {
    // minimal-valuation pivot in the unprocessed block, lowest row-major index
    int bi = -1, bj = -1, bv = 1 << 30;
    for (int i = k; i < d && bv > 0; ++i)
      for (int j = i + 1; j < d; ++j) {
        int64_t x = M.at(i, j);
        if (!x) continue;
        int v = cx.val(x);
        if (v < bv) { bi = i; bj = j; bv = v; if (!v) break; }
      }
    if (bi < 0) break;  // zero block
    // bi >= k and bj >= k+1, so these two swaps land the pivot at (k, k+1)
    col_swap(bi, k);
    col_swap(bj, k + 1);
    const int e = bv;
    const int64_t pe = ipow(M.p, e);
    col_scale(k + 1, cx.unit_inverse(M.at(k, k + 1) / pe));
    // now M[k][k+1] = p^e, M[k+1][k] = -p^e; clear both pivot columns
    for (int c = k + 2; c < d; ++c) {
      col_add(c, M.at(k + 1, c) / pe, k);     // kills M[k+1][c]
      int64_t f = M.at(k, c) / pe;
      col_add(c, f ? cx.m - f : 0, k + 1);    // kills M[k][c]
    }
    prof.exponents.push_back(e);
    k += 2;
  }
  while (int(prof.exponents.size()) < d / 2) prof.exponents.push_back(M.r);
  return prof;
}

}  // namespace

AsnfResult antisymmetric_snf(const ZrMatrix& M0) {
  if (!M0.is_antisymmetric()) throw NotAntisymmetric();
  ZrMatrix M = M0;
  AsnfResult res;
  res.S = zr_identity(M.p, M.r, M.rows);
  res.profile = asnf_run(M, &res.S);
  return res;
}

void divisor_profile_buf(int64_t* M, int d, const ZrCtx& cx, int* out) {
  const int64_t m = cx.m;
  auto at = [&](int i, int j) -> int64_t& { return M[i * d + j]; };
  int filled = 0;
  int k = 0;
  while (d - k >= 2) {
    int bi = -1, bj = -1, bv = 1 << 30;
    for (int i = k; i < d && bv > 0; ++i)
      for (int j = i + 1; j < d; ++j) {
        int64_t x = at(i, j);
        if (!x) continue;
        int v = cx.val(x);
        if (v < bv) { bi = i; bj = j; bv = v; if (!v) break; }
      }
    if (bi < 0) break;
    // swap pivot pair into (k, k+1) by simultaneous row/column swaps
    auto cswap = [&](int a, int b) {
      if (a == b) return;
      for (int t = 0; t < d; ++t) std::swap(at(t, a), at(t, b));
      for (int t = 0; t < d; ++t) std::swap(at(a, t), at(b, t));
    };
    cswap(bi, k);
    cswap(bj, k + 1);
    const int64_t pe = ipow(cx.p, bv);
    const int64_t u = cx.unit_inverse(at(k, k + 1) / pe);
    // scale column/row k+1 by the unit inverse
    for (int t = 0; t < d; ++t) at(t, k + 1) = cx.mul(at(t, k + 1), u);
    for (int t = 0; t < d; ++t) at(k + 1, t) = cx.mul(at(k + 1, t), u);
    for (int c = k + 2; c < d; ++c) {
      int64_t f = at(k + 1, c) / pe;
      if (f) {
        for (int t = 0; t < d; ++t) at(t, c) = cx.add(at(t, c), cx.mul(f, at(t, k)));
        for (int t = 0; t < d; ++t) at(c, t) = cx.add(at(c, t), cx.mul(f, at(k, t)));
      }
      f = at(k, c) / pe;
      if (f) {
        f = m - f;
        for (int t = 0; t < d; ++t) at(t, c) = cx.add(at(t, c), cx.mul(f, at(t, k + 1)));
        for (int t = 0; t < d; ++t) at(c, t) = cx.add(at(c, t), cx.mul(f, at(k + 1, t)));
      }
    }
    out[filled++] = bv;
    k += 2;
  }
  while (filled < d / 2) out[filled++] = cx.r;
}

DivisorProfile divisor_profile(const ZrMatrix& M0) {
  if (!M0.is_antisymmetric()) throw NotAntisymmetric();
  ZrMatrix M = M0;
  DivisorProfile prof;
  prof.odd_slot = (M.rows % 2 == 1);
  prof.exponents.assign(M.rows / 2, 0);
  ZrCtx cx(M.p, M.r);
  divisor_profile_buf(M.a.data(), M.rows, cx, prof.exponents.data());
  return prof;
}

void smith_exponents_buf(int64_t* M, int n, const ZrCtx& cx, int* out) {
  auto at = [&](int i, int j) -> int64_t& { return M[i * n + j]; };
  for (int k = 0; k < n; ++k) out[k] = cx.r;
  for (int k = 0; k < n; ++k) {
    int bi = -1, bj = -1, bv = 1 << 30;
    for (int i = k; i < n && bv > 0; ++i)
      for (int j = k; j < n; ++j) {
        int64_t x = at(i, j);
        if (!x) continue;
        int v = cx.val(x);
        if (v < bv) { bi = i; bj = j; bv = v; if (!v) break; }
      }
    if (bi < 0) break;
    if (bi != k)
      for (int j = k; j < n; ++j) std::swap(at(bi, j), at(k, j));
    if (bj != k)
      for (int i = k; i < n; ++i) std::swap(at(i, bj), at(i, k));
    const int64_t pe = ipow(cx.p, bv);
    const int64_t u = cx.unit_inverse(at(k, k) / pe);
    for (int j = k; j < n; ++j) at(k, j) = cx.mul(at(k, j), u);
    for (int i = k + 1; i < n; ++i) {
      int64_t f = at(i, k) / pe;
      if (f)
        for (int j = k; j < n; ++j) at(i, j) = cx.sub(at(i, j), cx.mul(f, at(k, j)));
    }
    for (int j = k + 1; j < n; ++j) {
      int64_t f = at(k, j) / pe;
      if (f)
        for (int i = k + 1; i < n; ++i) at(i, j) = cx.sub(at(i, j), cx.mul(f, at(i, k)));
      at(k, j) = 0;
    }
    out[k] = bv;
  }
}

int kernel_modp_rows(int64_t* M, int n, const ZrCtx& cx, int64_t* V, int32_t* out) {
  auto at = [&](int i, int j) -> int64_t& { return M[i * n + j]; };
  auto vt = [&](int i, int j) -> int64_t& { return V[i * n + j]; };
  const int64_t p = cx.p;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) vt(i, j) = (i == j);
  int dim = 0;
  std::vector<int> kernel_cols;
  for (int k = 0; k < n; ++k) {
    int bi = -1, bj = -1, bv = 1 << 30;
    for (int i = k; i < n && bv > 0; ++i)
      for (int j = k; j < n; ++j) {
        int64_t x = at(i, j);
        if (!x) continue;
        int v = cx.val(x);
        if (v < bv) { bi = i; bj = j; bv = v; if (!v) break; }
      }
    if (bi < 0) {
      for (int j = k; j < n; ++j) kernel_cols.push_back(j);
      break;
    }
    if (bi != k)
      for (int j = k; j < n; ++j) std::swap(at(bi, j), at(k, j));
    if (bj != k) {
      for (int i = k; i < n; ++i) std::swap(at(i, bj), at(i, k));
      for (int i = 0; i < n; ++i) std::swap(vt(i, bj), vt(i, k));
    }
    const int64_t pe = ipow(cx.p, bv);
    const int64_t u = cx.unit_inverse(at(k, k) / pe);
    for (int j = k; j < n; ++j) at(k, j) = cx.mul(at(k, j), u);
    for (int i = k + 1; i < n; ++i) {
      int64_t f = at(i, k) / pe;
      if (f)
        for (int j = k; j < n; ++j) at(i, j) = cx.sub(at(i, j), cx.mul(f, at(k, j)));
    }
    for (int j = k + 1; j < n; ++j) {
      int64_t f = at(k, j) / pe;
      if (f) {
        for (int i = k + 1; i < n; ++i) at(i, j) = cx.sub(at(i, j), cx.mul(f, at(i, k)));
        for (int i = 0; i < n; ++i) vt(i, j) = cx.sub(vt(i, j), cx.mul(f, vt(i, k)));
        at(k, j) = 0;
      }
    }
  }
  // gather the free columns of V mod p, then canonical RREF
  for (size_t r = 0; r < kernel_cols.size(); ++r)
    for (int i = 0; i < n; ++i) out[r * n + i] = int32_t(vt(i, kernel_cols[r]) % p);
  int rows = int(kernel_cols.size());
  // in-place RREF over F_p
  int rank = 0;
  for (int col = 0; col < n && rank < rows; ++col) {
    int piv = -1;
    for (int i = rank; i < rows; ++i)
      if (out[i * n + col]) { piv = i; break; }
    if (piv < 0) continue;
    for (int j = 0; j < n; ++j) std::swap(out[size_t(piv) * n + j], out[size_t(rank) * n + j]);
    int64_t inv = 1, a = out[size_t(rank) * n + col];
    // field inverse by Fermat
    int64_t e = p - 2, base = a % p, acc = 1;
    while (e) { if (e & 1) acc = acc * base % p; base = base * base % p; e >>= 1; }
    inv = acc;
    for (int j = 0; j < n; ++j)
      out[size_t(rank) * n + j] = int32_t(out[size_t(rank) * n + j] * inv % p);
    for (int i = 0; i < rows; ++i) {
      if (i == rank) continue;
      int64_t f = out[size_t(i) * n + col];
      if (!f) continue;
      for (int j = 0; j < n; ++j)
        out[size_t(i) * n + j] =
            int32_t(((out[size_t(i) * n + j] - f * out[size_t(rank) * n + j]) % p + p) % p);
    }
    ++rank;
  }
  dim = rank;
  return dim;
}

ZrMatrix module_kernel(const ZrMatrix& M) {
  SmithResult s = smith_normal_form(M);
  const int n = M.cols;
  std::vector<std::vector<int64_t>> gens;
  ZrCtx cx(M.p, M.r);
  for (int k = 0; k < n; ++k) {
    int e = (k < int(s.exponents.size())) ? s.exponents[k] : M.r;
    if (e == 0) continue;
    int64_t scale = ipow(M.p, M.r - e);
    std::vector<int64_t> g(n);
    for (int i = 0; i < n; ++i) g[i] = cx.mul(scale, s.V.at(i, k));
    gens.push_back(std::move(g));
  }
  ZrMatrix K(M.p, M.r, int(gens.size()), n);
  for (int i = 0; i < int(gens.size()); ++i)
    for (int j = 0; j < n; ++j) K.at(i, j) = gens[i][j];
  return K;
}

Subspace module_kernel_modp(const ZrMatrix& M) {
  SmithResult s = smith_normal_form(M);
  const int n = M.cols;
  FpMatrix rows(M.p, 0, n);
  std::vector<int32_t> buf;
  for (int k = 0; k < n; ++k) {
    int e = (k < int(s.exponents.size())) ? s.exponents[k] : M.r;
    if (e < M.r) continue;  // generator scaled by p^(r-e) dies mod p unless e = r
    for (int i = 0; i < n; ++i) buf.push_back(int32_t(s.V.at(i, k) % M.p));
  }
  rows.rows = int(buf.size()) / n;
  rows.a = std::move(buf);
  return span_rows(rows);
}

bool is_isolated(const ZrMatrix& generators) {
  SmithResult s = smith_normal_form(generators);
  for (int e : s.exponents)
    if (e > 0 && e < generators.r) return false;
  return true;
}

ZrMatrix asnf_block_matrix(int64_t p, int r, int n, const DivisorProfile& prof) {
  ZrMatrix D(p, r, n, n);
  int64_t m = D.modulus();
  for (int i = 0; i < int(prof.exponents.size()); ++i) {
    int e = prof.exponents[i];
    int64_t pe = e >= r ? 0 : ipow(p, e);
    D.at(2 * i, 2 * i + 1) = pe;
    D.at(2 * i + 1, 2 * i) = pe ? m - pe : 0;
  }
  return D;
}

}  // namespace rzeta
