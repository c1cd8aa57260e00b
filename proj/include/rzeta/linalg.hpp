#pragma once
#include <cstdint>
#include <vector>

#include "rzeta/arith.hpp"

namespace rzeta {

/// Dense matrix over F_p.
struct FpMatrix {
  int64_t p = 3;
  int rows = 0, cols = 0;
  std::vector<int32_t> a;

  FpMatrix() = default;
  FpMatrix(int64_t prime, int r, int c) : p(prime), rows(r), cols(c), a(size_t(r) * c, 0) {}
  int32_t& at(int i, int j) { return a[size_t(i) * cols + j]; }
  int32_t at(int i, int j) const { return a[size_t(i) * cols + j]; }
  bool operator==(const FpMatrix&) const = default;
};

/// Dense matrix over Z/p^r (values in [0, p^r)).
struct ZrMatrix {
  int64_t p = 3;
  int r = 1;
  int rows = 0, cols = 0;
  std::vector<int64_t> a;

  ZrMatrix() = default;
  ZrMatrix(int64_t prime, int level, int rws, int cls)
      : p(prime), r(level), rows(rws), cols(cls), a(size_t(rws) * cls, 0) {}
  int64_t& at(int i, int j) { return a[size_t(i) * cols + j]; }
  int64_t at(int i, int j) const { return a[size_t(i) * cols + j]; }
  int64_t modulus() const { return ipow(p, r); }
  bool is_antisymmetric() const;
  FpMatrix reduce_modp() const;
  bool operator==(const ZrMatrix&) const = default;
};

FpMatrix fp_mul(const FpMatrix& A, const FpMatrix& B);
ZrMatrix zr_mul(const ZrMatrix& A, const ZrMatrix& B);
ZrMatrix zr_transpose(const ZrMatrix& A);
ZrMatrix zr_identity(int64_t p, int r, int n);

/// Subspace of F_p^n in canonical reduced row echelon form.  The canonical
/// basis makes equality a plain data comparison.
struct Subspace {
  int64_t p = 3;
  int ambient = 0;
  FpMatrix basis;  // dim x ambient, RREF, pivots increasing

  Subspace() = default;
  Subspace(int64_t prime, int amb) : p(prime), ambient(amb), basis(prime, 0, amb) {}
  int dim() const { return basis.rows; }
  bool contains(const std::vector<int32_t>& v) const;
  bool operator==(const Subspace&) const = default;
};

/// Build the canonical subspace spanned by the given rows.
Subspace span_rows(const FpMatrix& rows);

bool subspace_equal(const Subspace& A, const Subspace& B);  // DimensionMismatch on ambient clash

/// Rank and canonical kernel of M over F_p (kernel of v -> M v).
std::pair<int, Subspace> rank_and_kernel(const FpMatrix& M);

int fp_rank(const FpMatrix& M);

/// Truncated elementary-divisor exponents of an evaluated antisymmetric
/// matrix: h paired exponents, non-decreasing, clamped to [0, r].
struct DivisorProfile {
  std::vector<int> exponents;
  bool odd_slot = false;
  bool operator==(const DivisorProfile&) const = default;
};

struct SmithResult {
  std::vector<int> exponents;  // min(rows, cols) entries, non-decreasing, in [0, r]
  ZrMatrix U, V;               // U * M * V = diag(p^exponents)
};

/// Smith normal form over Z/p^r with transform witnesses.
SmithResult smith_normal_form(const ZrMatrix& M);

struct AsnfResult {
  DivisorProfile profile;
  ZrMatrix S;  // S^t * M * S = block diagonal with blocks [[0, p^e], [-p^e, 0]]
};

/// Antisymmetric Smith normal form by congruence.  Pivots are chosen with
/// minimal valuation, ties broken by lowest row-major index.
AsnfResult antisymmetric_snf(const ZrMatrix& M);  // NotAntisymmetric

/// Fast profile computation (no transform tracking).
DivisorProfile divisor_profile(const ZrMatrix& M);  // NotAntisymmetric

/// Allocation-free profile core for hot loops: M is a row-major d x d
/// antisymmetric buffer over Z/p^r (destroyed); writes the d/2 paired
/// exponents to out.
void divisor_profile_buf(int64_t* M, int d, const ZrCtx& cx, int* out);

/// Allocation-free Smith exponents of a square buffer (destroyed); writes n
/// exponents to out.
void smith_exponents_buf(int64_t* M, int n, const ZrCtx& cx, int* out);

/// Allocation-free mod-p kernel of a square buffer over Z/p^r: M (n x n,
/// destroyed), vtrack an n x n scratch, out receives the canonical RREF rows
/// of the reduction of the kernel module; returns its dimension.
int kernel_modp_rows(int64_t* M, int n, const ZrCtx& cx, int64_t* vtrack, int32_t* out);

/// Generators (as rows) of {v : M v = 0 over Z/p^r}.
ZrMatrix module_kernel(const ZrMatrix& M);

/// Mod-p reduction of module_kernel(M), i.e. the span of the kernel
/// generators read in F_p^n.  Computed without materializing the kernel.
Subspace module_kernel_modp(const ZrMatrix& M);

/// True iff the span of the generator rows is a direct summand at the
/// working precision (all nonzero invariant factors are units).
bool is_isolated(const ZrMatrix& generators);

/// Expected block-diagonal ASNF matrix for a profile at level r (for tests).
ZrMatrix asnf_block_matrix(int64_t p, int r, int n, const DivisorProfile& prof);

}  // namespace rzeta
