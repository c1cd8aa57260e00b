#pragma once
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rzeta/linalg.hpp"

namespace rzeta {

/// Matrix of integer linear forms: entry (i,j) is the coefficient vector of
/// the bracket [b_i, b_j] in the lattice basis.
struct LinearFormMatrix {
  int d = 0;
  // coeff[(i*d + j)*d + h] = lambda_{ij}^h
  std::vector<int32_t> coeff;

  LinearFormMatrix() = default;
  explicit LinearFormMatrix(int dim) : d(dim), coeff(size_t(dim) * dim * dim, 0) {}
  int32_t& at(int i, int j, int h) { return coeff[(size_t(i) * d + j) * d + h]; }
  int32_t at(int i, int j, int h) const { return coeff[(size_t(i) * d + j) * d + h]; }
};

/// Z-Lie lattice given by integer structure constants.  Antisymmetry and the
/// Jacobi identity are verified exactly at construction.
struct LieLattice {
  int d = 0;
  std::string name;
  std::vector<int32_t> constants;  // lambda[(i*d + j)*d + h]

  LieLattice() = default;
  LieLattice(int dim, std::string tag, std::vector<int32_t> lambda);

  int32_t lambda(int i, int j, int h) const { return constants[(size_t(i) * d + j) * d + h]; }
  /// Coordinates of [x, y] for integer coordinate vectors.
  std::vector<int64_t> bracket(const std::vector<int64_t>& x, const std::vector<int64_t>& y) const;
};

LieLattice build_sl(int n);  // n in {2, 3, 4}

LinearFormMatrix commutator_matrix(const LieLattice& L);

FpMatrix evaluate_fp(const LinearFormMatrix& R, const std::vector<int32_t>& w, int64_t p);
ZrMatrix evaluate_zr(const LinearFormMatrix& R, const std::vector<int64_t>& w, int64_t p, int r);

/// 15x15 Killing matrix of the built-in sl4 basis, kappa(x,y) = 8 tr(xy).
std::vector<int64_t> killing_matrix(const LieLattice& sl4);
/// Exact determinant of an integer matrix (fraction-free elimination).
__int128 integer_determinant(const std::vector<int64_t>& M, int n);

/// Traceless 4x4 matrix over F_p or Z/p^r, entries stored as residues.
struct Sl4Element {
  int64_t p = 3;
  int r = 1;  // r = 1 means F_p
  std::array<int64_t, 16> m{};

  int64_t modulus() const { return ipow(p, r); }
  int64_t& at(int i, int j) { return m[size_t(4) * i + j]; }
  int64_t at(int i, int j) const { return m[size_t(4) * i + j]; }
  bool trace_zero() const;
};

Sl4Element sl4_zero(int64_t p, int r = 1);
Sl4Element sl4_from_int(const std::array<int64_t, 16>& entries, int64_t p, int r = 1);

/// Coordinates w.r.t. the canonical sl4 basis; throws NonZeroTrace.
std::vector<int64_t> coords(const Sl4Element& x);
/// Inverse of coords.
Sl4Element element(const std::vector<int64_t>& v, int64_t p, int r = 1);

Sl4Element transpose_twist(const Sl4Element& x);

/// Killing-dual coordinate vector of x: entry j is kappa(b_j, x) reduced at
/// the working precision.  The commutator-matrix kernel at these coordinates
/// is the coordinate image of the centralizer of x.
std::vector<int64_t> killing_dual_coords(const Sl4Element& x);
Sl4Element sl4_add(const Sl4Element& a, const Sl4Element& b);
Sl4Element sl4_bracket(const Sl4Element& a, const Sl4Element& b);
Sl4Element sl4_scale(int64_t c, const Sl4Element& a);

/// Adjoint matrix of x acting on coordinates: column j = coords([x, b_j]).
ZrMatrix adjoint_matrix(const LieLattice& L, const std::vector<int64_t>& xcoords, int64_t p, int r);

/// Centralizer of x over F_p as a canonical subspace of coordinates.
Subspace centralizer_fp(const LieLattice& L, const std::vector<int64_t>& xcoords, int64_t p);
/// Centralizer generators over Z/p^r (module_kernel of the adjoint matrix).
ZrMatrix centralizer_zr(const LieLattice& L, const std::vector<int64_t>& xcoords, int64_t p, int r);

/// Dimension of the span of all pairwise brackets of basis vectors of S.
/// Verifies bracket-closure; throws NotSubalgebra.
int derived_dim(const LieLattice& L, const Subspace& S);

/// Structure constants of the induced bracket on a bracket-closed subspace,
/// w.r.t. the given basis rows.  Throws NotSubalgebra.
LinearFormMatrix subalgebra_commutator_matrix(const LieLattice& L, const FpMatrix& basis_rows);
LinearFormMatrix subalgebra_commutator_matrix(const LieLattice& L, const Subspace& S);

/// Structure-constant table I/O: lines "i j h lambda" with 1-based indices.
std::string dump_structure_constants(const LieLattice& L);
LieLattice load_structure_constants(const std::string& text, const std::string& name);

}  // namespace rzeta
