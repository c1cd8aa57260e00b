#include "rzeta/shadow.hpp"

#include <algorithm>
#include <cstring>
#include <set>

#include "rzeta/parallel.hpp"

namespace rzeta {

ShadowRecord lie_shadow(const LieLattice& L, const Sl4Element& a) {
  ShadowRecord rec;
  rec.shadow = module_kernel_modp(adjoint_matrix(L, coords(a), a.p, a.r));
  rec.dim = rec.shadow.dim();
  return rec;
}

SpLiftScan shadow_preserving_lifts(const LieLattice& L, const Sl4Element& a, int workers,
                                   int max_witnesses) {
  const int64_t p = a.p;
  const int r = a.r;
  const int d = L.d;
  if (p != 3) throw TooLarge("exhaustive lift scan is p = 3 only (p^15 lifts)");
  auto target = lie_shadow(L, a);
  const int tdim = target.dim;

  ZrCtx cx(p, r + 1);
  const int64_t pr = ipow(p, r);
  auto base = adjoint_matrix(L, coords(a), p, r + 1);
  // ad of p^r e_j at level r+1
  std::vector<ZrMatrix> step;
  for (int j = 0; j < d; ++j) {
    std::vector<int64_t> e(d, 0);
    e[j] = pr;
    step.push_back(adjoint_matrix(L, e, p, r + 1));
  }

  struct Hit {
    int64_t code;
    std::array<int64_t, 16> matrix;
    bool operator<(const Hit& o) const { return code < o.code; }
  };
  struct Local {
    int64_t count = 0;
    int64_t dim_matches = 0;
    std::vector<Hit> hits;
  };
  const int64_t total = ipow(p, d);
  auto merged = parallel_reduce<Local>(
      total, workers, {},
      [&](int64_t lo, int64_t hi, Local& local) {
        std::vector<int64_t> z(d, 0);
        std::vector<int64_t> M(base.a);
        std::vector<int64_t> scratch(M.size()), vtrack(M.size());
        std::vector<int> exps(d);
        std::vector<int32_t> rows(size_t(d) * d);
        int64_t code = lo;
        for (int i = 0; i < d; ++i) { z[i] = code % p; code /= p; }
        for (int i = 0; i < d; ++i)
          for (int64_t rep = 0; rep < z[i]; ++rep)
            for (size_t t = 0; t < M.size(); ++t) M[t] = cx.add(M[t], step[i].a[t]);
        for (int64_t c2 = lo; c2 < hi; ++c2) {
          if (c2 != lo) {
            for (int i = 0; i < d; ++i) {
              for (size_t t = 0; t < M.size(); ++t) M[t] = cx.add(M[t], step[i].a[t]);
              if (++z[i] < p) break;
              z[i] = 0;
            }
          }
          // divisor-count pre-filter: shadow dimension from exponents only
          std::copy(M.begin(), M.end(), scratch.begin());
          smith_exponents_buf(scratch.data(), d, cx, exps.data());
          int dim = 0;
          for (int i = 0; i < d; ++i)
            if (exps[i] == r + 1) ++dim;
          if (dim != tdim) continue;
          ++local.dim_matches;
          std::copy(M.begin(), M.end(), scratch.begin());
          int kd = kernel_modp_rows(scratch.data(), d, cx, vtrack.data(), rows.data());
          if (kd != tdim) continue;
          bool eq = true;
          for (int i = 0; i < tdim * d && eq; ++i)
            eq = rows[i] == target.shadow.basis.a[i];
          if (!eq) continue;
          ++local.count;
          if (int(local.hits.size()) < max_witnesses) {
            Hit h;
            h.code = c2;
            // reconstruct the lift matrix
            std::vector<int64_t> v(d);
            int64_t cc = c2;
            for (int i = 0; i < d; ++i) { v[i] = cc % p; cc /= p; }
            auto ac = coords(a);
            for (int i = 0; i < d; ++i) v[i] = ac[i] + pr * v[i];
            h.matrix = element(v, p, r + 1).m;
            local.hits.push_back(h);
          }
        }
      },
      [](Local& x, const Local& y) {
        x.count += y.count;
        x.dim_matches += y.dim_matches;
        x.hits.insert(x.hits.end(), y.hits.begin(), y.hits.end());
      });
  SpLiftScan out;
  out.count = merged.count;
  out.dim_matches = merged.dim_matches;
  std::sort(merged.hits.begin(), merged.hits.end());
  for (int i = 0; i < int(merged.hits.size()) && i < max_witnesses; ++i)
    out.witnesses.push_back(merged.hits[i].matrix);
  return out;
}

Sl4Element builtin_b(int level) {
  std::array<int64_t, 16> m{};
  m[1] = 1;   // e12
  m[11] = 1;  // e34
  m[2] = 3;   // 3 e13
  m[7] = 3;   // 3 e24
  return sl4_from_int(m, 3, level);
}

Sl4Element builtin_z() {
  return sl4_from_int({9, 10, 21, 0, 0, 18, 9, 21, 0, 9, 0, 10, 0, 0, 0, 0}, 3, 3);
}

bool TheoremGReport::ok() const {
  const int64_t q13 = ipow(3, 13), q12 = ipow(3, 12);
  return free_generators == 5 && derived_valuations == std::vector<int>{0, 0, 1} &&
         shadow_dim == 5 && sp_count == q13 && constructed == q12 && constructed_distinct &&
         sp_admitting == q12 && dead_end_count == q13 - q12 && z_sp_count == 0;
}

namespace {

// fixed-precision Newton solver for the rank-10 locus of the adjoint matrix
// near the coordinates of b
struct RankLocusSolver {
  const LieLattice& L;
  static constexpr int P = 9;  // working precision 3^9
  ZrCtx cx{3, P};
  std::vector<int64_t> v0;         // coordinates of b as integers
  ZrMatrix U0, V0;                 // SNF transforms of ad(b) at precision
  std::array<int, 3> bound{};      // solved coordinates
  std::array<int, 12> free_{};     // perturbed coordinates
  std::array<int, 3> eqrows{};     // residual entries used by the solver
  // SNF data of the 3x3 Jacobian
  std::vector<std::vector<int64_t>> jac;  // 25 x 15, mod 3^t
  int64_t JU[3][3], JV[3][3];
  int jexp[3];

  explicit RankLocusSolver(const LieLattice& lat) : L(lat) {
    v0 = coords(builtin_b(P));
    auto ad0 = adjoint_matrix(L, v0, 3, P);
    auto s = smith_normal_form(ad0);
    for (int i = 0; i < 10; ++i)
      if (s.exponents[i] != 0) throw Error("b is not rank-exact at the working precision");
    for (int i = 10; i < 15; ++i)
      if (s.exponents[i] != P) throw Error("b is not rank-exact at the working precision");
    U0 = s.U;
    V0 = s.V;
    pick_coordinates();
  }

  // 25 residual entries: the Schur complement of the leading 10x10 block of
  // U0 ad(v) V0; the rank-10 locus near b is exactly its vanishing locus
  std::array<int64_t, 25> residual(const std::vector<int64_t>& v) const {
    auto T = zr_mul(zr_mul(U0, adjoint_matrix(L, v, 3, P)), V0);
    // invert the leading block
    int64_t A[10][20];
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) { A[i][j] = T.at(i, j); A[i][10 + j] = (i == j); }
    for (int col = 0; col < 10; ++col) {
      int piv = -1;
      for (int i = col; i < 10; ++i)
        if (A[i][col] % 3) { piv = i; break; }
      if (piv < 0) throw Error("leading block not invertible");
      for (int j = 0; j < 20; ++j) std::swap(A[piv][j], A[col][j]);
      int64_t inv = cx.unit_inverse(A[col][col]);
      for (int j = 0; j < 20; ++j) A[col][j] = cx.mul(A[col][j], inv);
      for (int i = 0; i < 10; ++i) {
        if (i == col) continue;
        int64_t f = A[i][col];
        if (!f) continue;
        for (int j = 0; j < 20; ++j) A[i][j] = cx.sub(A[i][j], cx.mul(f, A[col][j]));
      }
    }
    // B' = T22 - T21 Ainv T12
    std::array<int64_t, 25> out{};
    int64_t AinvT12[10][5];
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 5; ++j) {
        int64_t sum = 0;
        for (int k = 0; k < 10; ++k) sum = cx.add(sum, cx.mul(A[i][10 + k], T.at(k, 10 + j)));
        AinvT12[i][j] = sum;
      }
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        int64_t sum = T.at(10 + i, 10 + j);
        for (int k = 0; k < 10; ++k)
          sum = cx.sub(sum, cx.mul(T.at(10 + i, k), AinvT12[k][j]));
        out[size_t(i) * 5 + j] = sum;
      }
    return out;
  }

  void pick_coordinates() {
    // finite-difference Jacobian mod 3^5 (25 x 15)
    const int64_t h = ipow(3, 4);
    auto r0 = residual(v0);
    jac.assign(25, std::vector<int64_t>(15, 0));
    for (int j = 0; j < 15; ++j) {
      auto v = v0;
      v[j] = cx.add(v[j], h);
      auto r1 = residual(v);
      for (int e = 0; e < 25; ++e) jac[e][j] = cx.sub(r1[e], r0[e]) / h;
    }
    // choose 3 coordinates and 3 residual entries with Jacobian SNF (0, 0, 1)
    for (int c1 = 0; c1 < 15; ++c1)
      for (int c2 = c1 + 1; c2 < 15; ++c2)
        for (int c3 = c2 + 1; c3 < 15; ++c3) {
          // the 25 x 3 submatrix must have SNF exponents (0, 0, 1)
          ZrMatrix sub(3, 5, 25, 3);
          ZrCtx c5(3, 5);
          for (int e = 0; e < 25; ++e) {
            sub.at(e, 0) = jac[e][c1] % c5.m;
            sub.at(e, 1) = jac[e][c2] % c5.m;
            sub.at(e, 2) = jac[e][c3] % c5.m;
          }
          auto s = smith_normal_form(sub);
          if (!(s.exponents[0] == 0 && s.exponents[1] == 0 && s.exponents[2] == 1)) continue;
          // find 3 rows realizing those exponents
          for (int e1 = 0; e1 < 25; ++e1)
            for (int e2 = e1 + 1; e2 < 25; ++e2)
              for (int e3 = e2 + 1; e3 < 25; ++e3) {
                ZrMatrix jj(3, 5, 3, 3);
                int rowsel[3] = {e1, e2, e3};
                for (int a = 0; a < 3; ++a) {
                  jj.at(a, 0) = jac[rowsel[a]][c1] % c5.m;
                  jj.at(a, 1) = jac[rowsel[a]][c2] % c5.m;
                  jj.at(a, 2) = jac[rowsel[a]][c3] % c5.m;
                }
                auto sj = smith_normal_form(jj);
                if (!(sj.exponents[0] == 0 && sj.exponents[1] == 0 && sj.exponents[2] == 1))
                  continue;
                bound = {c1, c2, c3};
                eqrows = {e1, e2, e3};
                for (int a = 0; a < 3; ++a)
                  for (int b = 0; b < 3; ++b) { JU[a][b] = sj.U.at(a, b); JV[a][b] = sj.V.at(a, b); }
                jexp[0] = 0; jexp[1] = 0; jexp[2] = 1;
                int fi = 0;
                for (int k = 0; k < 15; ++k)
                  if (k != c1 && k != c2 && k != c3) free_[fi++] = k;
                return;
              }
        }
    throw Error("no coordinate split with Jacobian exponents (0,0,1) found");
  }

  // solve for the bound coordinates from the perturbed free coordinates;
  // returns the solution at working precision, with all 25 residual entries
  // vanishing mod 3^tol
  std::vector<int64_t> solve(const std::array<int64_t, 12>& s, int tol) const {
    auto v = v0;
    for (int i = 0; i < 12; ++i) v[free_[i]] = cx.add(v[free_[i]], 27 * s[i]);
    ZrCtx c5(3, 5);
    for (int iter = 0; iter < 12; ++iter) {
      auto res = residual(v);
      bool done = true;
      const int64_t m = ipow(3, tol);
      for (auto x : res) done = done && (x % m == 0);
      if (done) return v;
      // delta = V D^-1 U (-res_E), computed mod 3^5
      int64_t rhs[3];
      for (int a = 0; a < 3; ++a) rhs[a] = (c5.m - res[eqrows[a]] % c5.m) % c5.m;
      int64_t urhs[3];
      for (int a = 0; a < 3; ++a) {
        int64_t sum = 0;
        for (int b = 0; b < 3; ++b) sum = c5.add(sum, c5.mul(JU[a][b] % c5.m, rhs[b]));
        urhs[a] = sum;
      }
      for (int a = 0; a < 3; ++a) {
        int64_t pe = ipow(3, jexp[a]);
        if (urhs[a] % pe) throw Error("Newton step not divisible");
        urhs[a] /= pe;
      }
      for (int a = 0; a < 3; ++a) {
        int64_t sum = 0;
        for (int b = 0; b < 3; ++b) sum = c5.add(sum, c5.mul(JV[a][b] % c5.m, urhs[b]));
        v[bound[a]] = cx.add(v[bound[a]], sum);
      }
    }
    throw Error("Newton iteration did not converge");
  }
};

}  // namespace

TheoremGReport theorem_g_experiment(int workers, bool full_scans) {
  auto L = build_sl(4);
  TheoremGReport rep;

  // centralizer of beta(b) at level 6 and its derived module
  {
    auto b6 = builtin_b(6);
    auto gens = centralizer_zr(L, coords(transpose_twist(b6)), 3, 6);
    std::vector<std::vector<int64_t>> free_gens;
    for (int i = 0; i < gens.rows; ++i) {
      bool unit = false;
      for (int j = 0; j < 15; ++j) unit = unit || (gens.at(i, j) % 3 != 0);
      if (unit) {
        std::vector<int64_t> g(15);
        for (int j = 0; j < 15; ++j) g[j] = gens.at(i, j);
        free_gens.push_back(std::move(g));
      }
    }
    rep.free_generators = int(free_gens.size());
    const int k = int(free_gens.size());
    ZrMatrix br(3, 6, k * (k - 1) / 2, 15);
    int64_t m6 = br.modulus();
    int row = 0;
    for (int a = 0; a < k; ++a)
      for (int b2 = a + 1; b2 < k; ++b2) {
        auto z = L.bracket(free_gens[a], free_gens[b2]);
        for (int j = 0; j < 15; ++j) {
          int64_t v = z[j] % m6;
          br.at(row, j) = v < 0 ? v + m6 : v;
        }
        ++row;
      }
    auto s = smith_normal_form(br);
    for (int e : s.exponents)
      if (e < 6) rep.derived_valuations.push_back(e);
  }

  // shadow-preserving lifts of red_3(b)
  auto a3 = builtin_b(3);
  rep.shadow_dim = lie_shadow(L, a3).dim;
  if (full_scans) {
    rep.sp_count = shadow_preserving_lifts(L, a3, workers).count;
    rep.z_sp_count = shadow_preserving_lifts(L, builtin_z(), workers).count;
  }

  // the Newton family over the 12 free coordinates
  {
    RankLocusSolver solver(L);
    auto sh3 = lie_shadow(L, a3);
    const int64_t total = ipow(3, 12);
    struct Local {
      int64_t built = 0, admitting = 0, lifts_of_a3 = 0;
      std::vector<char> seen;
      Local() : seen(size_t(ipow(3, 12)), 0) {}
    };
    auto merged = parallel_reduce<Local>(
        total, workers, {},
        [&](int64_t lo, int64_t hi, Local& local) {
          for (int64_t code = lo; code < hi; ++code) {
            std::array<int64_t, 12> s{};
            int64_t c = code;
            for (int i = 0; i < 12; ++i) { s[i] = c % 3; c /= 3; }
            auto v = solver.solve(s, 7);
            ++local.built;
            // distinctness key: the free coordinates mod 81 determine s
            int64_t key = 0;
            for (int i = 11; i >= 0; --i) {
              int64_t digit = ((v[solver.free_[i]] - solver.v0[solver.free_[i]]) / 27) % 3;
              key = key * 3 + ((digit % 3) + 3) % 3;
            }
            local.seen[size_t(key)] = 1;
            // level-4 truncation: a shadow-preserving lift of red_3(b)?
            std::vector<int64_t> v4(15), v5(15);
            for (int i = 0; i < 15; ++i) { v4[i] = v[i] % 81; v5[i] = v[i] % 243; }
            auto e4 = element(v4, 3, 4);
            auto e5 = element(v5, 3, 5);
            bool is_lift = true;
            for (int i = 0; i < 15; ++i)
              is_lift = is_lift && (v4[i] % 27 == coords(a3)[i]);
            auto sh4 = lie_shadow(L, e4);
            if (is_lift && sh4.dim == sh3.dim && subspace_equal(sh4.shadow, sh3.shadow)) {
              ++local.lifts_of_a3;
              auto sh5 = lie_shadow(L, e5);
              if (sh5.dim == sh4.dim && subspace_equal(sh5.shadow, sh4.shadow))
                ++local.admitting;
            }
          }
        },
        [](Local& x, const Local& y) {
          x.built += y.built;
          x.admitting += y.admitting;
          x.lifts_of_a3 += y.lifts_of_a3;
          for (size_t i = 0; i < x.seen.size(); ++i) x.seen[i] |= y.seen[i];
        });
    rep.constructed = merged.lifts_of_a3;
    rep.sp_admitting = merged.admitting;
    int64_t distinct = 0;
    for (char c : merged.seen) distinct += c;
    rep.constructed_distinct = (distinct == total) && (merged.built == total);
  }
  rep.dead_end_count = rep.sp_count - rep.sp_admitting;
  return rep;
}

}  // namespace rzeta
