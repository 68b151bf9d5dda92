#include <gtest/gtest.h>

#include "bgg/examples.hpp"
#include "bgg/tate.hpp"
#include "support.hpp"

using namespace bgg;
using testing_support::binom;
using testing_support::hook_dim;

namespace {

// Number of integer tuples of length k with entries >= lo summing to total.
std::size_t tuples(int k, int total, int lo) {
  if (k == 0) return total == 0 ? 1 : 0;
  std::size_t n = 0;
  for (int a = lo; (k - 1) * lo <= total - a; ++a) n += tuples(k - 1, total - a, lo);
  return n;
}

// Line bundle cohomology on P^n from Cech monomials: h^0 counts monomials
// with nonnegative exponents, h^n those with all exponents negative.
std::size_t line_bundle(int n, int j, int d) {
  if (j == 0) return tuples(n + 1, d, 0);
  if (j == n) return tuples(n + 1, -d, 1);
  return 0;
}

GradedPiecesModule ring_pieces(int v, int hi) { return FPModuleS::free(SymmetricAlgebra(v), {0}).pieces(0, hi); }

std::vector<std::map<int, int>> columns(const TateWindow& t) {
  std::vector<std::map<int, int>> out;
  for (int e = t.lo(); e <= t.hi(); ++e) out.push_back(t.complex.term(e).degree_counts());
  return out;
}

}  // namespace

TEST(Tate, LineBundlesMatchMonomialCount) {
  for (int n = 1; n <= 4; ++n) {
    const auto T = tate_from_module(ring_pieces(n + 1, 8 + n), 0, n - 8, 1);
    EXPECT_TRUE(T.sheaf_certified());
    const auto table = cohomology_table(T, 0, n, -8, 8);
    EXPECT_EQ(table.unknown(), 0u);
    for (int j = 0; j <= n; ++j)
      for (int d = -8; d <= 8; ++d) EXPECT_EQ(table.at(j, d), line_bundle(n, j, d)) << n << " " << j << " " << d;
  }
  EXPECT_EQ(line_bundle(2, 0, 2), 6u);
  EXPECT_EQ(line_bundle(2, 2, -3), 1u);
}

TEST(Tate, ColumnRanksOfStructureSheaf) {
  const auto T = tate_from_module(ring_pieces(3, 8), 0, -3, 3);
  for (int e = -3; e <= 3; ++e) {
    std::size_t want = 0;
    for (int j = 0; j <= 2; ++j) want += line_bundle(2, j, e - j);
    EXPECT_EQ(T.complex.term(e).rank(), want) << e;
  }
  for (int e = -2; e < 3; ++e)
    for (int j = e; j <= e + 3; ++j) EXPECT_EQ(homology_dim(T.complex, e, j), 0u);
}

TEST(Tate, EllipticQuarticWindow) {
  const auto T = tate_from_module(examples::elliptic_quartic(1), 2, -3, 3);
  using C = std::map<int, int>;
  // ω^a(t) has generators in degree 4 - t
  const std::vector<C> want{{{0, 16}}, {{1, 12}}, {{2, 8}}, {{3, 4}, {4, 1}}, {{4, 1}, {5, 4}}, {{6, 8}}, {{7, 12}}};
  EXPECT_EQ(columns(T), want);
  EXPECT_TRUE(T.sheaf_certified());
  EXPECT_EQ(T.cell(1, 0), 1u);
  EXPECT_EQ(T.cell(0, 0), 1u);
  EXPECT_EQ(T.cell(0, 1), 4u);
  EXPECT_TRUE(tate_cross_check(examples::elliptic_quartic(1).pieces(0, 10), 2, -3, 3));

  const auto G = linear_monad(T);
  EXPECT_EQ(G.complex.lo, -2);
  EXPECT_EQ(G.complex.ranks(), (std::vector<int>{8, 20, 16, 4}));
  EXPECT_EQ(G.complex.term(-2).degrees, std::vector<int>(8, 2));
  EXPECT_EQ(G.complex.term(1).degrees, std::vector<int>(4, -1));
  const auto chk = check_linear_monad(T, G.complex, -4, 5);
  EXPECT_TRUE(chk.ok);
  EXPECT_EQ(chk.unknown, 0u);

  const auto H = tate_from_matrix(examples::heisenberg_quartic(1), -3, 3, 0);
  EXPECT_EQ(columns(H), want);
}

TEST(Tate, HorrocksMumford) {
  const auto T = tate_from_matrix(examples::horrocks_mumford(), -8, 8, -1);
  EXPECT_TRUE(T.sheaf_certified());
  const auto b = betti_table(T);
  EXPECT_EQ(b.strands(), (std::vector<int>{0, 1, 2, 3, 4}));
  const auto s4 = b.strand(4);
  ASSERT_GE(s4.size(), 3u);
  EXPECT_EQ(std::vector<std::size_t>(s4.end() - 3, s4.end()), (std::vector<std::size_t>{100, 35, 4}));
  EXPECT_EQ(b.strand(3), (std::vector<std::size_t>{2, 10, 10, 5}));
  EXPECT_EQ(b.strand(2), (std::vector<std::size_t>{2}));
  EXPECT_EQ(b.strand(1), (std::vector<std::size_t>{5, 10, 10, 2}));
  const auto s0 = b.strand(0);
  EXPECT_EQ(std::vector<std::size_t>(s0.begin(), s0.begin() + 3), (std::vector<std::size_t>{4, 35, 100}));

  // χ(F(m)) from fully known columns; its 4th difference is the rank
  std::vector<long> chi;
  for (int m = -20; m <= 20; ++m) {
    long x = 0;
    bool ok = true;
    for (int j = 0; j <= 4 && ok; ++j) {
      const auto c = T.cell(j, m);
      ok = c.has_value();
      if (ok) x += (j % 2 ? -1 : 1) * static_cast<long>(*c);
    }
    if (ok) chi.push_back(x);
  }
  ASSERT_GE(chi.size(), 5u);
  for (int k = 0; k < 4; ++k)
    for (std::size_t i = 0; i + 1 < chi.size(); ++i) chi[i] = chi[i + 1] - chi[i];
  for (std::size_t i = 0; i + 4 < chi.size() + 4 - 4 && i < chi.size() - 4; ++i) EXPECT_EQ(chi[i], 2);
}

TEST(Tate, OmegaWindowsAreHooks) {
  for (int v = 3; v <= 5; ++v)
    for (int p = 0; p < v; ++p) {
      const auto T = tate_from_module(examples::omega_module(v, p), p + 1, p - 3, p + 3);
      EXPECT_TRUE(T.sheaf_certified());
      EXPECT_EQ(T.complex.term(p).rank(), 1u);
      EXPECT_EQ(T.column(p), (Column{{p, 1}}));
      for (int k = 1; k <= 3; ++k) {
        EXPECT_EQ(T.complex.term(p + k).rank(), hook_dim(v, p + 1, k)) << v << p << k;
        EXPECT_EQ(T.complex.term(p - k).rank(), hook_dim(v, v - p, k)) << v << p << k;
      }
      // h^q(Ω^p(p)(-j)) = 1 exactly when p = q = j
      const auto Tp = tate_twist(T, p);
      for (int q = 0; q < v; ++q)
        for (int j = -3; j <= v + 2; ++j) {
          if (!((0 <= j && j <= v - 1) || (1 <= q && q <= v - 2))) continue;
          const auto c = Tp.cell(q, -j);
          if (!c) continue;
          EXPECT_EQ(*c, (p == q && q == j) ? 1u : 0u) << v << p << q << j;
        }
    }
}

TEST(Tate, RationalNormalCurves) {
  for (auto [d, k] : std::vector<std::pair<int, int>>{{3, 0}, {4, 1}, {4, -1}, {5, 2}}) {
    const auto M = examples::rnc(d, k, 2 + d + 4);
    const auto T = tate_from_module(M, 2, -4, 3);
    const auto b = betti_table(T);
    const auto s0 = b.strand(0);
    std::vector<std::size_t> top;
    for (std::size_t x : {k + 1, d + k + 1, 2 * d + k + 1})
      if (x) top.push_back(x);
    ASSERT_GE(s0.size(), top.size());
    EXPECT_EQ(std::vector<std::size_t>(s0.begin(), s0.begin() + static_cast<long>(top.size())), top) << d << k;
    const auto s1 = b.strand(1);
    ASSERT_GE(s1.size(), 3u);
    EXPECT_EQ(std::vector<std::size_t>(s1.end() - 3, s1.end()),
              (std::vector<std::size_t>{static_cast<std::size_t>(3 * d - k - 1), static_cast<std::size_t>(2 * d - k - 1),
                                        static_cast<std::size_t>(d - k - 1)}))
        << d << k;
    EXPECT_EQ(b.strands(), (std::vector<int>{0, 1}));
    if (k == -1) {
      // T^0 = ω^d in strand 1 maps to T^1 = ω^d in strand 0 by 2-forms
      const EMap& m = T.complex.diff(0);
      EXPECT_EQ(m.rows(), static_cast<std::size_t>(d));
      EXPECT_EQ(m.cols(), static_cast<std::size_t>(d));
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) EXPECT_TRUE(m.at(r, c).is_homogeneous_of(-2));
    }
  }
}

TEST(Tate, DualIsSerreDual) {
  for (int n = 2; n <= 3; ++n) {
    const auto T = tate_from_module(ring_pieces(n + 1, 6 + n), 0, -4, 2);
    const auto D = tate_dual(T);
    // O^∨ ⊗ ω = O(-n-1): the module S with generator in degree n + 1
    const auto W = tate_from_module(FPModuleS::free(SymmetricAlgebra(n + 1), {n + 1}), n + 1, -4, 2);
    for (int j = 0; j <= n; ++j)
      for (int l = -6; l <= 6; ++l) {
        const auto a = D.cell(j, l), b = W.cell(j, l), c = T.cell(n - j, -l);
        if (a && b) {
          EXPECT_EQ(*a, *b) << n << j << l;
        }
        if (a && c) {
          EXPECT_EQ(*a, *c) << n << j << l;
        }
      }
    EXPECT_EQ(betti_table(tate_dual(D)).entries, betti_table(T).entries);
  }
}

TEST(Tate, MatrixIdentityGivesZeroWindow) {
  const auto T = tate_from_matrix(EMap::identity(EFree(ExteriorAlgebra(3), {0, 1})), -2, 2, -1);
  for (int e = -2; e <= 2; ++e) EXPECT_EQ(T.complex.term(e).rank(), 0u);
  EXPECT_EQ(T.cell(0, 5), 0u);
}

TEST(Tate, LocalCohomology) {
  // S: only H^v_m, dual to S
  const int v = 3;
  const auto S = local_cohomology_table(ring_pieces(v, 8), 0, -5);
  for (const auto& [qk, n] : S) {
    EXPECT_EQ(qk.first, v);
    EXPECT_EQ(n, binom(-qk.second - 1, v - 1)) << qk.second;
  }
  EXPECT_EQ(S.at({v, -3}), 1u);
  // K: H^0_m = K in degree 0
  const auto K = local_cohomology_table(residue_field(3, 0, 8), 0, -3);
  EXPECT_EQ(K, (std::map<std::pair<int, int>, std::size_t>{{{0, 0}, 1}}));
  // elliptic quartic truncated at 3: H^1_m = sections below 3, H^2_m = H^1
  const auto ell = examples::elliptic_quartic(1).pieces(0, 10);
  const auto L = local_cohomology_table(ell, 3, -3);
  const auto T = tate_from_module(ell, 2, -6, 3);
  for (const auto& [qk, n] : L) {
    const auto [q, k] = qk;
    ASSERT_TRUE(q == 1 || q == 2) << q;
    if (q == 1) {
      EXPECT_EQ(n, k < 3 ? *T.cell(0, k) : 0u) << k;
    } else {
      EXPECT_EQ(n, *T.cell(1, k)) << k;
    }
  }
  EXPECT_EQ(L.at({1, 0}), 1u);
  EXPECT_EQ(L.at({2, 0}), 1u);
}

TEST(Tate, Regularity) {
  const SymmetricAlgebra S3(3);
  auto r = regularity(FPModuleS::free(S3, {0}), 4);
  EXPECT_EQ(r.r, 0);
  EXPECT_TRUE(r.certified);
  r = regularity(examples::elliptic_quartic(1), 6);
  EXPECT_EQ(r.r, 2);
  EXPECT_TRUE(r.certified) << r.note;
  r = regularity(examples::omega_module(4, 1), 6);
  EXPECT_EQ(r.r, 2);
  EXPECT_TRUE(r.certified) << r.note;
}

TEST(Tate, RenderingUsesDots) {
  const auto T = tate_from_module(ring_pieces(3, 6), 0, -2, 2);
  const std::string s = betti_table(T).render();
  EXPECT_NE(s.find('.'), std::string::npos);
  EXPECT_NE(s.find("2:"), std::string::npos);
  const std::string c = cohomology_table(T, 0, 2, -10, 10).render();
  EXPECT_NE(c.find('?'), std::string::npos);
}
