#include <gtest/gtest.h>

#include "bgg/smodules.hpp"

using namespace bgg;

namespace {

std::size_t binom(int n, int k) {
  if (k < 0 || n < k) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

FPModuleS quotient_by(const SymmetricAlgebra& S, const std::vector<SymPoly>& rels) {
  std::vector<int> degs;
  for (const auto& r : rels) degs.push_back(*r.degree());
  return FPModuleS(SMap(SFree(S, degs), SFree(S, {0}), rels));
}

FPModuleS elliptic_quartic(std::int64_t lambda) {
  const SymmetricAlgebra S(4);
  auto x = [&](int i) { return sym_var(S, i); };
  return quotient_by(S, {x(0) * x(0) + x(2) * x(2) + x(1) * x(3) * Scalar(lambda),
                         x(1) * x(1) + x(3) * x(3) + x(0) * x(2) * Scalar(lambda)});
}

// The maximal ideal (x_0..x_{v-1}) presented by its Koszul syzygies.
FPModuleS maximal_ideal(int v) {
  const SymmetricAlgebra S(v);
  std::vector<int> rel_degs;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b) pairs.emplace_back(a, b), rel_degs.push_back(2);
  SMap p(SFree(S, rel_degs), SFree(S, std::vector<int>(v, 1)));
  for (std::size_t c = 0; c < pairs.size(); ++c) {
    p.at(pairs[c].first, c) = sym_var(S, pairs[c].second);
    p.at(pairs[c].second, c) = -sym_var(S, pairs[c].first);
  }
  return FPModuleS(p);
}

}  // namespace

TEST(Pieces, FreeAndQuotients) {
  const SymmetricAlgebra S3(3);
  const auto s = FPModuleS::free(S3, {0}).pieces(0, 4);
  EXPECT_EQ(s.dims, (std::vector<std::size_t>{1, 3, 6, 10, 15}));
  EXPECT_TRUE(s.is_commutative());
  const SymmetricAlgebra S2(2);
  const auto q = quotient_by(S2, {sym_var(S2, 0)}).pieces(0, 5);
  EXPECT_EQ(q.dims, (std::vector<std::size_t>(6, 1)));
  const auto e = elliptic_quartic(1).pieces(0, 6);
  EXPECT_EQ(e.dims, (std::vector<std::size_t>{1, 4, 8, 12, 16, 20, 24}));
  EXPECT_TRUE(e.is_commutative());
  EXPECT_TRUE(maximal_ideal(4).pieces(0, 4).is_commutative());
}

TEST(Pieces, Truncate) {
  const auto e = elliptic_quartic(1).pieces(0, 6);
  EXPECT_EQ(truncate(e, 0).dims, e.dims);
  EXPECT_EQ(truncate(e, 2).dims, (std::vector<std::size_t>{8, 12, 16, 20, 24}));
  EXPECT_EQ(truncate(e, 2).dim(1), 0u);
  EXPECT_EQ(truncate(e, 2).x(0, 3), e.x(0, 3));
  const SymmetricAlgebra S3(3);
  const auto t = truncate(FPModuleS::free(S3, {0}).pieces(0, 4), 1);
  EXPECT_EQ(t.dims, (std::vector<std::size_t>{3, 6, 10, 15}));
}

TEST(KoszulTor, ClassicalCases) {
  for (int v = 1; v <= 4; ++v) {
    const SymmetricAlgebra S(v);
    const auto s = FPModuleS::free(S, {0}).pieces(0, v + 3);
    const auto k = residue_field(v, 0, v + 3);
    const auto m = maximal_ideal(v).pieces(0, v + 3);
    for (int i = 0; i <= v; ++i)
      for (int j = 0; j <= v + 2; ++j) {
        EXPECT_EQ(koszul_tor(s, i, j), (i == 0 && j == 0) ? 1u : 0u);
        EXPECT_EQ(koszul_tor(k, i, j), i == j ? binom(v, i) : 0u);
        EXPECT_EQ(koszul_tor(m, i, j), j == i + 1 ? binom(v, i + 1) : 0u);
      }
  }
}

TEST(KoszulTor, EllipticQuarticIsCompleteIntersection) {
  const auto e = elliptic_quartic(1).pieces(0, 8);
  EXPECT_EQ(koszul_tor(e, 0, 0), 1u);
  EXPECT_EQ(koszul_tor(e, 1, 2), 2u);
  EXPECT_EQ(koszul_tor(e, 2, 4), 1u);
  std::size_t total = 0;
  for (const auto& [ij, b] : koszul_betti(e, 7)) total += b;
  EXPECT_EQ(total, 4u);
}

TEST(Regularity, Scan) {
  const SymmetricAlgebra S(3);
  auto r = regularity_scan(FPModuleS::free(S, {0}).pieces(0, 10), 0);
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(r.r, 0);
  r = regularity_scan(residue_field(3, 0, 10), 0);
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(r.r, 0);
  r = regularity_scan(elliptic_quartic(1).pieces(0, 12), 0);
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(r.r, 2);
  r = regularity_scan(elliptic_quartic(1).pieces(0, 4), 0);
  EXPECT_FALSE(r.complete);
}

TEST(Present, RecoversQuotientRing) {
  const auto M = elliptic_quartic(1);
  const auto P = present(M.pieces(0, 6), 4);
  EXPECT_EQ(P.generators().degrees, std::vector<int>{0});
  EXPECT_EQ(P.presentation().source().degrees, (std::vector<int>{2, 2}));
  const auto a = M.pieces(0, 9), b = P.pieces(0, 9);
  EXPECT_EQ(a.dims, b.dims);
}

TEST(Present, MaximalIdealHasKoszulRelations) {
  const auto P = present(maximal_ideal(4).pieces(0, 5), 4);
  EXPECT_EQ(P.generators().degrees, std::vector<int>(4, 1));
  EXPECT_EQ(P.presentation().source().degrees, std::vector<int>(6, 2));
  EXPECT_EQ(P.pieces(0, 7).dims, maximal_ideal(4).pieces(0, 7).dims);
}

TEST(Present, ModuleFromPiecesOnly) {
  // k[x,y] modulo (x, y)^3 starting in degree 1: no relations before degree 3
  GradedPiecesModule m(2, 1);
  m.push_piece(2, {});
  KMatrix x(3, 2), y(3, 2);
  x(0, 0) = Scalar(1), x(1, 1) = Scalar(1);
  y(1, 0) = Scalar(1), y(2, 1) = Scalar(1);
  m.push_piece(3, {x, y});
  m.push_piece(0, {KMatrix(0, 3), KMatrix(0, 3)});
  const auto P = present(m, 3);
  EXPECT_EQ(P.generators().degrees, (std::vector<int>{1, 1}));
  EXPECT_EQ(P.presentation().source().degrees, (std::vector<int>{2, 3, 3, 3, 3}));
  EXPECT_EQ(P.pieces(1, 5).dims, (std::vector<std::size_t>{2, 3, 0, 0, 0}));
}
