#include <gtest/gtest.h>

#include <random>

#include "bgg/bgg.hpp"
#include "bgg/examples.hpp"
#include "support.hpp"

using namespace bgg;
using testing_support::binom;
using testing_support::hook_dim;

namespace {

GradedPiecesModule ring_pieces(int v, int hi) { return FPModuleS::free(SymmetricAlgebra(v), {0}).pieces(0, hi); }

// Matrix of a linear map given as a function on coordinate vectors.
template <class F>
KMatrix matrix_of(std::size_t n, F&& f) {
  std::vector<Vec> cols;
  std::size_t rows = 0;
  for (std::size_t k = 0; k < n; ++k) {
    Vec e(n);
    e[k] = Scalar(1);
    cols.push_back(f(e));
    rows = cols.back().size();
  }
  return KMatrix::from_columns(rows, cols);
}

}  // namespace

TEST(RFunctor, ResidueFieldAndRing) {
  const auto r = R_module(residue_field(3, 0, 1), 0, 1);
  ASSERT_EQ(r.terms.size(), 2u);
  EXPECT_EQ(r.term(0).degrees, std::vector<int>{3});
  for (int j = 0; j <= 3; ++j) EXPECT_EQ(homology_dim(r, 0, j), binom(3, j));

  const auto s = R_module(ring_pieces(2, 4), 0, 4);
  EXPECT_EQ(s.ranks(), (std::vector<int>{1, 2, 3, 4, 5}));
  EXPECT_TRUE(verify_complex(s));
  for (int i = 1; i < 4; ++i)
    for (int j = i; j <= i + 2; ++j) EXPECT_EQ(homology_dim(s, i, j), 0u);
}

TEST(RFunctor, HomologyIsKoszulTor) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int v = 2 + trial % 2;
    const auto M = testing_support::random_s_module(rng, v).pieces(0, 5);
    const auto r = R_module(M, 0, 4);
    ASSERT_TRUE(verify_complex(r));
    for (int i = 0; i < 4; ++i)
      for (int j = i; j <= i + v; ++j) ASSERT_EQ(homology_dim(r, i, j), koszul_tor(M, j - i, j)) << trial;
  }
}

TEST(RFunctor, OmegaGivesInjectiveResolution) {
  for (int v = 2; v <= 4; ++v)
    for (int i = 0; i < v - 1; ++i) {
      const auto M = examples::omega_module(v, i).pieces(i + 1, i + 6);
      const auto r = R_module(M, i + 1, i + 5);
      for (int k = i + 1; k <= i + 5; ++k) EXPECT_EQ(M.dim(k), hook_dim(v, i + 1, k - i)) << v << i << k;
      EXPECT_TRUE(testing_support::exact_interior(r, -10, 20)) << v << " " << i;
    }
}

TEST(LFunctor, OmegaEGivesKoszulComplex) {
  const int v = 3;
  const auto l = L_module(EModule::free(examples::omega_E(v)));
  EXPECT_TRUE(verify_complex(l));
  for (int j = 0; j <= v; ++j) EXPECT_EQ(l.term_or_zero(-j).rank(), binom(v, j));
  for (int t = 0; t <= 5; ++t) {
    EXPECT_EQ(homology_dim(l, 0, t), t == 0 ? 1u : 0u);
    for (int i = -v; i < 0; ++i) EXPECT_EQ(homology_dim(l, i, t), 0u);
  }
}

TEST(LFunctor, QuotientsOfOmegaEResolveOmega) {
  for (int v = 2; v <= 4; ++v)
    for (int i = 0; i < v; ++i) {
      const auto l = L_module(examples::omega_quotient(v, v - i));
      ASSERT_TRUE(verify_complex(l));
      const auto M = examples::omega_module(v, i).pieces(0, 7);
      for (int t = 0; t <= 7; ++t)
        for (int c = -v; c <= 0; ++c) {
          const std::size_t want = c == -(i + 1) ? M.dim(t) : 0;
          EXPECT_EQ(homology_dim(l, c, t), want) << v << i << c << t;
        }
    }
}

TEST(LFunctor, HomologyIsExt) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int v = 2 + trial % 2;
    const EModule P = testing_support::random_e_module(rng, v);
    const auto l = L_module(P);
    ASSERT_TRUE(verify_complex(l));
    for (int i = -P.hi(); i <= -P.lo; ++i)
      for (int t = 0; t <= 3; ++t) ASSERT_EQ(homology_dim(l, i, t), ext_E_K(P, t + i, t)) << trial << " " << i << " " << t;
  }
}

TEST(RFunctor, TwoTermComplex) {
  // S/(x, y^2) → S/(x^2, y)(1), 1 ↦ x
  const SymmetricAlgebra S(2);
  const auto x = sym_var(S, 0), y = sym_var(S, 1);
  const auto A = FPModuleS(SMap(SFree(S, {1, 2}), SFree(S, {0}), {x, y * y})).pieces(-1, 3);
  const auto B = FPModuleS(SMap(SFree(S, {1, 0}), SFree(S, {-1}), {x * x, y})).pieces(-1, 3);
  PiecesComplex G;
  G.terms = {A, B};
  G.maps = {{{0, KMatrix{{1}}}}};
  const auto r = R_complex(G, -1, 2);
  ASSERT_TRUE(verify_complex(r));
  EXPECT_EQ(r.term(0).degree_counts(), (std::map<int, int>{{1, 1}, {2, 1}}));
  EXPECT_EQ(r.term(1).degree_counts(), (std::map<int, int>{{2, 1}, {3, 1}}));
  const auto m = minimize(r);
  EXPECT_EQ(m.term(0).degrees, std::vector<int>{1});
  EXPECT_EQ(m.term(1).degrees, std::vector<int>{3});
  EXPECT_TRUE(m.diff(0).at(0, 0).is_homogeneous_of(-2));
  EXPECT_FALSE(m.diff(0).at(0, 0).is_zero());

  const auto h0 = homology_module(G, 0, -1, 3);
  const auto h1 = homology_module(G, 1, -1, 3);
  EXPECT_EQ(h0.dims, (std::vector<std::size_t>{0, 0, 1, 0, 0}));
  EXPECT_EQ(h1.dims, (std::vector<std::size_t>{1, 0, 0, 0, 0}));
}

TEST(Adjunction, SolutionSpacesAgree) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int v = 2 + trial % 2;
    const EModule P = testing_support::random_e_module(rng, v);
    const auto M = testing_support::random_s_module(rng, v).pieces(0, 1);
    const std::size_t m0 = M.dim(0), p0 = P.dim(0);

    // chain maps L(P) → M
    auto lside = [&](const Vec& u) {
      KMatrix phi(m0, p0);
      for (std::size_t k = 0; k < u.size(); ++k) phi(k % m0, k / m0) = u[k];
      KMatrix acc(M.dim(1), P.dim(1));
      for (int i = 0; i < v; ++i) acc = acc + M.x(i, 0) * phi * P.action(i, 1);
      Vec out;
      for (std::size_t c = 0; c < acc.cols(); ++c)
        for (std::size_t r = 0; r < acc.rows(); ++r) out.push_back(acc(r, c));
      return out;
    };
    const KMatrix Lsys = matrix_of(m0 * p0, lside);
    const KMatrix Lsol = kernel_basis(Lsys);

    // chain maps P → R(M)
    const auto R = R_module(M, 0, 1);
    const EFree& R0 = R.term(0);
    std::vector<std::size_t> off{0};
    for (int j = 0; j <= v; ++j) off.push_back(off.back() + R0.piece_dim(j) * P.dim(j));
    auto unpack = [&](const Vec& u) {
      std::map<int, KMatrix> psi;
      for (int j = 0; j <= v; ++j) {
        KMatrix m(R0.piece_dim(j), P.dim(j));
        for (std::size_t k = 0; k < m.rows() * m.cols(); ++k) m(k % m.rows(), k / m.rows()) = u[off[j] + k];
        psi[j] = m;
      }
      return psi;
    };
    auto eside = [&](const Vec& u) {
      auto psi = unpack(u);
      Vec out;
      auto push = [&](const KMatrix& a) {
        for (std::size_t c = 0; c < a.cols(); ++c)
          for (std::size_t r = 0; r < a.rows(); ++r) out.push_back(a(r, c));
      };
      for (int j = 0; j <= v; ++j) {
        push(degreewise_piece(R.diff(0), j) * psi[j]);
        for (int i = 0; i < v; ++i) {
          const KMatrix lhs = j >= 1 ? psi[j - 1] * P.action(i, j) : KMatrix(0, P.dim(j));
          const KMatrix rhs = j >= 1 ? right_action(R0, i, j) * psi[j] : KMatrix(0, P.dim(j));
          push(lhs - rhs);
        }
      }
      return out;
    };
    const std::size_t n = off.back();
    const KMatrix Esys = matrix_of(n, eside);
    EXPECT_EQ(Lsol.cols(), n - rank(Esys)) << trial;

    for (std::size_t c = 0; c < Lsol.cols(); ++c) {
      KMatrix phi(m0, p0);
      for (std::size_t k = 0; k < m0 * p0; ++k) phi(k % m0, k / m0) = Lsol(k, c);
      const auto psi = adjoint_to_R(P, M, phi);
      Vec u;
      for (int j = 0; j <= v; ++j)
        for (std::size_t cc = 0; cc < psi.at(j).cols(); ++cc)
          for (std::size_t r = 0; r < psi.at(j).rows(); ++r) u.push_back(psi.at(j)(r, cc));
      ASSERT_EQ(u.size(), n);
      EXPECT_TRUE((Esys * KMatrix::from_columns(n, {u})).is_zero()) << trial;
      EXPECT_EQ(adjoint_to_L(P, M, psi), phi) << trial;
    }
  }
}

TEST(Acyclicity, Thresholds) {
  EXPECT_TRUE(acyclicity_check(ring_pieces(3, 8), 0, 4));
  EXPECT_TRUE(acyclicity_check(residue_field(3, 0, 8), 0, 4));
  const auto ell = examples::elliptic_quartic(3).pieces(0, 10);
  EXPECT_FALSE(acyclicity_check(ell, 1, 4));
  EXPECT_TRUE(acyclicity_check(ell, 2, 4));
}

TEST(LR, ResolvesTheModule) {
  const auto ell = examples::elliptic_quartic(3).pieces(0, 8);
  const auto lr = LR_resolution(truncate(ell, 2), 8);
  // in internal degrees up to the window, homology is M_{≥2} in position 0 after regrading
  for (int t = 2; t <= 5; ++t) {
    std::size_t total = 0;
    for (int i = lr.complex.lo; i <= lr.complex.hi(); ++i) total += homology_dim(lr.complex, i, t);
    EXPECT_EQ(total, ell.dim(t)) << t;
  }
}

TEST(Irredundancy, Examples) {
  const auto a = irredundancy_test(EModule::free(examples::omega_E(3)));
  EXPECT_TRUE(a.generated_in_top);
  EXPECT_TRUE(a.linearly_presented);
  const auto b = irredundancy_test(examples::omega_quotient(3, 2));
  // generated in the top degree, but m^2 ω_E needs quadratic relations
  EXPECT_TRUE(b.generated_in_top);
  EXPECT_FALSE(b.linearly_presented);
  const auto d = irredundancy_test(examples::omega_quotient(3, 1));
  EXPECT_TRUE(d.generated_in_top);
  EXPECT_TRUE(d.linearly_presented);
  EModule kk(3, 0, {1, 0, 1});
  const auto c = irredundancy_test(kk);
  EXPECT_FALSE(c.generated_in_top);
  EXPECT_FALSE(c.linearly_presented);
}
