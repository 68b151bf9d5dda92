#pragma once

// Standard modules and matrices used as inputs and fixtures.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bgg/complexes.hpp"
#include "bgg/exres.hpp"
#include "bgg/rings.hpp"
#include "bgg/smodules.hpp"

namespace bgg::examples {

/// Koszul map S ⊗ ∧^k W → S ⊗ ∧^{k-1} W, generators of ∧^k W in degree k.
inline SMap koszul_map(int v, int k) {
  const SymmetricAlgebra S(v);
  const ExteriorAlgebra W(v, 'x');
  const auto& src = W.basis(k);
  const auto& tgt = W.basis(k - 1);
  SMap d(SFree(S, std::vector<int>(src.size(), k)), SFree(S, std::vector<int>(tgt.size(), k - 1)));
  for (std::size_t a = 0; a < src.size(); ++a)
    for (int t = 0; t < v; ++t)
      if (auto r = contract_mono(t, src[a])) d.at(W.index(r->first), a) = sym_var(S, t) * Scalar(r->second);
  return d;
}

/// Ω^i = coker(S ⊗ ∧^{i+2} W → S ⊗ ∧^{i+1} W), generated in degree i+1.
/// Ω^{-1} = K and Ω^{v-1} is free of rank one.
inline FPModuleS omega_module(int v, int i) {
  if (i < -1 || i >= v) throw std::invalid_argument("omega: need -1 <= i < v");
  const SymmetricAlgebra S(v);
  if (i == v - 1) return FPModuleS::free(S, {v});
  return FPModuleS(koszul_map(v, i + 2));
}

/// Ω^i(i), generated in degree 1.
inline FPModuleS omega_twisted(int v, int i) {
  const FPModuleS m = omega_module(v, i);
  return FPModuleS(twist(m.presentation(), i));
}

/// The power (W)^j of the maximal ideal of S, as pieces on [0, hi].
inline GradedPiecesModule maximal_ideal_power_S(int v, int j, int hi) {
  const SymmetricAlgebra S(v);
  auto full = FPModuleS::free(S, {0}).pieces(0, hi);
  return truncate(full, j);
}

/// E free of rank one generated in degree 0.
inline EFree exterior(int v) { return EFree(ExteriorAlgebra(v), {0}); }
/// ω_E = Hom_K(E, K), generated in degree v.
inline EFree omega_E(int v) { return EFree(ExteriorAlgebra(v), {v}); }

namespace detail {
inline std::map<int, KMatrix> identity_pieces(const EFree& F, int from, int to) {
  std::map<int, KMatrix> out;
  for (int j = from; j <= to; ++j)
    if (auto d = F.piece_dim(j)) out[j] = KMatrix::identity(d);
  return out;
}
}  // namespace detail

/// m^j ⊂ E.
inline EModule maximal_ideal_power_E(int v, int j) {
  const EFree E = exterior(v);
  return subquotient(E, detail::identity_pieces(E, -v, -j));
}

/// ω_E / m^k ω_E.
inline EModule omega_quotient(int v, int k) {
  const EFree w = omega_E(v);
  return subquotient(w, detail::identity_pieces(w, 0, v), detail::identity_pieces(w, 0, v - k));
}

/// The quadrics x0^2 + x2^2 + λ x1 x3 and x1^2 + x3^2 + λ x0 x2 in P^3.
inline FPModuleS elliptic_quartic(std::int64_t lambda) {
  const SymmetricAlgebra S(4);
  auto x = [&](int i) { return sym_var(S, i); };
  const Scalar l(lambda);
  return FPModuleS(SMap(SFree(S, {2, 2}), SFree(S, {0}),
                        {x(0) * x(0) + x(2) * x(2) + x(1) * x(3) * l, x(1) * x(1) + x(3) * x(3) + x(0) * x(2) * l}));
}

/// Sections of O(k + md) on P^1 for m = 0 .. hi, as a module over the
/// coordinate ring of P^d through the rational normal curve:
/// x_i multiplies by s^{d-i} t^i. Basis of degree m is s^{N-a} t^a,
/// a = 0 .. N with N = k + md.
inline GradedPiecesModule rnc(int d, int k, int hi) {
  if (d < 2 || k < -1 || k > d - 2) throw std::invalid_argument("rnc: need d >= 2 and -1 <= k <= d - 2");
  GradedPiecesModule m(d + 1, 0);
  auto dim = [&](int deg) { return static_cast<std::size_t>(std::max(0, k + deg * d + 1)); };
  for (int deg = 0; deg <= hi; ++deg) {
    std::vector<KMatrix> into;
    if (deg > 0)
      for (int i = 0; i <= d; ++i) {
        KMatrix x(dim(deg), dim(deg - 1));
        for (std::size_t a = 0; a < dim(deg - 1); ++a) x(a + static_cast<std::size_t>(i), a) = Scalar(1);
        into.push_back(x);
      }
    m.push_piece(dim(deg), into);
  }
  return m;
}

/// The 2 x 5 matrix of quadrics in five exterior variables whose Tate
/// resolution is that of the Horrocks-Mumford bundle. Generator degrees
/// place the target in strand 2 when the matrix maps column -1 to 0.
inline EMap horrocks_mumford() {
  const ExteriorAlgebra E(5);
  auto e = [&](int i, int j) { return ext_var(E, i) * ext_var(E, j); };
  EMap f(EFree(E, {1, 1, 1, 1, 1}), EFree(E, {3, 3}));
  const int row0[5][2] = {{1, 4}, {2, 0}, {3, 1}, {4, 2}, {0, 3}};
  const int row1[5][2] = {{2, 3}, {3, 4}, {4, 0}, {0, 1}, {1, 2}};
  for (std::size_t c = 0; c < 5; ++c) {
    f.at(0, c) = e(row0[c][0], row0[c][1]);
    f.at(1, c) = e(row1[c][0], row1[c][1]);
  }
  return f;
}

/// The differential T^0 → T^1 of the Tate resolution of the Heisenberg
/// invariant elliptic quartic with parameter λ, from ω ⊕ ω^4(1) to
/// ω^4(-1) ⊕ ω (generator degrees 4, 3 and 5, 4).
inline EMap heisenberg_quartic(std::int64_t lambda) {
  const ExteriorAlgebra E(4);
  auto e = [&](int i) { return ext_var(E, i); };
  auto ee = [&](int i, int j) { return e(i) * e(j); };
  const Scalar l(lambda);
  const Scalar h = l * l * Scalar(2).inverse();
  EMap f(EFree(E, {4, 3, 3, 3, 3}), EFree(E, {4, 5, 5, 5, 5}));
  for (std::size_t i = 0; i < 4; ++i) {
    f.at(0, i + 1) = e(static_cast<int>(i));
    f.at(i + 1, 0) = e(static_cast<int>(i));
  }
  f.at(1, 1) = ee(1, 3) * (-l);
  f.at(1, 2) = ee(2, 3);
  f.at(1, 4) = ee(1, 2) + ee(0, 3) * h;
  f.at(2, 1) = ee(2, 3);
  f.at(2, 2) = ee(0, 2) * l;
  f.at(2, 3) = ee(0, 3) * Scalar(-1) - ee(1, 2) * h;
  f.at(3, 2) = ee(0, 3) * Scalar(-1) - ee(1, 2) * h;
  f.at(3, 3) = ee(1, 3) * l;
  f.at(3, 4) = ee(0, 1);
  f.at(4, 1) = ee(1, 2) + ee(0, 3) * h;
  f.at(4, 3) = ee(0, 1);
  f.at(4, 4) = ee(0, 2) * (-l);
  return f;
}

}  // namespace bgg::examples
