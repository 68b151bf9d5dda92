#pragma once

// Oracles and random inputs shared by the test programs.

#include <random>
#include <vector>

#include "bgg/complexes.hpp"
#include "bgg/exres.hpp"
#include "bgg/smodules.hpp"

namespace testing_support {

using namespace bgg;

inline std::size_t binom(long n, long k) {
  if (k < 0 || n < k) return 0;
  std::size_t r = 1;
  for (long i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

/// dim ∧^i_j(W) as the rank of ∧^i W ⊗ Sym_{j-1} W → ∧^{i-1} W ⊗ Sym_j W.
inline std::size_t hook_dim(int v, int i, int j) {
  if (i < 1 || j < 1 || i > v) return 0;
  const ExteriorAlgebra W(v, 'x');
  const SymmetricAlgebra S(v);
  const auto& ws = W.basis(i);
  const auto& wt = W.basis(i - 1);
  const auto& ss = S.basis(j - 1);
  const auto& st = S.basis(j);
  KMatrix m(wt.size() * st.size(), ws.size() * ss.size());
  for (std::size_t a = 0; a < ws.size(); ++a)
    for (std::size_t b = 0; b < ss.size(); ++b)
      for (int t = 0; t < v; ++t)
        if (auto r = contract_mono(t, ws[a]))
          m(W.index(r->first) * st.size() + S.index(ss[b] + SymmetricAlgebra::variable(t)), a * ss.size() + b) +=
              Scalar(r->second);
  return rank(m);
}

inline Scalar small_scalar(std::mt19937& rng) { return Scalar(static_cast<std::int64_t>(rng() % 7) - 3); }

/// Cokernel of a random map between small free E-modules.
inline EModule random_e_module(std::mt19937& rng, int v) {
  const ExteriorAlgebra E(v);
  std::vector<int> tgt{0, 0, static_cast<int>(rng() % 2)};
  std::vector<int> src{-1, -1, -2, static_cast<int>(rng() % 2) - 1};
  EMap f(EFree(E, src), EFree(E, tgt));
  for (std::size_t r = 0; r < tgt.size(); ++r)
    for (std::size_t c = 0; c < src.size(); ++c) {
      std::vector<ExtPoly::Term> t;
      for (auto m : E.basis(src[c] - tgt[r]))
        if (rng() % 2) t.emplace_back(m, small_scalar(rng));
      f.at(r, c) = ExtPoly::from_terms(E, t);
    }
  return cokernel_module(f);
}

/// Random homogeneous polynomial of degree d over S.
inline SymPoly random_sym(std::mt19937& rng, const SymmetricAlgebra& S, int d) {
  std::vector<SymPoly::Term> t;
  for (auto m : S.basis(d))
    if (rng() % 2) t.emplace_back(m, small_scalar(rng));
  return SymPoly::from_terms(S, t);
}

/// Cokernel of a random map S(-a)^r → S^g ⊕ S(-1).
inline FPModuleS random_s_module(std::mt19937& rng, int v) {
  const SymmetricAlgebra S(v);
  std::vector<int> gens{0};
  if (rng() % 2) gens.push_back(1);
  std::vector<int> rels;
  const int nrel = 1 + static_cast<int>(rng() % 3);
  for (int k = 0; k < nrel; ++k) rels.push_back(1 + static_cast<int>(rng() % 2));
  SMap p(SFree(S, rels), SFree(S, gens));
  for (std::size_t r = 0; r < gens.size(); ++r)
    for (std::size_t c = 0; c < rels.size(); ++c)
      if (rels[c] >= gens[r]) p.at(r, c) = random_sym(rng, S, rels[c] - gens[r]);
  return FPModuleS(p);
}

template <class Alg>
bool exact_interior(const FreeComplex<Alg>& c, int jlo, int jhi) {
  for (int i = c.lo + 1; i < c.hi(); ++i)
    for (int j = jlo; j <= jhi; ++j)
      if (homology_dim(c, i, j)) return false;
  return true;
}

}  // namespace testing_support
