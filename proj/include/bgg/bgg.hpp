#pragma once

// The functors R (S-modules to linear complexes over E) and L (E-modules
// to linear complexes over S), on modules and on complexes of modules.
//
// R(M)^d is free of rank dim M_d with generators in degree d + v, and the
// differential has entry (b, a) = Σ_i (x_i on M_d)_{b,a} e_i.
// L(P)^{-j} is S ⊗ P_j with generators in degree j, and the differential
// has entry (q, p) = Σ_i (e_i on P_j)_{q,p} x_i.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bgg/complexes.hpp"
#include "bgg/exres.hpp"
#include "bgg/field.hpp"
#include "bgg/rings.hpp"
#include "bgg/smodules.hpp"

namespace bgg {

/// A bounded complex of S-modules given by pieces; maps[k] sends
/// terms[k] to terms[k+1] and is stored per internal degree.
struct PiecesComplex {
  int lo = 0;
  std::vector<GradedPiecesModule> terms;
  std::vector<std::map<int, KMatrix>> maps;

  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  const GradedPiecesModule& term(int i) const { return terms.at(static_cast<std::size_t>(i - lo)); }
  KMatrix map(int i, int j) const {
    const auto& m = maps.at(static_cast<std::size_t>(i - lo));
    if (auto it = m.find(j); it != m.end()) return it->second;
    return KMatrix(term(i + 1).dim(j), term(i).dim(j));
  }
};

/// A bounded complex of E-modules; maps[k] : terms[k] → terms[k+1] per degree.
struct EModuleComplex {
  int lo = 0;
  std::vector<EModule> terms;
  std::vector<std::map<int, KMatrix>> maps;

  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  const EModule& term(int i) const { return terms.at(static_cast<std::size_t>(i - lo)); }
  KMatrix map(int i, int j) const {
    const auto& m = maps.at(static_cast<std::size_t>(i - lo));
    if (auto it = m.find(j); it != m.end()) return it->second;
    return KMatrix(term(i + 1).dim(j), term(i).dim(j));
  }

  static EModuleComplex single(EModule p, int at = 0) {
    EModuleComplex c;
    c.lo = at;
    c.terms.push_back(std::move(p));
    return c;
  }

  /// A free complex viewed as a complex of modules.
  static EModuleComplex from_free(const EComplex& f) {
    EModuleComplex c;
    c.lo = f.lo;
    for (const auto& t : f.terms) c.terms.push_back(EModule::free(t));
    for (int i = f.lo; i < f.hi(); ++i) {
      std::map<int, KMatrix> m;
      const auto [a, b] = f.term(i).degree_span();
      for (int j = a; j <= b; ++j) {
        // EModule::free uses the degree span of each term; pad to it
        const EModule& src = c.term(i);
        const EModule& tgt = c.term(i + 1);
        if (!src.dim(j) || !tgt.dim(j)) continue;
        m[j] = degreewise_piece(f.diff(i), j);
      }
      c.maps.push_back(std::move(m));
    }
    return c;
  }
};

namespace detail {

inline ExtPoly linear_form_E(const ExteriorAlgebra& E, const std::vector<KMatrix>& xs, std::size_t r, std::size_t c) {
  std::vector<ExtPoly::Term> t;
  for (int i = 0; i < E.v; ++i)
    if (!xs[i](r, c).is_zero()) t.emplace_back(ExteriorAlgebra::Mono{1} << i, xs[i](r, c));
  return ExtPoly::from_terms(E, std::move(t));
}

inline SymPoly linear_form_S(const SymmetricAlgebra& S, const std::vector<KMatrix>& es, std::size_t r, std::size_t c) {
  std::vector<SymPoly::Term> t;
  for (int i = 0; i < S.v; ++i)
    if (!es[i](r, c).is_zero()) t.emplace_back(SymmetricAlgebra::variable(i), es[i](r, c));
  return SymPoly::from_terms(S, std::move(t));
}

}  // namespace detail

/// R(M) on cohomological degrees [lo, hi]; needs M_lo .. M_hi.
inline EComplex R_module(const GradedPiecesModule& M, int lo, int hi) {
  if (!M.is_commutative()) throw std::invalid_argument("R: multiplication maps do not commute");
  const ExteriorAlgebra E(M.v);
  EComplex c(E, lo);
  for (int d = lo; d <= hi; ++d) c.terms.emplace_back(E, std::vector<int>(M.dim(d), d + M.v));
  for (int d = lo; d < hi; ++d) {
    EMap f(c.term(d), c.term(d + 1));
    if (M.dim(d) && M.dim(d + 1)) {
      std::vector<KMatrix> xs;
      for (int i = 0; i < M.v; ++i) xs.push_back(M.x(i, d));
      for (std::size_t b = 0; b < M.dim(d + 1); ++b)
        for (std::size_t a = 0; a < M.dim(d); ++a) f.at(b, a) = detail::linear_form_E(E, xs, b, a);
    }
    c.diffs.push_back(std::move(f));
  }
  c.zero_below = lo <= M.lo;
  return c;
}

/// Total complex of R applied to a complex of S-modules, on total
/// degrees [lo, hi]. The component from R(F^i) to R(F^{i+1}) in internal
/// column m carries the sign (-1)^m.
inline EComplex R_complex(const PiecesComplex& F, int lo, int hi) {
  const int v = F.terms.front().v;
  const ExteriorAlgebra E(v);
  // blocks of total degree k: (i, m) with i + m = k
  auto blocks = [&](int k) {
    std::vector<std::pair<int, int>> out;
    for (int i = F.lo; i <= F.hi(); ++i)
      if (F.term(i).dim(k - i)) out.emplace_back(i, k - i);
    return out;
  };
  EComplex c(E, lo);
  std::vector<std::vector<std::pair<int, int>>> bl;
  for (int k = lo; k <= hi; ++k) {
    bl.push_back(blocks(k));
    std::vector<int> degs;
    for (auto [i, m] : bl.back()) degs.insert(degs.end(), F.term(i).dim(m), m + v);
    c.terms.emplace_back(E, degs);
  }
  for (int k = lo; k < hi; ++k) {
    const auto& src = bl[static_cast<std::size_t>(k - lo)];
    const auto& tgt = bl[static_cast<std::size_t>(k + 1 - lo)];
    EMap f(c.term(k), c.term(k + 1));
    std::size_t col = 0;
    for (auto [i, m] : src) {
      const std::size_t ns = F.term(i).dim(m);
      std::size_t row = 0;
      for (auto [i2, m2] : tgt) {
        const std::size_t nt = F.term(i2).dim(m2);
        if (i2 == i && m2 == m + 1) {
          std::vector<KMatrix> xs;
          for (int s = 0; s < v; ++s) xs.push_back(F.term(i).x(s, m));
          for (std::size_t b = 0; b < nt; ++b)
            for (std::size_t a = 0; a < ns; ++a) f.at(row + b, col + a) = detail::linear_form_E(E, xs, b, a);
        } else if (i2 == i + 1 && m2 == m) {
          const KMatrix g = F.map(i, m);
          for (std::size_t b = 0; b < nt; ++b)
            for (std::size_t a = 0; a < ns; ++a)
              f.at(row + b, col + a) = ExtPoly(E, (m % 2 == 0) ? g(b, a) : -g(b, a));
        }
        row += nt;
      }
      col += ns;
    }
    c.diffs.push_back(std::move(f));
  }
  return c;
}

/// Total complex of L applied to a complex of E-modules. The block S ⊗ (G^i)_j
/// sits in cohomological degree i - j with generators in degree j; the
/// component induced by G^i → G^{i+1} carries the sign (-1)^j.
inline SComplex L_complex(const EModuleComplex& G) {
  const int v = G.terms.front().v;
  const SymmetricAlgebra S(v);
  int kmin = 0, kmax = 0;
  bool any = false;
  for (int i = G.lo; i <= G.hi(); ++i) {
    const EModule& P = G.term(i);
    for (int j = P.lo; j <= P.hi(); ++j)
      if (P.dim(j)) {
        kmin = any ? std::min(kmin, i - j) : i - j;
        kmax = any ? std::max(kmax, i - j) : i - j;
        any = true;
      }
  }
  auto blocks = [&](int k) {
    std::vector<std::pair<int, int>> out;
    for (int i = G.lo; i <= G.hi(); ++i)
      if (G.term(i).dim(i - k)) out.emplace_back(i, i - k);
    return out;
  };
  SComplex c(S, kmin);
  std::vector<std::vector<std::pair<int, int>>> bl;
  for (int k = kmin; k <= kmax; ++k) {
    bl.push_back(blocks(k));
    std::vector<int> degs;
    for (auto [i, j] : bl.back()) degs.insert(degs.end(), G.term(i).dim(j), j);
    c.terms.emplace_back(S, degs);
  }
  for (int k = kmin; k < kmax; ++k) {
    const auto& src = bl[static_cast<std::size_t>(k - kmin)];
    const auto& tgt = bl[static_cast<std::size_t>(k + 1 - kmin)];
    SMap f(c.term(k), c.term(k + 1));
    std::size_t col = 0;
    for (auto [i, j] : src) {
      const std::size_t ns = G.term(i).dim(j);
      std::size_t row = 0;
      for (auto [i2, j2] : tgt) {
        const std::size_t nt = G.term(i2).dim(j2);
        if (i2 == i && j2 == j - 1) {
          std::vector<KMatrix> es;
          for (int s = 0; s < v; ++s) es.push_back(G.term(i).action(s, j));
          for (std::size_t b = 0; b < nt; ++b)
            for (std::size_t a = 0; a < ns; ++a) f.at(row + b, col + a) = detail::linear_form_S(S, es, b, a);
        } else if (i2 == i + 1 && j2 == j) {
          const KMatrix g = G.map(i, j);
          for (std::size_t b = 0; b < nt; ++b)
            for (std::size_t a = 0; a < ns; ++a) f.at(row + b, col + a) = SymPoly(S, (j % 2 == 0) ? g(b, a) : -g(b, a));
        }
        row += nt;
      }
      col += ns;
    }
    c.diffs.push_back(std::move(f));
  }
  c.zero_below = c.zero_above = true;
  return c;
}

inline SComplex L_module(const EModule& P) { return L_complex(EModuleComplex::single(P)); }

/// Homology H^i of a complex of S-modules, as pieces on [lo, hi].
inline GradedPiecesModule homology_module(const PiecesComplex& F, int i, int lo, int hi) {
  const int v = F.terms.front().v;
  auto out_map = [&](int j) {
    return i < F.hi() ? F.map(i, j) : KMatrix(0, F.term(i).dim(j));
  };
  auto in_map = [&](int j) {
    return i > F.lo ? F.map(i - 1, j) : KMatrix(F.term(i).dim(j), 0);
  };
  struct Piece {
    KMatrix reps;   // columns: chosen cycles
    KMatrix sys;    // [reps | boundaries]
  };
  std::vector<Piece> ps;
  for (int j = lo; j <= hi; ++j) {
    const KMatrix z = kernel_basis(out_map(j));
    const KMatrix b = in_map(j);
    EchelonSpace sp(z.rows());
    for (std::size_t c = 0; c < b.cols(); ++c) sp.insert(b.column(c));
    std::vector<Vec> keep;
    for (std::size_t c = 0; c < z.cols(); ++c)
      if (sp.insert(z.column(c))) keep.push_back(z.column(c));
    Piece p{KMatrix::from_columns(z.rows(), keep), KMatrix(z.rows(), keep.size() + b.cols())};
    for (std::size_t r = 0; r < z.rows(); ++r) {
      for (std::size_t c = 0; c < keep.size(); ++c) p.sys(r, c) = keep[c][r];
      for (std::size_t c = 0; c < b.cols(); ++c) p.sys(r, keep.size() + c) = b(r, c);
    }
    ps.push_back(std::move(p));
  }
  GradedPiecesModule h(v, lo);
  for (int j = lo; j <= hi; ++j) {
    const Piece& cur = ps[static_cast<std::size_t>(j - lo)];
    if (j == lo) {
      h.push_piece(cur.reps.cols(), {});
      continue;
    }
    const Piece& prev = ps[static_cast<std::size_t>(j - 1 - lo)];
    std::vector<KMatrix> xs;
    for (int s = 0; s < v; ++s) {
      const KMatrix img = F.term(i).x(s, j - 1) * prev.reps;
      KMatrix m(cur.reps.cols(), prev.reps.cols());
      for (std::size_t c = 0; c < img.cols(); ++c) {
        auto x = solve(cur.sys, img.column(c));
        if (!x) throw std::logic_error("homology_module: multiplication leaves the cycles");
        for (std::size_t r = 0; r < cur.reps.cols(); ++r) m(r, c) = (*x)[r];
      }
      xs.push_back(std::move(m));
    }
    h.push_piece(cur.reps.cols(), xs);
  }
  return h;
}

/// R(M_{≥d}) has no homology at positions d+1 .. d+depth. There
/// H^i(R(M_{≥d}))_j = Tor_{j-i}(K, M)_j, since the Koszul maps involved
/// only touch M in degrees ≥ d; `ranks` may be shared with a regularity scan.
inline bool acyclicity_check(KoszulRanks& ranks, int v, int d, int depth) {
  for (int i = d + 1; i <= d + depth; ++i)
    for (int j = i; j <= i + v; ++j)
      if (ranks.tor(j - i, j)) return false;
  return true;
}

inline bool acyclicity_check(const GradedPiecesModule& M, int d, int depth) {
  KoszulRanks ranks(M);
  return acyclicity_check(ranks, M.v, d, depth);
}

/// L(R(M)) built from R(M) on [M.lo, hi]; exact in internal degrees ≤ hi.
struct LRResult {
  SComplex complex;
  int valid_up_to = 0;  // internal degrees where the window is complete
};

inline LRResult LR_resolution(const GradedPiecesModule& M, int hi) {
  const EComplex r = R_module(M, M.lo, hi);
  return {L_complex(EModuleComplex::from_free(r)), hi};
}

/// Generated in the top degree of P, and moreover linearly presented.
struct Irredundancy {
  bool generated_in_top = false;
  bool linearly_presented = false;
};

inline Irredundancy irredundancy_test(const EModule& P) {
  Irredundancy out;
  const auto gens = min_gens(P);
  int top = P.lo - 1;
  for (int j = P.lo; j <= P.hi(); ++j)
    if (P.dim(j)) top = j;
  out.generated_in_top = std::all_of(gens.begin(), gens.end(), [&](const Generator& g) { return g.degree == top; });
  if (!out.generated_in_top) return out;
  const auto res = free_resolution(P, 1);
  out.linearly_presented = true;
  if (res.complex.lo < 0) {
    const EMap& d = res.complex.diff(-1);
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t c = 0; c < d.cols(); ++c)
        if (!d.at(r, c).is_homogeneous_of(-1) && !d.at(r, c).is_zero()) out.linearly_presented = false;
  }
  return out;
}

/// Adjunction transfer for a single E-module P and S-module M, both in
/// cohomological degree 0. A chain map L(P) → M is a K-linear φ : P_0 → M_0
/// killing Σ_i x_i φ(p e_i) for p ∈ P_1. The corresponding chain map
/// P → R(M) sends p ∈ P_j to the functional e ↦ φ(p·e) on E_{-j}; we
/// return its matrices P_j → R(M)^0_j for j in [0, v].
inline std::map<int, KMatrix> adjoint_to_R(const EModule& P, const GradedPiecesModule& M, const KMatrix& phi) {
  const int v = P.v;
  const ExteriorAlgebra E(v);
  std::map<int, KMatrix> out;
  // R(M)^0 has generators in degree v, piece j has coordinates
  // (basis of M_0) x (monomials of E_{j-v})
  const std::size_t m0 = M.dim(0);
  for (int j = 0; j <= v; ++j) {
    const auto& monos = E.basis(j - v);
    KMatrix psi(m0 * monos.size(), P.dim(j));
    for (std::size_t k = 0; k < monos.size(); ++k) {
      // value at the dual monomial: the generator times monos[k] pairs
      // with e = complementary monomial; we store the coefficient of
      // gen_b · monos[k], which is φ(p · e) with e the complement of monos[k]
      const auto comp = ((ExteriorAlgebra::Mono{1} << v) - 1) & ~monos[k];
      auto sign = ExteriorAlgebra::mul(monos[k], comp);
      for (std::size_t c = 0; c < P.dim(j); ++c) {
        Vec p(P.dim(j));
        p[c] = Scalar(1);
        const Vec pe = P.apply(j, p, ExtPoly::monomial(E, comp));
        const Vec val = phi * pe;
        for (std::size_t b = 0; b < m0; ++b) psi(b * monos.size() + k, c) = sign->second < 0 ? -val[b] : val[b];
      }
    }
    out[j] = std::move(psi);
  }
  return out;
}

/// Inverse transfer: φ is the component of ψ in degree 0 at the socle.
inline KMatrix adjoint_to_L(const EModule& P, const GradedPiecesModule& M, const std::map<int, KMatrix>& psi) {
  const int v = P.v;
  const ExteriorAlgebra E(v);
  const auto& monos = E.basis(-v);
  const std::size_t m0 = M.dim(0);
  KMatrix phi(m0, P.dim(0));
  const KMatrix& p0 = psi.at(0);
  auto sign = ExteriorAlgebra::mul(monos[0], 0);
  for (std::size_t b = 0; b < m0; ++b)
    for (std::size_t c = 0; c < P.dim(0); ++c) phi(b, c) = sign->second < 0 ? -p0(b, c) : p0(b, c);
  return phi;
}

}  // namespace bgg
