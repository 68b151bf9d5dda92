#pragma once

// Finite graded modules over E and their minimal free and injective
// resolutions, all by degreewise linear algebra.
//
// Modules are right modules. A module is stored as its graded pieces
// P_lo .. P_hi together with the matrices of p ↦ p·e_i, which map P_j to
// P_{j-1}. Any family of such matrices that square to zero and pairwise
// anticommute is an E-module.

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bgg/complexes.hpp"
#include "bgg/field.hpp"
#include "bgg/rings.hpp"

namespace bgg {

/// Matrix of x ↦ x·e_i on a free E-module, from degree j to j-1.
inline KMatrix right_action(const EFree& F, int i, int j) {
  const auto src = F.offsets(j);
  const auto tgt = F.offsets(j - 1);
  KMatrix out(tgt.back(), src.back());
  const auto bit = ExteriorAlgebra::Mono{1} << i;
  for (std::size_t r = 0; r < F.rank(); ++r) {
    const auto& monos = F.alg.basis(j - F.degrees[r]);
    for (std::size_t k = 0; k < monos.size(); ++k) {
      auto prod = ExteriorAlgebra::mul(monos[k], bit);
      if (!prod) continue;
      out(tgt[r] + F.alg.index(prod->first), src[r] + k) = Scalar(prod->second);
    }
  }
  return out;
}

struct EModule {
  int v = 0;
  int lo = 0;
  std::vector<std::size_t> dims;
  // act[i][k] : P_{lo+k} → P_{lo+k-1}; act[i][0] has zero rows
  std::vector<std::vector<KMatrix>> act;

  EModule() = default;
  EModule(int nvars, int low, std::vector<std::size_t> d) : v(nvars), lo(low), dims(std::move(d)) {
    act.assign(static_cast<std::size_t>(v), {});
    for (int i = 0; i < v; ++i)
      for (std::size_t k = 0; k < dims.size(); ++k) act[i].emplace_back(k == 0 ? 0 : dims[k - 1], dims[k]);
  }

  int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
  std::size_t dim(int j) const { return (j < lo || j > hi()) ? 0 : dims[static_cast<std::size_t>(j - lo)]; }
  std::size_t total_dim() const {
    std::size_t s = 0;
    for (auto d : dims) s += d;
    return s;
  }

  /// p ↦ p·e_i on P_j.
  KMatrix action(int i, int j) const {
    if (j < lo || j > hi()) return KMatrix(dim(j - 1), dim(j));
    return act[i][static_cast<std::size_t>(j - lo)];
  }
  KMatrix& action_ref(int i, int j) { return act[i][static_cast<std::size_t>(j - lo)]; }

  /// p·a for a homogeneous exterior polynomial a, p ∈ P_j.
  Vec apply(int j, const Vec& p, const ExtPoly& a) const {
    if (a.is_zero()) return Vec(dim(j + *a.degree()));
    Vec out(dim(j + *a.degree()));
    for (const auto& [m, c] : a.terms()) {
      Vec cur = p;
      int deg = j;
      for (int i = 0; i < v; ++i)
        if (m >> i & 1) cur = action(i, deg--) * cur;
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += c * cur[k];
    }
    return out;
  }

  /// Each e_i squares to zero and distinct e_i anticommute.
  bool is_valid() const {
    for (int j = lo; j <= hi(); ++j)
      for (int i = 0; i < v; ++i)
        for (int k = i; k < v; ++k) {
          const KMatrix a = action(k, j - 1) * action(i, j);
          const KMatrix b = action(i, j - 1) * action(k, j);
          if (!(a + b).is_zero()) return false;
        }
    return true;
  }

  std::map<int, std::size_t> hilbert() const {
    std::map<int, std::size_t> h;
    for (int j = lo; j <= hi(); ++j)
      if (dim(j)) h[j] = dim(j);
    return h;
  }

  static EModule free(const EFree& F) {
    const auto [a, b] = F.degree_span();
    if (b < a) return EModule(F.alg.v, 0, {});
    std::vector<std::size_t> d;
    for (int j = a; j <= b; ++j) d.push_back(F.piece_dim(j));
    EModule m(F.alg.v, a, d);
    for (int j = a + 1; j <= b; ++j)
      for (int i = 0; i < F.alg.v; ++i) m.action_ref(i, j) = right_action(F, i, j);
    return m;
  }

  /// K concentrated in degree a.
  static EModule residue_field(int v, int a = 0) { return EModule(v, a, {1}); }
};

/// Pieces num_j / den_j of a free module, where both families are closed
/// under the action and den_j ⊆ num_j. Missing degrees mean zero.
inline EModule subquotient(const EFree& A, const std::map<int, KMatrix>& num, const std::map<int, KMatrix>& den = {}) {
  const int v = A.alg.v;
  if (num.empty()) return EModule(v, 0, {});
  // quotient basis in each degree, as columns in A_j coordinates
  std::map<int, KMatrix> basis, den_cols;
  for (const auto& [j, n] : num) {
    EchelonSpace sp(n.rows());
    KMatrix d(n.rows(), 0);
    if (auto it = den.find(j); it != den.end()) {
      d = it->second;
      for (std::size_t c = 0; c < d.cols(); ++c) sp.insert(d.column(c));
    }
    std::vector<Vec> keep;
    for (std::size_t c = 0; c < n.cols(); ++c)
      if (sp.insert(n.column(c))) keep.push_back(n.column(c));
    basis[j] = KMatrix::from_columns(n.rows(), keep);
    den_cols[j] = d;
  }
  int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
  for (const auto& [j, b] : basis)
    if (b.cols()) lo = std::min(lo, j), hi = std::max(hi, j);
  if (lo > hi) return EModule(v, 0, {});
  std::vector<std::size_t> dims;
  for (int j = lo; j <= hi; ++j) dims.push_back(basis.count(j) ? basis[j].cols() : 0);
  EModule out(v, lo, dims);
  for (int j = lo + 1; j <= hi; ++j) {
    if (!out.dim(j) || !out.dim(j - 1)) continue;
    // coordinates relative to [basis | den] in degree j-1
    const KMatrix& tb = basis[j - 1];
    const KMatrix& td = den_cols[j - 1];
    KMatrix sys(tb.rows(), tb.cols() + td.cols());
    for (std::size_t r = 0; r < tb.rows(); ++r) {
      for (std::size_t c = 0; c < tb.cols(); ++c) sys(r, c) = tb(r, c);
      for (std::size_t c = 0; c < td.cols(); ++c) sys(r, tb.cols() + c) = td(r, c);
    }
    for (int i = 0; i < v; ++i) {
      const KMatrix img = right_action(A, i, j) * basis[j];
      KMatrix& m = out.action_ref(i, j);
      for (std::size_t c = 0; c < img.cols(); ++c) {
        auto x = solve(sys, img.column(c));
        if (!x) throw std::logic_error("subquotient: numerator is not closed under the action");
        for (std::size_t r = 0; r < tb.cols(); ++r) m(r, c) = (*x)[r];
      }
    }
  }
  return out;
}

/// Degreewise kernel bases of a map of free E-modules.
inline std::map<int, KMatrix> kernel_pieces(const EMap& f) {
  std::map<int, KMatrix> out;
  const auto [a, b] = f.source().degree_span();
  for (int j = a; j <= b; ++j) {
    KMatrix k = kernel_basis(degreewise_piece(f, j));
    if (k.cols()) out[j] = std::move(k);
  }
  return out;
}

inline std::map<int, KMatrix> image_pieces(const EMap& f) {
  std::map<int, KMatrix> out;
  const auto [a, b] = f.source().degree_span();
  for (int j = a; j <= b; ++j) {
    const KMatrix p = degreewise_piece(f, j);
    if (p.cols() && p.rows()) out[j] = p;
  }
  return out;
}

inline EModule kernel_module(const EMap& f) { return subquotient(f.source(), kernel_pieces(f)); }

/// coker(f) as a module of pieces.
inline EModule cokernel_module(const EMap& f) {
  std::map<int, KMatrix> all;
  const auto [a, b] = f.target().degree_span();
  for (int j = a; j <= b; ++j)
    if (auto d = f.target().piece_dim(j)) all[j] = KMatrix::identity(d);
  return subquotient(f.target(), all, image_pieces(f));
}

/// Hom_K(P, K) with (P*)_{-j} = (P_j)*; the action is the transpose.
inline EModule dual_module(const EModule& P) {
  std::vector<std::size_t> d(P.dims.rbegin(), P.dims.rend());
  EModule out(P.v, -P.hi(), d);
  for (int j = out.lo + 1; j <= out.hi(); ++j)
    for (int i = 0; i < P.v; ++i) out.action_ref(i, j) = P.action(i, -j + 1).transpose();
  return out;
}

/// A homogeneous element of a module or free module.
struct Generator {
  int degree = 0;
  Vec vec;
};

/// Minimal generators of a graded submodule given by degreewise bases
/// `sub` (columns) inside an ambient module whose action maps are `act`.
/// Works top degree down; in each degree the candidates are the columns of
/// sub[j] taken in order, kept when independent of m·sub.
template <class Action>
std::vector<Generator> minimal_generators(const std::map<int, KMatrix>& sub, Action act, int v) {
  std::vector<Generator> out;
  for (auto it = sub.rbegin(); it != sub.rend(); ++it) {
    const int j = it->first;
    const KMatrix& basis = it->second;
    EchelonSpace sp(basis.rows());
    if (auto up = sub.find(j + 1); up != sub.end())
      for (int i = 0; i < v; ++i) {
        const KMatrix img = act(i, j + 1) * up->second;
        for (std::size_t c = 0; c < img.cols(); ++c) sp.insert(img.column(c));
      }
    for (std::size_t c = 0; c < basis.cols(); ++c) {
      Vec col = basis.column(c);
      if (sp.insert(col)) out.push_back({j, std::move(col)});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Generator& a, const Generator& b) { return a.degree < b.degree; });
  return out;
}

/// Basis of P/mP.
inline std::vector<Generator> min_gens(const EModule& P) {
  std::map<int, KMatrix> all;
  for (int j = P.lo; j <= P.hi(); ++j)
    if (P.dim(j)) all[j] = KMatrix::identity(P.dim(j));
  return minimal_generators(all, [&](int i, int j) { return P.action(i, j); }, P.v);
}

/// Minimal generators of ker f, as the map C → A onto the kernel.
inline EMap syzygy_step(const EMap& f) {
  const EFree& A = f.source();
  const auto gens = minimal_generators(kernel_pieces(f), [&](int i, int j) { return right_action(A, i, j); }, A.alg.v);
  EFree C(A.alg, {});
  for (const auto& g : gens) C.degrees.push_back(g.degree);
  EMap out(C, A);
  for (std::size_t c = 0; c < gens.size(); ++c) {
    const auto col = element_from_piece(A, gens[c].degree, gens[c].vec);
    for (std::size_t r = 0; r < A.rank(); ++r) out.at(r, c) = col[r];
  }
  return out;
}

/// Minimal injective hull of coker f, as the map B → C. Computed on the
/// E-dual, where it becomes a syzygy step.
inline EMap cosyzygy_step(const EMap& f) { return dual_map(syzygy_step(dual_map(f, 0)), 0); }

/// Cover F → P by a free module on min_gens(P); returns the map's pieces.
struct Cover {
  EFree free;
  std::vector<Generator> gens;
  std::map<int, KMatrix> pieces;  // F_j → P_j
};

inline Cover cover(const EModule& P) {
  Cover c;
  c.gens = min_gens(P);
  c.free = EFree(ExteriorAlgebra(P.v), {});
  for (const auto& g : c.gens) c.free.degrees.push_back(g.degree);
  const auto [a, b] = c.free.degree_span();
  for (int j = a; j <= b; ++j) {
    const auto off = c.free.offsets(j);
    KMatrix m(P.dim(j), off.back());
    for (std::size_t r = 0; r < c.gens.size(); ++r) {
      const auto& monos = c.free.alg.basis(j - c.gens[r].degree);
      for (std::size_t k = 0; k < monos.size(); ++k) {
        const Vec img = P.apply(c.gens[r].degree, c.gens[r].vec, ExtPoly::monomial(c.free.alg, monos[k]));
        for (std::size_t t = 0; t < img.size(); ++t) m(t, off[r] + k) = img[t];
      }
    }
    c.pieces[j] = std::move(m);
  }
  return c;
}

/// Minimal free resolution F^{-steps} → … → F^0 of P, with the generators
/// of P that F^0 maps onto.
struct FreeResolution {
  EComplex complex;
  std::vector<Generator> augmentation;
};

inline FreeResolution free_resolution(const EModule& P, int steps) {
  const ExteriorAlgebra E(P.v);
  Cover c = cover(P);
  FreeResolution res{EComplex::single(c.free, 0), c.gens};
  res.complex.zero_below = false;
  if (steps <= 0 || c.free.rank() == 0) {
    res.complex.zero_below = true;
    return res;
  }
  std::map<int, KMatrix> ker;
  for (const auto& [j, m] : c.pieces) {
    KMatrix k = kernel_basis(m);
    if (k.cols()) ker[j] = std::move(k);
  }
  const EFree& F0 = c.free;
  const auto gens = minimal_generators(ker, [&](int i, int j) { return right_action(F0, i, j); }, P.v);
  EFree C(E, {});
  for (const auto& g : gens) C.degrees.push_back(g.degree);
  EMap d(C, F0);
  for (std::size_t col = 0; col < gens.size(); ++col) {
    const auto e = element_from_piece(F0, gens[col].degree, gens[col].vec);
    for (std::size_t r = 0; r < F0.rank(); ++r) d.at(r, col) = e[r];
  }
  res.complex.push_front(d);
  for (int s = 1; s < steps && res.complex.term(res.complex.lo).rank() > 0; ++s)
    res.complex.push_front(syzygy_step(res.complex.diff(res.complex.lo)));
  if (res.complex.term(res.complex.lo).rank() == 0) res.complex.zero_below = true;
  return res;
}

/// Minimal injective resolution I^0 → … → I^{steps} of P, via the K-dual:
/// the dual of a free resolution of P* with Hom_K(-, K).
inline EComplex injective_resolution(const EModule& P, int steps) {
  const auto r = free_resolution(dual_module(P), steps);
  EComplex out = dualize(r.complex, P.v);
  out.zero_below = true;
  out.zero_above = r.complex.zero_below;
  return out;
}

/// The minimal free resolution of K over E: F^{-k} has one generator of
/// degree -k per monomial of Sym_k W, and d(g_α) = Σ_i g_{α-ε_i}·e_i.
inline EComplex cartan_resolution(int v, int steps) {
  const ExteriorAlgebra E(v);
  const SymmetricAlgebra S(v);
  EComplex c(E, 0);
  c.terms.push_back(EFree(E, {0}));
  for (int k = 1; k <= steps; ++k) {
    const auto& src = S.basis(k);
    const auto& tgt = S.basis(k - 1);
    EMap d(EFree(E, std::vector<int>(src.size(), -k)), EFree(E, std::vector<int>(tgt.size(), -k + 1)));
    for (std::size_t a = 0; a < src.size(); ++a)
      for (int i = 0; i < v; ++i)
        if (SymmetricAlgebra::exponent(src[a], i) > 0)
          d.at(S.index(src[a] - SymmetricAlgebra::variable(i)), a) = ext_var(E, i);
    c.push_front(d);
  }
  return c;
}

/// dim Ext^i_E(K, P)_j, from Hom_E(Cartan resolution, P). A degree-j
/// homomorphism sends a generator of degree g to P_{g+j}.
inline std::size_t ext_E_K(const EModule& P, int i, int j) {
  if (i < 0) return 0;
  const EComplex F = cartan_resolution(P.v, i + 1);
  // Hom(F^{-k}, P)_j has coordinates (generator, vector in P_{-k+j})
  auto hom_dim = [&](int k) { return F.term(-k).rank() * P.dim(-k + j); };
  // δ : Hom(F^{-k}, P) → Hom(F^{-k-1}, P), φ ↦ φ ∘ d
  auto delta = [&](int k) {
    const EMap& d = F.diff(-k - 1);
    const std::size_t pk = P.dim(-k + j), pk1 = P.dim(-k - 1 + j);
    KMatrix out(d.cols() * pk1, d.rows() * pk);
    if (out.empty()) return out;
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t c = 0; c < d.cols(); ++c) {
        if (d.at(r, c).is_zero()) continue;
        for (std::size_t t = 0; t < pk; ++t) {
          Vec e(pk);
          e[t] = Scalar(1);
          const Vec img = P.apply(-k + j, e, d.at(r, c));
          for (std::size_t s = 0; s < pk1; ++s) out(c * pk1 + s, r * pk + t) += img[s];
        }
      }
    return out;
  };
  const std::size_t dim = hom_dim(i);
  if (dim == 0) return 0;
  const std::size_t out_rank = rank(delta(i));
  const std::size_t in_rank = i > 0 ? rank(delta(i - 1)) : 0;
  return dim - out_rank - in_rank;
}

/// The linear complex built from the connecting homomorphisms of
/// 0 → V → E/(V)^2 → K → 0 tensored with F. Terms are the homology of
/// K ⊗_E F; a class z in degree i lifts to E/(V)^2 ⊗ F^i, its image under
/// d lies in V ⊗ F^{i+1} and its class there gives the linear map.
inline EComplex linear_part_oracle(const EComplex& F) {
  const ExteriorAlgebra E = F.alg;
  const int v = E.v;
  // K ⊗ d: the constant coefficients
  auto constant = [&](int i) {
    const EMap& d = F.diff(i);
    KMatrix m(d.rows(), d.cols());
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t c = 0; c < d.cols(); ++c) m(r, c) = d.at(r, c).constant();
    return m;
  };
  // homology basis of K ⊗ F at i, homogeneous by generator degree,
  // with a complement system to express classes
  struct Homology {
    std::vector<Vec> reps;
    std::vector<int> degs;
    KMatrix image;  // columns spanning im(K ⊗ d^{i-1})
  };
  auto homology = [&](int i) {
    Homology h;
    const GradedFree<ExteriorAlgebra>& T = F.term(i);
    h.image = i > F.lo ? constant(i - 1) : KMatrix(T.rank(), 0);
    const KMatrix out = i < F.hi() ? constant(i) : KMatrix(0, T.rank());
    std::map<int, std::vector<std::size_t>> by_degree;
    for (std::size_t r = 0; r < T.rank(); ++r) by_degree[T.degrees[r]].push_back(r);
    EchelonSpace sp(T.rank());
    for (std::size_t c = 0; c < h.image.cols(); ++c) sp.insert(h.image.column(c));
    for (const auto& [deg, idx] : by_degree) {
      KMatrix sub(out.rows(), idx.size());
      for (std::size_t r = 0; r < out.rows(); ++r)
        for (std::size_t k = 0; k < idx.size(); ++k) sub(r, k) = out(r, idx[k]);
      const KMatrix ker = kernel_basis(sub);
      for (std::size_t c = 0; c < ker.cols(); ++c) {
        Vec z(T.rank());
        for (std::size_t k = 0; k < idx.size(); ++k) z[idx[k]] = ker(k, c);
        if (sp.insert(z)) {
          h.reps.push_back(z);
          h.degs.push_back(deg);
        }
      }
    }
    return h;
  };
  std::vector<Homology> hs;
  for (int i = F.lo; i <= F.hi(); ++i) hs.push_back(homology(i));
  EComplex out(E, F.lo);
  for (const auto& h : hs) out.terms.emplace_back(E, h.degs);
  for (int i = F.lo; i < F.hi(); ++i) {
    const EMap& d = F.diff(i);
    const Homology& src = hs[static_cast<std::size_t>(i - F.lo)];
    const Homology& tgt = hs[static_cast<std::size_t>(i + 1 - F.lo)];
    // express y ∈ ker(K ⊗ d^{i+1}) modulo the image in the target basis
    KMatrix sys(d.rows(), tgt.reps.size() + tgt.image.cols());
    for (std::size_t r = 0; r < d.rows(); ++r) {
      for (std::size_t c = 0; c < tgt.reps.size(); ++c) sys(r, c) = tgt.reps[c][r];
      for (std::size_t c = 0; c < tgt.image.cols(); ++c) sys(r, tgt.reps.size() + c) = tgt.image(r, c);
    }
    EMap lin(out.term(i), out.term(i + 1));
    for (std::size_t c = 0; c < src.reps.size(); ++c)
      for (int s = 0; s < v; ++s) {
        const auto bit = ExteriorAlgebra::Mono{1} << s;
        Vec y(d.rows());
        for (std::size_t r = 0; r < d.rows(); ++r)
          for (std::size_t k = 0; k < d.cols(); ++k)
            if (!src.reps[c][k].is_zero()) y[r] += d.at(r, k).coefficient(bit) * src.reps[c][k];
        auto x = solve(sys, y);
        if (!x) throw std::logic_error("linear_part_oracle: connecting image is not a cycle");
        for (std::size_t r = 0; r < tgt.reps.size(); ++r)
          if (!(*x)[r].is_zero()) lin.at(r, c) += ExtPoly::monomial(E, bit, (*x)[r]);
      }
    lin.check_homogeneous();
    out.diffs.push_back(std::move(lin));
  }
  out.zero_below = F.zero_below;
  out.zero_above = F.zero_above;
  return out;
}

/// coker(lin(presentation)), the special fibre of the t-family.
inline EModule lin_module(const EMap& presentation) { return cokernel_module(linear_part(presentation)); }

/// Compares the Hilbert function of each syzygy module N_k of P with that
/// of its lin_module. N_k is presented by F^{-k-2} → F^{-k-1}.
struct TFamilyReport {
  std::vector<bool> equal;        // equal[k] for k = 0 .. depth
  std::optional<int> onset;       // smallest k with equality from k to depth
};

inline TFamilyReport t_family_check(const EModule& P, int depth) {
  const auto res = free_resolution(P, depth + 2);
  TFamilyReport rep;
  for (int k = 0; k <= depth; ++k) {
    const int i = -k - 2;
    if (i < res.complex.lo) {
      rep.equal.push_back(true);  // syzygy is free or zero from here on
      continue;
    }
    const EMap& pres = res.complex.diff(i);
    rep.equal.push_back(cokernel_module(pres).hilbert() == lin_module(pres).hilbert());
  }
  for (int k = depth; k >= 0 && rep.equal[static_cast<std::size_t>(k)]; --k) rep.onset = k;
  return rep;
}

}  // namespace bgg
