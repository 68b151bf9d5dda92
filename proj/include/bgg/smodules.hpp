#pragma once

// Graded S-modules given by finitely many graded pieces and the maps
// x_i : M_j → M_{j+1}, plus finitely presented modules whose pieces are
// computed degreewise as cokernels.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bgg/complexes.hpp"
#include "bgg/field.hpp"
#include "bgg/rings.hpp"

namespace bgg {

/// M_lo .. M_hi with multiplication maps. The module is zero below lo and
/// unknown above hi.
struct GradedPiecesModule {
  int v = 0;
  int lo = 0;
  std::vector<std::size_t> dims;
  // mult[i][k] : M_{lo+k} → M_{lo+k+1}, for k + 1 < dims.size()
  std::vector<std::vector<KMatrix>> mult;

  GradedPiecesModule() = default;
  GradedPiecesModule(int nvars, int low) : v(nvars), lo(low), mult(static_cast<std::size_t>(nvars)) {}

  int hi() const { return lo + static_cast<int>(dims.size()) - 1; }

  std::size_t dim(int j) const {
    if (j < lo) return 0;
    if (j > hi()) throw std::out_of_range("piece of degree " + std::to_string(j) + " is not available");
    return dims[static_cast<std::size_t>(j - lo)];
  }
  bool has(int j) const { return j <= hi(); }

  /// x_i : M_j → M_{j+1}.
  KMatrix x(int i, int j) const {
    if (j + 1 > hi()) throw std::out_of_range("multiplication out of degree " + std::to_string(j) + " is not available");
    if (j < lo) return KMatrix(dim(j + 1), 0);
    return mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - lo)];
  }

  /// Appends M_{hi+1} together with the maps into it.
  void push_piece(std::size_t d, const std::vector<KMatrix>& into) {
    if (!dims.empty()) {
      if (into.size() != static_cast<std::size_t>(v)) throw std::invalid_argument("push_piece: need one map per variable");
      for (int i = 0; i < v; ++i) {
        if (into[i].rows() != d || into[i].cols() != dims.back())
          throw std::invalid_argument("push_piece: multiplication map has wrong shape");
        mult[i].push_back(into[i]);
      }
    }
    dims.push_back(d);
  }

  /// x_i x_k = x_k x_i on every available degree.
  bool is_commutative() const {
    for (int j = lo; j + 2 <= hi(); ++j)
      for (int i = 0; i < v; ++i)
        for (int k = i + 1; k < v; ++k)
          if (!(x(i, j + 1) * x(k, j) == x(k, j + 1) * x(i, j))) return false;
    return true;
  }

  /// Hilbert function on [lo, hi].
  std::vector<std::size_t> hilbert() const { return dims; }
};

/// M_{≥d}.
inline GradedPiecesModule truncate(const GradedPiecesModule& m, int d) {
  if (d <= m.lo) return m;
  if (d > m.hi()) throw std::out_of_range("truncation above the available pieces");
  GradedPiecesModule out(m.v, d);
  const auto k = static_cast<std::size_t>(d - m.lo);
  out.dims.assign(m.dims.begin() + static_cast<std::ptrdiff_t>(k), m.dims.end());
  for (int i = 0; i < m.v; ++i) out.mult[i].assign(m.mult[i].begin() + static_cast<std::ptrdiff_t>(k), m.mult[i].end());
  return out;
}

/// The residue field K in degree a.
inline GradedPiecesModule residue_field(int v, int a = 0, int hi = 0) {
  GradedPiecesModule m(v, a);
  m.push_piece(1, {});
  for (int j = a + 1; j <= std::max(hi, a); ++j) m.push_piece(0, std::vector<KMatrix>(v, KMatrix(0, m.dims.back())));
  return m;
}

/// Finitely presented module coker(relations → generators) over S.
class FPModuleS {
 public:
  FPModuleS() = default;
  explicit FPModuleS(SMap presentation) : pres_(std::move(presentation)) {}
  /// Free module with the given generator degrees.
  static FPModuleS free(const SymmetricAlgebra& S, std::vector<int> degrees) {
    const SFree F(S, std::move(degrees));
    return FPModuleS(SMap(SFree(S, {}), F));
  }

  const SMap& presentation() const { return pres_; }
  const SymmetricAlgebra& algebra() const { return pres_.algebra(); }
  int v() const { return algebra().v; }
  const SFree& generators() const { return pres_.target(); }

  int min_generator_degree() const {
    const auto& d = generators().degrees;
    if (d.empty()) return 0;
    return *std::min_element(d.begin(), d.end());
  }
  int max_generator_degree() const {
    const auto& d = generators().degrees;
    if (d.empty()) return 0;
    return *std::max_element(d.begin(), d.end());
  }

  /// Pieces on [lo, hi].
  GradedPiecesModule pieces(int lo, int hi) const {
    GradedPiecesModule out(v(), lo);
    std::vector<Quotient> q;
    for (int j = lo; j <= hi; ++j) q.push_back(quotient(j));
    for (int j = lo; j <= hi; ++j) {
      const auto& cur = q[static_cast<std::size_t>(j - lo)];
      if (j == lo) {
        out.push_piece(cur.basis.size(), {});
        continue;
      }
      const auto& prev = q[static_cast<std::size_t>(j - 1 - lo)];
      std::vector<KMatrix> maps;
      for (int i = 0; i < v(); ++i) maps.push_back(multiplication(i, j - 1, prev, cur));
      out.push_piece(cur.basis.size(), maps);
    }
    return out;
  }

 private:
  struct Quotient {
    EchelonSpace image;
    std::vector<std::size_t> basis;  // positions not hit by a pivot
    std::vector<std::size_t> offsets;
  };

  Quotient quotient(int j) const {
    const SFree& F = generators();
    Quotient q{EchelonSpace(F.piece_dim(j)), {}, F.offsets(j)};
    if (pres_.cols() > 0) {
      const KMatrix p = degreewise_piece(pres_, j);
      for (std::size_t c = 0; c < p.cols(); ++c) q.image.insert(p.column(c));
    }
    std::vector<bool> pivot(q.image.dim(), false);
    for (auto c : q.image.pivots()) pivot[c] = true;
    for (std::size_t r = 0; r < pivot.size(); ++r)
      if (!pivot[r]) q.basis.push_back(r);
    return q;
  }

  KMatrix multiplication(int i, int j, const Quotient& src, const Quotient& tgt) const {
    const SFree& F = generators();
    const SymmetricAlgebra& S = algebra();
    KMatrix out(tgt.basis.size(), src.basis.size());
    std::vector<std::size_t> where(tgt.image.dim(), SIZE_MAX);
    for (std::size_t k = 0; k < tgt.basis.size(); ++k) where[tgt.basis[k]] = k;
    for (std::size_t c = 0; c < src.basis.size(); ++c) {
      const std::size_t pos = src.basis[c];
      const auto gen = static_cast<std::size_t>(std::upper_bound(src.offsets.begin(), src.offsets.end(), pos) -
                                                src.offsets.begin() - 1);
      const auto mono = S.basis(j - F.degrees[gen])[pos - src.offsets[gen]];
      std::vector<std::uint32_t> vec(tgt.image.dim(), 0);
      vec[tgt.offsets[gen] + S.index(mono + SymmetricAlgebra::variable(i))] = 1;
      tgt.image.reduce(vec);
      for (std::size_t r = 0; r < vec.size(); ++r)
        if (vec[r] != 0) out(where[r], c) = Scalar::raw(vec[r]);
    }
    return out;
  }

  SMap pres_;
};

/// M ⊗_S N from presentations: coker([A ⊗ 1, 1 ⊗ B]) on F0 ⊗ G0.
inline FPModuleS tensor(const FPModuleS& m, const FPModuleS& n) {
  const SymmetricAlgebra S = m.algebra();
  if (!(S == n.algebra())) throw std::invalid_argument("tensor: modules over different rings");
  const SMap& a = m.presentation();
  const SMap& b = n.presentation();
  const auto& f0 = a.target().degrees;
  const auto& f1 = a.source().degrees;
  const auto& g0 = b.target().degrees;
  const auto& g1 = b.source().degrees;
  std::vector<int> tgt, src;
  for (int x : f0)
    for (int y : g0) tgt.push_back(x + y);
  for (int x : f1)
    for (int y : g0) src.push_back(x + y);
  for (int x : f0)
    for (int y : g1) src.push_back(x + y);
  SMap out(SFree(S, src), SFree(S, tgt));
  const std::size_t ng0 = g0.size(), ng1 = g1.size();
  for (std::size_t c = 0; c < f1.size(); ++c)
    for (std::size_t r = 0; r < f0.size(); ++r)
      if (!a.at(r, c).is_zero())
        for (std::size_t y = 0; y < ng0; ++y) out.at(r * ng0 + y, c * ng0 + y) = a.at(r, c);
  const std::size_t base = f1.size() * ng0;
  for (std::size_t x = 0; x < f0.size(); ++x)
    for (std::size_t c = 0; c < ng1; ++c)
      for (std::size_t r = 0; r < ng0; ++r)
        if (!b.at(r, c).is_zero()) out.at(x * ng0 + r, base + x * ng1 + c) = b.at(r, c);
  out.check_homogeneous();
  return FPModuleS(std::move(out));
}

/// Minimal presentation of M with generators and relations found degree by
/// degree on [M.lo, hi]. Agrees with M everywhere when nothing new is
/// needed above hi; callers compare Hilbert functions to confirm.
inline FPModuleS present(const GradedPiecesModule& M, int hi) {
  if (hi > M.hi()) throw std::out_of_range("present: pieces end at degree " + std::to_string(M.hi()));
  const SymmetricAlgebra S(M.v);
  using Mono = SymmetricAlgebra::Mono;
  std::vector<int> gdeg, rdeg;
  std::vector<std::vector<SymPoly>> rels;  // per relation, one entry per generator
  std::vector<std::map<Mono, Vec>> img;    // generator k times monomial, in the current degree
  for (int j = M.lo; j <= hi; ++j) {
    const std::size_t dj = M.dim(j);
    for (std::size_t k = 0; k < img.size(); ++k) {
      std::map<Mono, Vec> next;
      for (Mono m : S.basis(j - gdeg[k])) {
        int i = 0;
        while (SymmetricAlgebra::exponent(m, i) == 0) ++i;
        next[m] = M.x(i, j - 1) * img[k].at(m - SymmetricAlgebra::variable(i));
      }
      img[k] = std::move(next);
    }
    EchelonSpace span(dj);
    for (const auto& g : img)
      for (const auto& [m, vec] : g) span.insert(vec);
    for (std::size_t r = 0; r < dj; ++r) {
      Vec unit(dj);
      unit[r] = Scalar(1);
      if (!span.insert(unit)) continue;
      gdeg.push_back(j);
      img.push_back({{SymmetricAlgebra::one(), unit}});
      for (auto& rel : rels) rel.push_back(SymPoly(S));
    }
    // F_j coordinates: generator blocks of S_{j - g} in basis order
    std::vector<std::size_t> off{0};
    for (int g : gdeg) off.push_back(off.back() + S.basis(j - g).size());
    KMatrix phi(dj, off.back());
    for (std::size_t k = 0; k < gdeg.size(); ++k) {
      const auto& basis = S.basis(j - gdeg[k]);
      for (std::size_t a = 0; a < basis.size(); ++a) {
        const Vec& col = img[k].at(basis[a]);
        for (std::size_t r = 0; r < dj; ++r) phi(r, off[k] + a) = col[r];
      }
    }
    auto coords = [&](const std::vector<SymPoly>& rel, const SymPoly& mult) {
      Vec out(off.back());
      for (std::size_t k = 0; k < gdeg.size(); ++k) {
        const SymPoly prod = rel[k] * mult;
        for (const auto& [m, c] : prod.terms()) out[off[k] + S.index(m)] += c;
      }
      return out;
    };
    EchelonSpace old(off.back());
    for (std::size_t r = 0; r < rels.size(); ++r)
      for (Mono m : S.basis(j - rdeg[r])) old.insert(coords(rels[r], SymPoly::monomial(S, m)));
    const KMatrix ker = kernel_basis(phi);
    for (std::size_t c = 0; c < ker.cols(); ++c) {
      const Vec vec = ker.column(c);
      if (!old.insert(vec)) continue;
      std::vector<SymPoly> rel;
      for (std::size_t k = 0; k < gdeg.size(); ++k) {
        std::vector<SymPoly::Term> terms;
        const auto& basis = S.basis(j - gdeg[k]);
        for (std::size_t a = 0; a < basis.size(); ++a)
          if (!vec[off[k] + a].is_zero()) terms.emplace_back(basis[a], vec[off[k] + a]);
        rel.push_back(SymPoly::from_terms(S, std::move(terms)));
      }
      rels.push_back(std::move(rel));
      rdeg.push_back(j);
    }
  }
  SMap pres(SFree(S, rdeg), SFree(S, gdeg));
  for (std::size_t c = 0; c < rels.size(); ++c)
    for (std::size_t k = 0; k < gdeg.size(); ++k) pres.at(k, c) = rels[c][k];
  return FPModuleS(std::move(pres));
}

/// Koszul map ∧^k W ⊗ M_e → ∧^{k-1} W ⊗ M_{e+1}, one sparse row per
/// source basis vector (the transpose, which has the same rank).
inline std::vector<detail::SparseRow> koszul_rows(const GradedPiecesModule& m, int k, int e) {
  const int v = m.v;
  const ExteriorAlgebra W(v, 'x');
  const auto& src = W.basis(k);
  const std::size_t ms = m.dim(e), mt = m.dim(e + 1);
  std::vector<detail::SparseRow> out(src.size() * ms);
  if (ms == 0 || mt == 0) return out;
  const std::uint32_t p = PrimeField::prime();
  for (int t = 0; t < v; ++t) {
    const KMatrix mx = m.x(t, e);
    for (std::size_t a = 0; a < src.size(); ++a) {
      auto r = contract_mono(t, src[a]);
      if (!r) continue;
      const std::size_t b = W.index(r->first);
      for (std::size_t q = 0; q < ms; ++q)
        for (std::size_t pp = 0; pp < mt; ++pp)
          if (auto x = mx(pp, q).value())
            out[a * ms + q].push_back({static_cast<std::uint32_t>(b * mt + pp), r->second < 0 ? p - x : x});
    }
  }
  return out;
}

inline KMatrix koszul_map(const GradedPiecesModule& m, int k, int e) {
  const ExteriorAlgebra W(m.v, 'x');
  KMatrix out(W.basis(k - 1).size() * m.dim(e + 1), W.basis(k).size() * m.dim(e));
  const auto rows = koszul_rows(m, k, e);
  for (std::size_t c = 0; c < rows.size(); ++c)
    for (auto [r, x] : rows[c]) out(r, c) += Scalar::raw(x);
  return out;
}

/// Ranks of Koszul maps, memoized by (k, e).
class KoszulRanks {
 public:
  explicit KoszulRanks(const GradedPiecesModule& m) : m_(m) {}

  std::size_t operator()(int k, int e) {
    if (k < 1 || k > m_.v || m_.dim(e) == 0 || m_.dim(e + 1) == 0) return 0;
    auto it = cache_.find({k, e});
    if (it != cache_.end()) return it->second;
    const ExteriorAlgebra W(m_.v, 'x');
    const std::size_t r = detail::sparse_rank(koszul_rows(m_, k, e), W.basis(k - 1).size() * m_.dim(e + 1));
    cache_[{k, e}] = r;
    return r;
  }

  /// dim Tor_i^S(K, M)_j from
  /// ∧^{i+1}W ⊗ M_{j-i-1} → ∧^i W ⊗ M_{j-i} → ∧^{i-1}W ⊗ M_{j-i+1}.
  std::size_t tor(int i, int j) {
    if (i < 0 || i > m_.v) return 0;
    const int d = j - i;
    const std::size_t mid = binom(m_.v, i) * m_.dim(d);
    if (mid == 0) return 0;
    return mid - (*this)(i, d) - (*this)(i + 1, d - 1);
  }

 private:
  static std::size_t binom(int n, int k) {
    std::size_t r = 1;
    for (int t = 1; t <= k; ++t) r = r * static_cast<std::size_t>(n - k + t) / static_cast<std::size_t>(t);
    return r;
  }

  const GradedPiecesModule& m_;
  std::map<std::pair<int, int>, std::size_t> cache_;
};

inline std::size_t koszul_tor(const GradedPiecesModule& m, int i, int j) { return KoszulRanks(m).tor(i, j); }

/// Regularity estimate from the Koszul Betti numbers: scans the diagonals
/// s = j - i upward from `start` and stops after v + 1 consecutive empty
/// diagonals above the last nonzero one. `complete` is false when the
/// available pieces ran out before the stopping rule fired.
struct RegularityScan {
  int r = 0;
  bool complete = false;
  bool any = false;
};

inline RegularityScan regularity_scan(KoszulRanks& ranks, const GradedPiecesModule& m, int start) {
  RegularityScan out;
  out.r = start;
  int empty_run = 0;
  for (int s = start;; ++s) {
    // Tor_i(K, M)_{s+i} involves M_{s-1}, M_s and M_{s+1}
    if (s + 1 > m.hi()) return out;
    bool nonzero = false;
    for (int i = 0; i <= m.v && !nonzero; ++i) nonzero = ranks.tor(i, s + i) != 0;
    if (nonzero) {
      out.r = s;
      out.any = true;
      empty_run = 0;
    } else if (++empty_run >= m.v + 1 && (out.any || s >= start + m.v)) {
      out.complete = true;
      return out;
    }
  }
}

inline RegularityScan regularity_scan(const GradedPiecesModule& m, int start) {
  KoszulRanks ranks(m);
  return regularity_scan(ranks, m, start);
}

/// Total Koszul Betti table {(i, j) → dim Tor_i(K, M)_j} for j ≤ max_j.
inline std::map<std::pair<int, int>, std::size_t> koszul_betti(const GradedPiecesModule& m, int max_j) {
  std::map<std::pair<int, int>, std::size_t> out;
  KoszulRanks ranks(m);
  for (int i = 0; i <= m.v; ++i)
    for (int j = m.lo + i; j <= max_j && j - i + 1 <= m.hi(); ++j)
      if (auto b = ranks.tor(i, j)) out[{i, j}] = b;
  return out;
}

}  // namespace bgg
