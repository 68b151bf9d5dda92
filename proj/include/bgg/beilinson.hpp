#pragma once

// Beilinson monads. Ω(T) replaces each summand ω_E(i) of a Tate complex by
// Ω^i(i); an entry η ∈ ∧^{i-j}V acts on Γ_*(Ω^i(i)) ⊂ ∧^i W ⊗ S by
// contraction, rightmost factor first, which turns products in E into
// composites. The second monad resolves each Ω^i(i+1) of Ω(T(F(-1)))(1)
// by a truncated Koszul complex and cancels the unit entries of the total
// complex.
//
// Sheaf homology is checked on graded pieces. In internal degree m ≥ 1
// every Ω^i(i+m) is acyclic, so H^e of the complex of sections in degree m
// is h^e(F(m)); for the line bundle monad this holds for m ≥ 0.

#include <cstddef>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bgg/complexes.hpp"
#include "bgg/errors.hpp"
#include "bgg/examples.hpp"
#include "bgg/field.hpp"
#include "bgg/rings.hpp"
#include "bgg/smodules.hpp"
#include "bgg/tate.hpp"

namespace bgg {

/// Ω(T) on a range of columns. A generator of degree g stands for
/// Ω^{v-g}(v-g); only 1 <= g <= v survive. Maps are the E-entries of T.
struct OmegaComplex {
  EComplex complex;

  int v() const { return complex.alg.v; }
  static int index(int v, int g) { return v - g; }
  int index_of(int e, std::size_t k) const { return index(v(), complex.term(e).degrees[k]); }

  /// {i: multiplicity of Ω^i(i)} in cohomological degree e.
  std::map<int, std::size_t> summands(int e) const {
    std::map<int, std::size_t> out;
    if (!complex.in_window(e)) return out;
    for (int g : complex.term(e).degrees) ++out[index(v(), g)];
    return out;
  }

  /// d² = 0 with products taken in ∧V.
  bool is_complex() const {
    for (int e = complex.lo; e + 1 < complex.hi(); ++e)
      if (!compose(complex.diff(e + 1), complex.diff(e)).is_zero()) return false;
    return true;
  }

  std::string render() const {
    std::ostringstream os;
    for (int e = complex.lo; e <= complex.hi(); ++e) {
      os << e << ':';
      const auto s = summands(e);
      if (s.empty()) os << " 0";
      for (const auto& [i, n] : s) os << " Ω^" << i << '(' << i << ")^" << n;
      os << '\n';
    }
    return os.str();
  }
};

/// Ω applied to the columns [lo, hi] of a Tate window.
inline OmegaComplex omega_functor(const TateWindow& t, int lo, int hi) {
  if (lo > hi) throw PreconditionError("omega: empty range of columns");
  if (lo < t.lo() || hi > t.hi())
    throw UncertifiedError("omega: columns [" + std::to_string(lo) + ", " + std::to_string(hi) +
                           "] are not all inside the computed window [" + std::to_string(t.lo()) + ", " +
                           std::to_string(t.hi()) + "]");
  const int v = t.v();
  const ExteriorAlgebra& alg = t.complex.alg;
  std::vector<std::vector<std::size_t>> keep;
  EComplex c(alg, lo);
  for (int e = lo; e <= hi; ++e) {
    std::vector<std::size_t> kept;
    std::vector<int> degs;
    const auto& d = t.complex.term(e).degrees;
    for (std::size_t k = 0; k < d.size(); ++k)
      if (d[k] >= 1 && d[k] <= v) kept.push_back(k), degs.push_back(d[k]);
    keep.push_back(kept);
    c.terms.emplace_back(alg, degs);
  }
  for (int e = lo; e < hi; ++e) {
    const auto& src = keep[static_cast<std::size_t>(e - lo)];
    const auto& tgt = keep[static_cast<std::size_t>(e + 1 - lo)];
    EMap m(c.term(e), c.term(e + 1));
    for (std::size_t r = 0; r < tgt.size(); ++r)
      for (std::size_t k = 0; k < src.size(); ++k) m.at(r, k) = t.complex.diff(e).at(tgt[r], src[k]);
    c.diffs.push_back(std::move(m));
  }
  c.zero_below = c.zero_above = true;
  return OmegaComplex{std::move(c)};
}

/// Ω on [-n, n], the only columns that can carry summands Ω^i(i), 0 <= i <= n.
inline OmegaComplex omega_functor(const TateWindow& t) {
  const int n = t.v() - 1;
  return omega_functor(t, -n, n);
}

/// Summands of degree e predicted by the cohomology table:
/// Ω^{j-e}(j-e) with multiplicity h^j(F(e-j)).
inline std::map<int, std::size_t> predicted_summands(const TateWindow& t, int e) {
  const int n = t.v() - 1;
  std::map<int, std::size_t> out;
  for (int j = 0; j <= n; ++j) {
    const int i = j - e;
    if (i < 0 || i > n) continue;
    const auto h = t.cell(j, e - j);
    if (!h) throw UncertifiedError("h^" + std::to_string(j) + "(F(" + std::to_string(e - j) + ")) is not determined");
    if (*h) out[i] = *h;
  }
  return out;
}

namespace detail {

/// Coordinates on ∧^i W ⊗ S_m: (∧^i W index) * dim S_m + (S_m index).
inline KMatrix koszul_piece(int v, int i, int m) {
  const SymmetricAlgebra S(v);
  const ExteriorAlgebra W(v, 'x');
  const auto& src = W.basis(i);
  const auto& mons = S.basis(m);
  const std::size_t ns = mons.size(), nt = S.basis(m + 1).size();
  KMatrix out(W.basis(i - 1).size() * nt, src.size() * ns);
  for (std::size_t a = 0; a < src.size(); ++a)
    for (int t = 0; t < v; ++t)
      if (auto r = contract_mono(t, src[a]))
        for (std::size_t q = 0; q < ns; ++q)
          out(W.index(r->first) * nt + S.index(mons[q] + SymmetricAlgebra::variable(t)), a * ns + q) +=
              Scalar(r->second);
  return out;
}

/// η ⌟ - ⊗ id : ∧^i W ⊗ S_m → ∧^{i-r} W ⊗ S_m for η ∈ ∧^r V.
inline KMatrix contraction_piece(const ExtPoly& eta, int i, int m) {
  const int v = eta.algebra().v;
  const int r = eta.is_zero() ? 0 : -*eta.degree();
  const SymmetricAlgebra S(v);
  const ExteriorAlgebra W(v, 'x');
  const std::size_t ns = S.basis(m).size();
  const auto& src = W.basis(i);
  KMatrix out(W.basis(i - r).size() * ns, src.size() * ns);
  if (eta.is_zero()) return out;
  for (std::size_t a = 0; a < src.size(); ++a) {
    const ExtPoly img = contract(ExtPoly::monomial(W, src[a]), eta);
    for (const auto& [mono, coef] : img.terms())
      for (std::size_t q = 0; q < ns; ++q) out(W.index(mono) * ns + q, a * ns + q) += coef;
  }
  return out;
}

}  // namespace detail

/// Γ_*(Ω(T)) degree by degree: Γ(Ω^i(i+m)) is the kernel of the Koszul map
/// ∧^i W ⊗ S_m → ∧^{i-1} W ⊗ S_{m+1}, and the maps are contractions.
class ExpandedOmega {
 public:
  explicit ExpandedOmega(OmegaComplex om) : om_(std::move(om)) {}

  const OmegaComplex& omega() const { return om_; }

  /// Basis of Γ(Ω^i(i+m)) as columns in ∧^i W ⊗ S_m coordinates.
  const KMatrix& sections(int i, int m) {
    auto it = sections_.find({i, m});
    if (it != sections_.end()) return it->second;
    KMatrix b;
    const std::size_t ambient = binom(om_.v(), i) * SymmetricAlgebra(om_.v()).basis(m).size();
    if (m < 0 || ambient == 0) b = KMatrix(ambient, 0);
    else if (i == 0) b = KMatrix::identity(ambient);
    else b = kernel_basis(detail::koszul_piece(om_.v(), i, m));
    return sections_.emplace(std::pair{i, m}, std::move(b)).first->second;
  }

  std::size_t term_dim(int e, int m) {
    std::size_t n = 0;
    if (!om_.complex.in_window(e)) return 0;
    for (std::size_t k = 0; k < om_.complex.term(e).rank(); ++k) n += sections(om_.index_of(e, k), m).cols();
    return n;
  }

  /// d^e in degree m on the chosen bases of the sections, with values in
  /// ambient coordinates of the target.
  KMatrix diff_on_sections(int e, int m) {
    const auto& src = om_.complex.term(e);
    const auto& tgt = om_.complex.term(e + 1);
    const std::size_t ns = SymmetricAlgebra(om_.v()).basis(m).size();
    std::vector<std::size_t> row_off{0}, col_off{0};
    for (std::size_t r = 0; r < tgt.rank(); ++r) row_off.push_back(row_off.back() + binom(om_.v(), om_.index_of(e + 1, r)) * ns);
    for (std::size_t c = 0; c < src.rank(); ++c) col_off.push_back(col_off.back() + sections(om_.index_of(e, c), m).cols());
    KMatrix out(row_off.back(), col_off.back());
    for (std::size_t c = 0; c < src.rank(); ++c) {
      const int i = om_.index_of(e, c);
      const KMatrix& basis = sections(i, m);
      if (basis.cols() == 0) continue;
      for (std::size_t r = 0; r < tgt.rank(); ++r) {
        const ExtPoly& eta = om_.complex.diff(e).at(r, c);
        if (eta.is_zero()) continue;
        const KMatrix block = detail::contraction_piece(eta, i, m) * basis;
        for (std::size_t a = 0; a < block.rows(); ++a)
          for (std::size_t b = 0; b < block.cols(); ++b) out(row_off[r] + a, col_off[c] + b) = block(a, b);
      }
    }
    return out;
  }

  /// dim H^e(Γ_*(Ω(T)))_m.
  std::size_t homology_dim(int e, int m) {
    const std::size_t dim = term_dim(e, m);
    if (dim == 0) return 0;
    const auto& c = om_.complex;
    const std::size_t out = e < c.hi() ? rank(diff_on_sections(e, m)) : 0;
    const std::size_t in = e > c.lo ? rank(diff_on_sections(e - 1, m)) : 0;
    return dim - out - in;
  }

 private:
  static std::size_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::size_t r = 1;
    for (int t = 1; t <= k; ++t) r = r * static_cast<std::size_t>(n - k + t) / static_cast<std::size_t>(t);
    return r;
  }

  OmegaComplex om_;
  std::map<std::pair<int, int>, KMatrix> sections_;
};

inline ExpandedOmega expand_to_modules(const OmegaComplex& om) { return ExpandedOmega(om); }

/// Graded homology of a monad against a module representing F: from the
/// cutoff on, H^0 has the dimensions of M and all other homology vanishes.
struct MonadHomology {
  std::map<std::pair<int, int>, std::size_t> dims;  // (e, m) → dim H^e in degree m
  int mlo = 0, mhi = -1;
  int cutoff = 0;
  bool passed = false;

  std::string render() const {
    std::ostringstream os;
    os << "degree";
    std::map<int, bool> es;
    for (const auto& [em, n] : dims) es[em.first] = true;
    for (const auto& [e, _] : es) os << "  H^" << e;
    os << '\n';
    for (int m = mlo; m <= mhi; ++m) {
      os << m;
      for (const auto& [e, _] : es) {
        auto it = dims.find({e, m});
        os << "  " << (it == dims.end() ? 0 : it->second);
      }
      os << '\n';
    }
    os << "cutoff " << cutoff << (passed ? " (passed)" : " (failed)") << '\n';
    return os.str();
  }
};

namespace detail {

inline MonadHomology homology_report(int elo, int ehi, const GradedPiecesModule& M, int mlo, int mhi,
                                     const std::function<std::size_t(int, int)>& h) {
  if (mhi > M.hi()) throw PreconditionError("monad check: module pieces end below degree " + std::to_string(mhi));
  MonadHomology out;
  out.mlo = mlo;
  out.mhi = mhi;
  for (int m = mlo; m <= mhi; ++m)
    for (int e = elo; e <= ehi; ++e)
      if (auto n = h(e, m)) out.dims[{e, m}] = n;
  auto good = [&](int m) {
    for (int e = elo; e <= ehi; ++e) {
      auto it = out.dims.find({e, m});
      const std::size_t n = it == out.dims.end() ? 0 : it->second;
      if (n != (e == 0 ? M.dim(m) : 0)) return false;
    }
    return true;
  };
  out.cutoff = mhi + 1;
  while (out.cutoff > mlo && good(out.cutoff - 1)) --out.cutoff;
  out.passed = out.cutoff <= mhi;
  return out;
}

}  // namespace detail

inline MonadHomology monad_homology_check(const OmegaComplex& om, const GradedPiecesModule& M, int mlo, int mhi) {
  ExpandedOmega x(om);
  return detail::homology_report(om.complex.lo, om.complex.hi(), M, mlo, mhi,
                                 [&](int e, int m) { return x.homology_dim(e, m); });
}

/// Counts of compared blocks and mismatches, with the first few failures.
struct BlockCheck {
  std::size_t compared = 0;
  std::size_t mismatched = 0;
  std::vector<std::string> failures;

  bool ok() const { return mismatched == 0; }
  void record(bool equal, const std::string& what) {
    ++compared;
    if (equal) return;
    ++mismatched;
    if (failures.size() < 8) failures.push_back(what);
  }
};

/// Linear strand blocks against the multiplication of M, the module
/// structure they define on the other strands, and blocks shared with the
/// window of M(1).
struct MonadMapReport {
  BlockCheck multiplication;  // strand 0 from the truncation degree on: equal to M's x_t
  BlockCheck module_structure;  // x_s x_t = x_t x_s along every strand
  BlockCheck shift;  // Ω(T(F)) and Ω(T(F(1))) agree under i ↦ i + 1
  bool ok() const { return multiplication.ok() && module_structure.ok() && shift.ok(); }
};

/// M(a): the same pieces with degrees lowered by a.
inline GradedPiecesModule shift_pieces(GradedPiecesModule m, int a) {
  m.lo -= a;
  return m;
}

namespace detail {

/// Generators of column e of t lying in strand j.
inline std::vector<std::size_t> strand_generators(const TateWindow& t, int e, int j) {
  std::vector<std::size_t> out;
  const auto& d = t.complex.term(e).degrees;
  for (std::size_t k = 0; k < d.size(); ++k)
    if (strand_of(e, d[k], t.v()) == j) out.push_back(k);
  return out;
}

/// Coefficient matrices A_t of e_t in the linear block from strand j of
/// column e to strand j of column e + 1.
inline std::vector<KMatrix> strand_block(const TateWindow& t, int e, int j) {
  const auto src = strand_generators(t, e, j), tgt = strand_generators(t, e + 1, j);
  const int v = t.v();
  std::vector<KMatrix> out(static_cast<std::size_t>(v), KMatrix(tgt.size(), src.size()));
  for (std::size_t r = 0; r < tgt.size(); ++r)
    for (std::size_t c = 0; c < src.size(); ++c) {
      const ExtPoly& p = t.complex.diff(e).at(tgt[r], src[c]);
      for (int x = 0; x < v; ++x) out[static_cast<std::size_t>(x)](r, c) = p.coefficient(ExteriorAlgebra::Mono{1} << x);
    }
  return out;
}

}  // namespace detail

inline MonadMapReport monad_map_checks(const GradedPiecesModule& M, int d, int lo, int hi) {
  const TateWindow t = tate_from_module(M, d, lo, hi);
  const TateWindow t1 = tate_from_module(shift_pieces(M, 1), d - 1, lo - 1, hi - 1);
  const int v = t.v(), n = v - 1;
  MonadMapReport out;
  for (int e = t.lo(); e < t.hi(); ++e)
    for (int j = 0; j <= n; ++j) {
      const auto a = detail::strand_block(t, e, j);
      if (j == 0 && e >= d && e + 1 <= M.hi())
        for (int x = 0; x < v; ++x)
          out.multiplication.record(a[static_cast<std::size_t>(x)] == M.x(x, e),
                                    "x_" + std::to_string(x) + " at column " + std::to_string(e));
      if (e + 1 < t.hi()) {
        const auto b = detail::strand_block(t, e + 1, j);
        for (int x = 0; x < v; ++x)
          for (int y = x + 1; y < v; ++y) {
            const auto ux = static_cast<std::size_t>(x), uy = static_cast<std::size_t>(y);
            out.module_structure.record(b[ux] * a[uy] == b[uy] * a[ux],
                                        "strand " + std::to_string(j) + " column " + std::to_string(e));
          }
      }
    }
  for (int e = t1.lo(); e < t1.hi(); ++e) {
    if (e + 1 < t.lo() || e + 2 > t.hi()) continue;
    const auto& s1 = t1.complex.term(e).degrees;
    const auto& r1 = t1.complex.term(e + 1).degrees;
    const auto& s = t.complex.term(e + 1).degrees;
    const auto& r = t.complex.term(e + 2).degrees;
    bool same = s1.size() == s.size() && r1.size() == r.size();
    for (std::size_t k = 0; same && k < s.size(); ++k) same = s1[k] == s[k] - 1;
    for (std::size_t k = 0; same && k < r.size(); ++k) same = r1[k] == r[k] - 1;
    if (!same) {
      out.shift.record(false, "generators of columns " + std::to_string(e) + ", " + std::to_string(e + 1) + " differ");
      continue;
    }
    for (std::size_t c = 0; c < s.size(); ++c)
      for (std::size_t rr = 0; rr < r.size(); ++rr) {
        const int i = v - s[c], jj = v - r[rr];
        if (i < 0 || i + 1 > n || jj < 0 || jj + 1 > n) continue;
        out.shift.record(t1.complex.diff(e).at(rr, c) == t.complex.diff(e + 1).at(rr, c),
                         "block (" + std::to_string(rr) + "," + std::to_string(c) + ") of column " + std::to_string(e));
      }
  }
  return out;
}

/// Monad with line bundle terms; a generator of degree q stands for O(-q).
struct LineBundleMonad {
  SComplex complex;

  /// {q: multiplicity of O(-q)} in cohomological degree j.
  std::map<int, std::size_t> terms(int j) const {
    std::map<int, std::size_t> out;
    if (!complex.in_window(j)) return out;
    for (int q : complex.term(j).degrees) ++out[q];
    return out;
  }

  std::string render() const {
    std::ostringstream os;
    for (int j = complex.lo; j <= complex.hi(); ++j) {
      os << j << ':';
      const auto t = terms(j);
      if (t.empty()) os << " 0";
      for (const auto& [q, k] : t) os << " O(" << -q << ")^" << k;
      os << '\n';
    }
    return os.str();
  }
};

/// The double complex C(F): each summand Ω^i(i+1) of Ω(T(F(-1)))(1) is
/// replaced by ∧^{i+1+k} W ⊗ O(-k), 0 <= k <= n - i, in total degree e - k.
/// Vertical maps are Koszul maps; a block η of length r acts at level k by
/// (-1)^{k(r+1)} η ⌟, which makes the two directions anticommute. The
/// result is the minimized total complex.
inline LineBundleMonad beilinson_monad2(const TateWindow& t) {
  const int v = t.v(), n = v - 1;
  const OmegaComplex om = omega_functor(tate_twist(t, -1));
  const SymmetricAlgebra S(v);
  const ExteriorAlgebra W(v, 'x');
  const int tlo = -2 * n, thi = n;
  // offset of node (e, summand, k) inside its total degree
  std::map<std::tuple<int, std::size_t, int>, std::size_t> offset;
  std::vector<std::vector<int>> degrees(static_cast<std::size_t>(thi - tlo + 1));
  for (int e = -n; e <= n; ++e)
    for (std::size_t s = 0; s < om.complex.term(e).rank(); ++s) {
      const int i = om.index_of(e, s);
      for (int k = 0; k <= n - i; ++k) {
        auto& degs = degrees[static_cast<std::size_t>(e - k - tlo)];
        offset[{e, s, k}] = degs.size();
        degs.insert(degs.end(), W.basis(i + 1 + k).size(), k);
      }
    }
  std::vector<SMap> diffs;
  for (int d = tlo; d < thi; ++d)
    diffs.emplace_back(SFree(S, degrees[static_cast<std::size_t>(d - tlo)]),
                       SFree(S, degrees[static_cast<std::size_t>(d + 1 - tlo)]));
  auto add = [&](int from_total, std::size_t row, std::size_t col, const SymPoly& p) {
    SMap& m = diffs[static_cast<std::size_t>(from_total - tlo)];
    m.at(row, col) = m.at(row, col) + p;
  };
  for (int e = -n; e <= n; ++e)
    for (std::size_t s = 0; s < om.complex.term(e).rank(); ++s) {
      const int i = om.index_of(e, s);
      // vertical: ∧^{i+1+k} W ⊗ O(-k) → ∧^{i+k} W ⊗ O(-k+1)
      for (int k = 1; k <= n - i; ++k) {
        const auto& src = W.basis(i + 1 + k);
        for (std::size_t a = 0; a < src.size(); ++a)
          for (int x = 0; x < v; ++x)
            if (auto r = contract_mono(x, src[a]))
              add(e - k, offset.at({e, s, k - 1}) + W.index(r->first), offset.at({e, s, k}) + a,
                  sym_var(S, x) * Scalar(r->second));
      }
      if (e == n) continue;
      // horizontal: contraction by the blocks of d^e
      for (std::size_t s2 = 0; s2 < om.complex.term(e + 1).rank(); ++s2) {
        const ExtPoly& eta = om.complex.diff(e).at(s2, s);
        if (eta.is_zero()) continue;
        const int r = i - om.index_of(e + 1, s2);
        for (int k = 0; k <= n - i; ++k) {
          const Scalar sign((k * (r + 1)) % 2 ? -1 : 1);
          const auto& src = W.basis(i + 1 + k);
          for (std::size_t a = 0; a < src.size(); ++a) {
            const ExtPoly img = contract(ExtPoly::monomial(W, src[a]), eta);
            for (const auto& [mono, coef] : img.terms())
              add(e - k, offset.at({e + 1, s2, k}) + W.index(mono), offset.at({e, s, k}) + a,
                  SymPoly(S, sign * coef));
          }
        }
      }
    }
  SComplex c = SComplex::from_maps(S, tlo, std::move(diffs));
  for (int d = tlo; d + 1 < thi; ++d)
    if (!compose(c.diff(d + 1), c.diff(d)).is_zero())
      throw ConstructionError("monad double complex: d^2 != 0 at degree " + std::to_string(d));
  c = minimize(std::move(c));
  c.zero_below = c.zero_above = true;
  return LineBundleMonad{std::move(c)};
}

inline MonadHomology monad_homology_check(const LineBundleMonad& b, const GradedPiecesModule& M, int mlo, int mhi) {
  return detail::homology_report(b.complex.lo, b.complex.hi(), M, mlo, mhi,
                                 [&](int e, int m) { return homology_dim(b.complex, e, m); });
}

/// {j: {q: h^{j+q}(F ⊗ Ω^q(q))}} computed from the Tate windows of the
/// modules M ⊗ Ω^q(q), the multiplicities of O(-q) in a minimal monad.
inline std::map<int, std::map<int, std::size_t>> line_bundle_terms_from_cohomology(const FPModuleS& M,
                                                                                    int hard_limit) {
  const int v = M.v(), n = v - 1;
  std::map<int, std::map<int, std::size_t>> out;
  for (int q = 0; q <= n; ++q) {
    const FPModuleS N = tensor(M, examples::omega_twisted(v, q));
    // raise the limit gradually; pieces grow quickly with the degree
    Regularity reg;
    for (int limit = N.max_generator_degree() + 1;; limit += 2) {
      reg = regularity(N, std::min(limit, hard_limit));
      if (reg.certified || limit >= hard_limit) break;
    }
    if (!reg.certified) throw UncertifiedError("regularity of M ⊗ Ω^" + std::to_string(q) + ": " + reg.note);
    const int d = std::max(reg.r, N.min_generator_degree());
    const TateWindow w = tate_from_module(N, d, std::min(0, d - 1), std::max(n, d + 1));
    for (int c = 0; c <= n; ++c) {
      const auto h = w.cell(c, 0);
      if (!h) throw UncertifiedError("h^" + std::to_string(c) + "(F ⊗ Ω^" + std::to_string(q) + ") is not determined");
      if (*h) out[c - q][q] = *h;
    }
  }
  return out;
}

}  // namespace bgg
