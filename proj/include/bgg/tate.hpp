#pragma once

// Tate resolutions over E on a finite window of columns, built from a
// truncated S-module or from a single E-matrix. Columns outside the window
// are constrained by strand bounds: if every generator of T^c lies in
// strands [a, b], then columns l > c lie in strands ≤ b and ≥ a - v + 1,
// and columns l < c lie in strands ≥ a and ≤ b + v - 1 (the second pair
// comes from Hom(T, E), which is again a minimal exact complex).
//
// A generator of internal degree g in T^e lies in strand j = e - (g - v)
// and contributes to h^j(F(e - j)).

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bgg/bgg.hpp"
#include "bgg/complexes.hpp"
#include "bgg/errors.hpp"
#include "bgg/exres.hpp"
#include "bgg/smodules.hpp"

namespace bgg {

struct StrandRange {
  int jmin = INT_MAX / 4;
  int jmax = INT_MIN / 4;
  bool empty() const { return jmin > jmax; }
  bool within(int a, int b) const { return empty() || (jmin >= a && jmax <= b); }
};

/// strand → number of generators.
using Column = std::map<int, std::size_t>;

inline int strand_of(int e, int g, int v) { return e - g + v; }

inline Column column_of(const EFree& t, int e) {
  Column out;
  for (int g : t.degrees) ++out[strand_of(e, g, t.alg.v)];
  return out;
}

struct TateWindow {
  EComplex complex;                 // minimal, exact at interior positions
  std::map<int, Column> extra;      // further columns known by their ranks only
  std::string provenance;
  // columns from .first on (resp. up to .first) lie in the single strand
  // .second; a module truncated at d gives strand 0 from column d on
  std::optional<std::pair<int, int>> pure_right, pure_left;

  int v() const { return complex.alg.v; }
  int lo() const { return complex.lo; }
  int hi() const { return complex.hi(); }

  bool known(int e) const { return complex.in_window(e) || extra.count(e); }

  Column column(int e) const {
    if (complex.in_window(e)) return column_of(complex.term(e), e);
    if (auto it = extra.find(e); it != extra.end()) return it->second;
    throw std::out_of_range("column " + std::to_string(e) + " is not known");
  }

  std::vector<int> known_columns() const {
    std::vector<int> out;
    for (int e = lo(); e <= hi(); ++e) out.push_back(e);
    for (const auto& [e, c] : extra)
      if (!complex.in_window(e)) out.push_back(e);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Strands that a column may occupy; exact for known columns.
  StrandRange bounds(int l) const {
    StrandRange r;
    if (known(l)) {
      for (const auto& [j, n] : column(l))
        if (n) r.jmin = std::min(r.jmin, j), r.jmax = std::max(r.jmax, j);
      return r;
    }
    if (pure_right && l >= pure_right->first) return StrandRange{pure_right->second, pure_right->second};
    if (pure_left && l <= pure_left->first) return StrandRange{pure_left->second, pure_left->second};
    const int v = this->v();
    int jmax = INT_MAX / 4, jmin = INT_MIN / 4;
    for (int c : known_columns()) {
      const StrandRange s = bounds(c);
      if (s.empty()) return StrandRange{};
      if (c < l) {
        jmax = std::min(jmax, s.jmax);
        jmin = std::max(jmin, s.jmin - v + 1);
      } else {
        jmax = std::min(jmax, s.jmax + v - 1);
        jmin = std::max(jmin, s.jmin);
      }
    }
    r.jmin = jmin;
    r.jmax = jmax;
    return r;
  }

  /// Every unknown column is confined to strands [0, v-1], so the
  /// complex is the Tate resolution of a sheaf on P^{v-1}.
  bool sheaf_certified() const {
    const auto cols = known_columns();
    if (cols.empty()) return true;
    const int n = v() - 1;
    if (!bounds(cols.front() - 1).within(0, n) || !bounds(cols.back() + 1).within(0, n)) return false;
    for (std::size_t k = 1; k < cols.size(); ++k)
      for (int l = cols[k - 1] + 1; l < cols[k]; ++l)
        if (!bounds(l).within(0, n)) return false;
    return true;
  }

  /// h^j(F(ℓ)) if determined by the window or the bounds.
  std::optional<std::size_t> cell(int j, int l) const {
    const int e = j + l;
    if (known(e)) {
      const Column c = column(e);
      auto it = c.find(j);
      return it == c.end() ? 0 : it->second;
    }
    const StrandRange b = bounds(e);
    if (b.empty() || j < b.jmin || j > b.jmax) return 0;
    return std::nullopt;
  }
};

namespace detail {

inline EComplex restrict(const EComplex& c, int a, int b) {
  EComplex out(c.alg, a);
  for (int i = a; i <= b; ++i) out.terms.push_back(c.term(i));
  for (int i = a; i < b; ++i) out.diffs.push_back(c.diff(i));
  return out;
}

/// First interior position and degree with homology, if any.
inline std::optional<std::pair<int, int>> homology_at(const EComplex& c, int i) {
  if (i <= c.lo || i >= c.hi()) return std::nullopt;
  const auto [a, b] = c.term(i).degree_span();
  for (int j = a; j <= b; ++j)
    if (homology_dim(c, i, j)) return std::pair{i, j};
  return std::nullopt;
}

inline void extend_down(EComplex& c, int lo) {
  while (c.lo > lo) c.push_front(syzygy_step(c.diff(c.lo)));
}

inline void extend_up(EComplex& c, int hi) {
  while (c.hi() < hi) c.push_back(cosyzygy_step(c.diff(c.hi() - 1)));
}

}  // namespace detail

/// T(F) on columns [lo, hi] for the sheaf of M, from R(M_{≥d}) and
/// syzygies below it. Needs pieces of M up to max(hi, d + 1); the
/// regularity check at d needs them up to d + v + 2 unless assume_regular.
inline TateWindow tate_from_module(const GradedPiecesModule& M, int d, int lo, int hi, bool assume_regular = false) {
  if (lo > hi) throw PreconditionError("empty window");
  const int v = M.v;
  const int top = std::max(hi, d + 1);
  if (M.hi() < top) throw PreconditionError("module pieces end at degree " + std::to_string(M.hi()));
  if (!assume_regular) {
    const int depth = std::min(v + 1, M.hi() - d - 1);
    if (depth < v + 1) throw UncertifiedError("not enough pieces to check regularity at the truncation degree");
    if (!acyclicity_check(M, d, depth))
      throw PreconditionError("R(M_{>=" + std::to_string(d) + "}) is not exact: truncation is below the regularity");
  }
  EComplex c = R_module(truncate(M, d), d, top);
  c.zero_below = false;
  const int bottom = std::min(lo, d - 1);
  detail::extend_down(c, bottom);
  for (int i : {d - 1, d})
    if (auto bad = detail::homology_at(c, i))
      throw ConstructionError("homology at the seam in column " + std::to_string(bad->first));
  c = minimize(std::move(c));
  TateWindow t{detail::restrict(c, lo, hi), {}, "module truncated at " + std::to_string(d), {}, {}};
  for (int e = std::max(hi + 1, d + 1); e <= M.hi(); ++e) t.extra[e] = Column{{0, M.dim(e)}};
  t.pure_right = std::pair{d, 0};
  return t;
}

inline TateWindow tate_from_module(const FPModuleS& M, int d, int lo, int hi, bool assume_regular = false) {
  const int top = std::max({hi, d + 1, d + M.v() + 2});
  return tate_from_module(M.pieces(std::min(M.min_generator_degree(), d), top), d, lo, hi, assume_regular);
}

/// T(φ) on columns [lo, hi] with φ : T^at → T^{at+1}.
inline TateWindow tate_from_matrix(const EMap& phi, int lo, int hi, int at = -1) {
  if (lo > at || hi < at + 1) throw PreconditionError("the window must contain the columns of the matrix");
  phi.check_homogeneous();
  EComplex c = EComplex::from_maps(phi.algebra(), at, {phi});
  detail::extend_up(c, hi);
  detail::extend_down(c, lo);
  c = minimize(std::move(c));
  return TateWindow{std::move(c), {}, "matrix", {}, {}};
}

/// T(F(a)) from T(F): columns move down by a, generator degrees by a.
inline TateWindow tate_twist(const TateWindow& t, int a) {
  TateWindow out{shift_cohomological(twist_internal(t.complex, a), a), {}, t.provenance, {}, {}};
  for (const auto& [e, c] : t.extra) out.extra[e - a] = c;
  if (t.pure_right) out.pure_right = std::pair{t.pure_right->first - a, t.pure_right->second};
  if (t.pure_left) out.pure_left = std::pair{t.pure_left->first - a, t.pure_left->second};
  return out;
}

/// Hom_K(T, ∧^v W) regraded as the Tate resolution of the Serre dual:
/// h^j of the result at twist ℓ equals h^{n-j}(F(-ℓ)), n = v - 1.
inline TateWindow tate_dual(const TateWindow& t) {
  const int n = t.v() - 1;
  TateWindow out{shift_cohomological(dualize_K(t.complex), -n), {}, "dual of " + t.provenance, {}, {}};
  out.complex.zero_below = out.complex.zero_above = false;
  for (const auto& [e, c] : t.extra) {
    Column d;
    for (const auto& [j, k] : c) d[n - j] = k;
    out.extra[n - e] = d;
  }
  if (t.pure_right) out.pure_left = std::pair{n - t.pure_right->first, n - t.pure_right->second};
  if (t.pure_left) out.pure_right = std::pair{n - t.pure_left->first, n - t.pure_left->second};
  return out;
}

/// entry (j, e) = number of generators of T^e in strand j, over the known columns.
struct BettiTable {
  std::map<std::pair<int, int>, std::size_t> entries;
  std::vector<int> columns;

  std::size_t at(int j, int e) const {
    auto it = entries.find({j, e});
    return it == entries.end() ? 0 : it->second;
  }
  /// Nonzero entries of strand j in increasing e.
  std::vector<std::size_t> strand(int j) const {
    std::vector<std::size_t> out;
    for (int e : columns)
      if (auto n = at(j, e)) out.push_back(n);
    return out;
  }
  std::vector<int> strands() const {
    std::vector<int> out;
    for (const auto& [k, n] : entries)
      if (n && std::find(out.begin(), out.end(), k.first) == out.end()) out.push_back(k.first);
    std::sort(out.begin(), out.end());
    return out;
  }
  /// Rows from the highest strand down, columns e increasing to the right,
  /// '.' for zero.
  std::string render() const {
    const auto js = strands();
    std::size_t w = 2;
    for (const auto& [k, n] : entries) w = std::max(w, std::to_string(n).size() + 1);
    for (int e : columns) w = std::max(w, std::to_string(e).size() + 1);
    std::ostringstream os;
    auto cell = [&](const std::string& s) { os << std::string(w - std::min(w, s.size()), ' ') << s; };
    os << "     ";
    for (int e : columns) cell(std::to_string(e));
    os << '\n';
    for (auto it = js.rbegin(); it != js.rend(); ++it) {
      std::string label = std::to_string(*it) + ":";
      os << std::string(5 - std::min<std::size_t>(5, label.size()), ' ') << label;
      for (int e : columns) {
        const auto n = at(*it, e);
        cell(n ? std::to_string(n) : ".");
      }
      os << '\n';
    }
    return os.str();
  }
};

inline BettiTable betti_table(const TateWindow& t) {
  BettiTable b;
  b.columns = t.known_columns();
  for (int e : b.columns)
    for (const auto& [j, n] : t.column(e))
      if (n) b.entries[{j, e}] = n;
  return b;
}

/// h^j(F(ℓ)) over a rectangle; cells the window does not determine stay empty.
struct CohomologyTable {
  int jlo = 0, jhi = 0, llo = 0, lhi = 0;
  std::vector<std::vector<std::optional<std::size_t>>> h;  // h[j - jlo][ℓ - llo]

  std::optional<std::size_t> at(int j, int l) const {
    return h[static_cast<std::size_t>(j - jlo)][static_cast<std::size_t>(l - llo)];
  }
  std::size_t unknown() const {
    std::size_t n = 0;
    for (const auto& row : h)
      for (const auto& c : row) n += !c;
    return n;
  }
  /// Rows from j = jhi down, twists ℓ increasing to the right, '?' unknown.
  std::string render() const {
    std::size_t w = 3;
    for (const auto& row : h)
      for (const auto& c : row)
        if (c) w = std::max(w, std::to_string(*c).size() + 1);
    for (int l = llo; l <= lhi; ++l) w = std::max(w, std::to_string(l).size() + 1);
    std::ostringstream os;
    auto cell = [&](const std::string& s) { os << std::string(w - std::min(w, s.size()), ' ') << s; };
    os << "  h^j ";
    for (int l = llo; l <= lhi; ++l) cell(std::to_string(l));
    os << '\n';
    for (int j = jhi; j >= jlo; --j) {
      std::string label = std::to_string(j) + ":";
      os << std::string(6 - std::min<std::size_t>(6, label.size()), ' ') << label;
      for (int l = llo; l <= lhi; ++l) {
        const auto c = at(j, l);
        cell(c ? (*c ? std::to_string(*c) : ".") : "?");
      }
      os << '\n';
    }
    return os.str();
  }
};

inline CohomologyTable cohomology_table(const TateWindow& t, int jlo, int jhi, int llo, int lhi) {
  CohomologyTable c{jlo, jhi, llo, lhi, {}};
  for (int j = jlo; j <= jhi; ++j) {
    c.h.emplace_back();
    for (int l = llo; l <= lhi; ++l) c.h.back().push_back(t.cell(j, l));
  }
  return c;
}

/// G = L(ker(T^0 → T^1)); its homology in degree i is ⊕_{j ≥ -i} H^i(F(j)).
struct LinearMonad {
  SComplex complex;
  EModule kernel;
};

inline LinearMonad linear_monad(const TateWindow& t) {
  if (t.lo() > 0 || t.hi() < 1) throw PreconditionError("the linear monad needs columns 0 and 1 in the window");
  EModule P = kernel_module(t.complex.diff(0));
  return {L_module(P), std::move(P)};
}

/// Compares the homology of G with the cohomology table: dim H^i(G)_j
/// should be h^i(F(j)) for j ≥ -i and 0 below.
struct MonadCheck {
  bool ok = true;
  std::size_t compared = 0;
  std::size_t unknown = 0;
  std::vector<std::string> mismatches;
};

inline MonadCheck check_linear_monad(const TateWindow& t, const SComplex& g, int jlo, int jhi) {
  MonadCheck out;
  for (int i = g.lo; i <= g.hi(); ++i)
    for (int j = jlo; j <= jhi; ++j) {
      std::optional<std::size_t> want = j >= -i ? t.cell(i, j) : std::optional<std::size_t>(0);
      if (!want) {
        ++out.unknown;
        continue;
      }
      const std::size_t got = homology_dim(g, i, j);
      ++out.compared;
      if (got != *want) {
        out.ok = false;
        out.mismatches.push_back("H^" + std::to_string(i) + " in degree " + std::to_string(j) + ": " +
                                 std::to_string(got) + " vs " + std::to_string(*want));
      }
    }
  return out;
}

/// dim H^q_m(M_{≥d})_k for the cells reached by the syzygies of
/// P = ker(R(M_{≥d})^d → R(M_{≥d})^{d+1}) down to column lo. A generator
/// of degree g in column e < d of that resolution counts towards
/// q = e - g + v + 1, k = g - v.
inline std::map<std::pair<int, int>, std::size_t> local_cohomology_table(const GradedPiecesModule& M, int d, int lo) {
  const int v = M.v;
  if (M.hi() < d + v + 2) throw PreconditionError("not enough pieces for the linearity check");
  if (!acyclicity_check(M, d, v + 1)) throw PreconditionError("M_{>=d} does not have a linear resolution");
  EComplex c = R_module(truncate(M, d), d, d + 1);
  detail::extend_down(c, std::min(lo, d - 1));
  const EComplex lin = linear_part(detail::restrict(c, c.lo, d - 1));
  std::map<std::pair<int, int>, std::size_t> out;
  for (int e = c.lo; e < d; ++e)
    for (int g : lin.term(e).degrees) ++out[{e - g + v + 1, g - v}];
  return out;
}

/// Regularity from the Koszul scan, certified when the scan completed,
/// R(M_{≥r}) is exact at r+1 .. r+v+1 and the Tate windows from
/// truncations r and r+1 agree where both are known.
struct Regularity {
  int r = 0;
  bool certified = false;
  std::string note;
};

inline bool tate_cross_check(const GradedPiecesModule& M, int d, int lo, int hi) {
  const auto a = tate_from_module(M, d, lo, hi, true);
  const auto b = tate_from_module(M, d + 1, lo, hi, true);
  for (int e = lo; e <= hi; ++e)
    if (a.column(e) != b.column(e)) return false;
  return true;
}

inline Regularity regularity(const FPModuleS& M, int hard_limit) {
  if (hard_limit < M.max_generator_degree()) throw PreconditionError("hard limit below the generator degrees");
  const int v = M.v();
  const int start = M.min_generator_degree();
  const auto pieces = M.pieces(start, hard_limit + v + 3);
  Regularity out;
  KoszulRanks ranks(pieces);
  const RegularityScan scan = regularity_scan(ranks, pieces, start);
  out.r = scan.any ? scan.r : start;
  if (!scan.complete) {
    out.note = "scan ran out of pieces";
    return out;
  }
  if (out.r + v + 3 > pieces.hi()) {
    out.note = "not enough pieces for the window check";
    return out;
  }
  if (!acyclicity_check(ranks, v, out.r, v + 1)) {
    out.note = "R(M_{>=r}) is not exact in the checked window";
    return out;
  }
  if (!tate_cross_check(pieces, out.r, out.r - 2, out.r + 1)) {
    out.note = "Tate windows from truncations r and r+1 disagree";
    return out;
  }
  out.certified = true;
  return out;
}

}  // namespace bgg
