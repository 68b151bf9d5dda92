#pragma once

// Graded free modules, degree-0 maps between them and cohomologically
// indexed complexes over E or S.
//
// Conventions used throughout the library:
//  * A free module lists the internal degree of each generator.
//  * Modules are right modules: an element is Σ gen_r · a_r. A map stores
//    the image of source generator c in column c, so composition is the
//    ordinary matrix product and entry (r, c) has degree deg(c) - deg(r).
//  * Over E a generator of degree g spans the degrees g - v .. g.

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bgg/field.hpp"
#include "bgg/rings.hpp"

namespace bgg {

template <class Alg>
struct GradedFree {
  Alg alg;
  std::vector<int> degrees;

  GradedFree() = default;
  GradedFree(Alg a, std::vector<int> degs) : alg(a), degrees(std::move(degs)) {}

  std::size_t rank() const { return degrees.size(); }

  /// Number of basis monomials of the ring in degree d.
  std::size_t ring_piece_dim(int d) const { return alg.basis(d).size(); }

  /// Offsets of each generator's block inside the degree-j piece.
  std::vector<std::size_t> offsets(int j) const {
    std::vector<std::size_t> off(degrees.size() + 1, 0);
    for (std::size_t r = 0; r < degrees.size(); ++r) off[r + 1] = off[r] + ring_piece_dim(j - degrees[r]);
    return off;
  }
  std::size_t piece_dim(int j) const { return offsets(j).back(); }

  /// Range of internal degrees where some piece can be nonzero.
  std::pair<int, int> degree_span() const {
    if (degrees.empty()) return {0, -1};
    const auto [mn, mx] = std::minmax_element(degrees.begin(), degrees.end());
    if constexpr (Alg::kind == RingKind::Exterior) return {*mn - alg.v, *mx};
    else return {*mn, *mx + 64};  // S-modules are infinite; callers pick their own bound
  }

  /// Direct sum, generators of `other` appended.
  GradedFree operator+(const GradedFree& other) const {
    GradedFree out = *this;
    out.degrees.insert(out.degrees.end(), other.degrees.begin(), other.degrees.end());
    return out;
  }
  friend bool operator==(const GradedFree& a, const GradedFree& b) { return a.alg == b.alg && a.degrees == b.degrees; }

  /// Multiset {degree: count}.
  std::map<int, int> degree_counts() const {
    std::map<int, int> out;
    for (int d : degrees) ++out[d];
    return out;
  }
};

template <class Alg>
class GradedMap {
 public:
  using P = Poly<Alg>;

  GradedMap() = default;
  GradedMap(GradedFree<Alg> source, GradedFree<Alg> target)
      : source_(std::move(source)), target_(std::move(target)),
        entries_(source_.rank() * target_.rank(), P(source_.alg)) {
    if (!(source_.alg == target_.alg)) throw std::invalid_argument("map between modules over different rings");
  }
  GradedMap(GradedFree<Alg> source, GradedFree<Alg> target, std::vector<P> entries)
      : GradedMap(std::move(source), std::move(target)) {
    if (entries.size() != entries_.size()) throw std::invalid_argument("map: wrong number of entries");
    entries_ = std::move(entries);
    check_homogeneous();
  }

  static GradedMap identity(const GradedFree<Alg>& f) {
    GradedMap m(f, f);
    for (std::size_t i = 0; i < f.rank(); ++i) m.at(i, i) = P(f.alg, Scalar(1));
    return m;
  }

  const GradedFree<Alg>& source() const { return source_; }
  const GradedFree<Alg>& target() const { return target_; }
  const Alg& algebra() const { return source_.alg; }
  std::size_t rows() const { return target_.rank(); }
  std::size_t cols() const { return source_.rank(); }

  const P& at(std::size_t r, std::size_t c) const { return entries_[r * cols() + c]; }
  P& at(std::size_t r, std::size_t c) { return entries_[r * cols() + c]; }

  /// Degree an entry must have to keep the map homogeneous of degree 0.
  int entry_degree(std::size_t r, std::size_t c) const { return source_.degrees[c] - target_.degrees[r]; }

  void check_homogeneous() const {
    for (std::size_t r = 0; r < rows(); ++r)
      for (std::size_t c = 0; c < cols(); ++c)
        if (!at(r, c).is_homogeneous_of(entry_degree(r, c)))
          throw std::invalid_argument("entry (" + std::to_string(r) + "," + std::to_string(c) + ") = " +
                                      at(r, c).render() + " is not homogeneous of degree " +
                                      std::to_string(entry_degree(r, c)));
  }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const P& p) { return p.is_zero(); });
  }

  /// True when no entry is a nonzero scalar.
  bool is_minimal() const {
    return std::none_of(entries_.begin(), entries_.end(), [](const P& p) { return !p.constant().is_zero(); });
  }

  friend bool operator==(const GradedMap& a, const GradedMap& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.entries_ == b.entries_;
  }

  std::string render() const {
    std::ostringstream os;
    for (std::size_t r = 0; r < rows(); ++r) {
      os << '[';
      for (std::size_t c = 0; c < cols(); ++c) os << (c ? ", " : "") << at(r, c).render();
      os << "]\n";
    }
    return os.str();
  }

 private:
  GradedFree<Alg> source_;
  GradedFree<Alg> target_;
  std::vector<P> entries_;
};

using EFree = GradedFree<ExteriorAlgebra>;
using SFree = GradedFree<SymmetricAlgebra>;
using EMap = GradedMap<ExteriorAlgebra>;
using SMap = GradedMap<SymmetricAlgebra>;

/// f ∘ g.
template <class Alg>
GradedMap<Alg> compose(const GradedMap<Alg>& f, const GradedMap<Alg>& g) {
  if (!(g.target() == f.source())) throw std::invalid_argument("compose: target of g differs from source of f");
  GradedMap<Alg> out(g.source(), f.target());
  for (std::size_t r = 0; r < f.rows(); ++r)
    for (std::size_t c = 0; c < g.cols(); ++c) {
      Poly<Alg> acc(f.algebra());
      for (std::size_t k = 0; k < f.cols(); ++k) {
        if (f.at(r, k).is_zero() || g.at(k, c).is_zero()) continue;
        acc += f.at(r, k) * g.at(k, c);
      }
      out.at(r, c) = std::move(acc);
    }
  return out;
}

/// Coordinates of the element gen_r · m of a free module inside its piece.
template <class Alg>
std::size_t piece_position(const GradedFree<Alg>& f, const std::vector<std::size_t>& offsets, std::size_t r,
                           typename Alg::Mono m) {
  return offsets[r] + f.alg.index(m);
}

/// The K-linear map source_j → target_j in the monomial bases
/// (generator-major, ring basis order within each generator).
template <class Alg>
KMatrix degreewise_piece(const GradedMap<Alg>& f, int j) {
  const auto src_off = f.source().offsets(j);
  const auto tgt_off = f.target().offsets(j);
  KMatrix out(tgt_off.back(), src_off.back());
  const Alg& alg = f.algebra();
  for (std::size_t c = 0; c < f.cols(); ++c) {
    const auto& monos = alg.basis(j - f.source().degrees[c]);
    for (std::size_t k = 0; k < monos.size(); ++k) {
      const std::size_t col = src_off[c] + k;
      for (std::size_t r = 0; r < f.rows(); ++r) {
        for (const auto& [em, ec] : f.at(r, c).terms()) {
          auto prod = Alg::mul(em, monos[k]);
          if (!prod) continue;
          const std::size_t row = tgt_off[r] + alg.index(prod->first);
          out(row, col) += prod->second < 0 ? -ec : ec;
        }
      }
    }
  }
  return out;
}

/// Element of a free module given by piece coordinates, as the column of
/// polynomials (one per generator).
template <class Alg>
std::vector<Poly<Alg>> element_from_piece(const GradedFree<Alg>& f, int j, const Vec& coords) {
  const auto off = f.offsets(j);
  std::vector<Poly<Alg>> out;
  out.reserve(f.rank());
  for (std::size_t r = 0; r < f.rank(); ++r) {
    const auto& monos = f.alg.basis(j - f.degrees[r]);
    std::vector<typename Poly<Alg>::Term> terms;
    for (std::size_t k = 0; k < monos.size(); ++k)
      if (!coords[off[r] + k].is_zero()) terms.emplace_back(monos[k], coords[off[r] + k]);
    out.push_back(Poly<Alg>::from_terms(f.alg, std::move(terms)));
  }
  return out;
}

/// A complex on the window [lo, hi]: terms C^lo .. C^hi and differentials
/// d^i : C^i → C^{i+1} for lo <= i < hi. The flags record whether the
/// complex is known to vanish just outside the window.
template <class Alg>
struct FreeComplex {
  Alg alg;
  int lo = 0;
  std::vector<GradedFree<Alg>> terms;
  std::vector<GradedMap<Alg>> diffs;
  bool zero_below = false;
  bool zero_above = false;

  FreeComplex() = default;
  FreeComplex(Alg a, int low) : alg(a), lo(low) {}

  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  bool in_window(int i) const { return i >= lo && i <= hi(); }

  const GradedFree<Alg>& term(int i) const { return terms.at(static_cast<std::size_t>(i - lo)); }
  /// d^i : C^i → C^{i+1}; requires lo <= i < hi.
  const GradedMap<Alg>& diff(int i) const { return diffs.at(static_cast<std::size_t>(i - lo)); }
  GradedMap<Alg>& diff(int i) { return diffs.at(static_cast<std::size_t>(i - lo)); }

  GradedFree<Alg> term_or_zero(int i) const { return in_window(i) ? term(i) : GradedFree<Alg>(alg, {}); }

  /// Appends C^{hi+1} with the differential into it.
  void push_back(GradedMap<Alg> d) {
    if (terms.empty()) terms.push_back(d.source());
    if (!(d.source() == terms.back())) throw std::invalid_argument("push_back: source differs from last term");
    terms.push_back(d.target());
    diffs.push_back(std::move(d));
  }
  /// Prepends C^{lo-1} with the differential out of it.
  void push_front(GradedMap<Alg> d) {
    if (terms.empty()) {
      terms.push_back(d.target());
    }
    if (!(d.target() == terms.front())) throw std::invalid_argument("push_front: target differs from first term");
    terms.insert(terms.begin(), d.source());
    diffs.insert(diffs.begin(), std::move(d));
    --lo;
  }

  static FreeComplex single(const GradedFree<Alg>& f, int at) {
    FreeComplex c(f.alg, at);
    c.terms.push_back(f);
    c.zero_below = c.zero_above = true;
    return c;
  }
  static FreeComplex from_maps(Alg a, int low, std::vector<GradedMap<Alg>> maps) {
    FreeComplex c(a, low);
    for (auto& m : maps) c.push_back(std::move(m));
    return c;
  }

  /// d^{i} as a K-linear map in internal degree j; zero outside the window
  /// when the complex is known to vanish there.
  KMatrix diff_piece(int i, int j) const {
    if (i >= lo && i < hi()) return degreewise_piece(diff(i), j);
    const bool below = i < lo;
    const bool ok = (i == hi() && zero_above) || (i == lo - 1 && zero_below) || (below && zero_below && i < lo - 1) ||
                    (i > hi() && zero_above);
    if (!ok) throw std::out_of_range("differential d^" + std::to_string(i) + " lies outside the window");
    return KMatrix(term_or_zero(i + 1).piece_dim(j), term_or_zero(i).piece_dim(j));
  }

  std::vector<int> ranks() const {
    std::vector<int> out;
    for (const auto& t : terms) out.push_back(static_cast<int>(t.rank()));
    return out;
  }
};

using EComplex = FreeComplex<ExteriorAlgebra>;
using SComplex = FreeComplex<SymmetricAlgebra>;

/// dim H^i(C)_j = dim ker(d^i)_j - rank(d^{i-1})_j.
template <class Alg>
std::size_t homology_dim(const FreeComplex<Alg>& c, int i, int j) {
  if (!c.in_window(i) && !((i < c.lo && c.zero_below) || (i > c.hi() && c.zero_above)))
    throw std::out_of_range("homology position " + std::to_string(i) + " outside the window");
  const std::size_t dim = c.term_or_zero(i).piece_dim(j);
  if (dim == 0) return 0;
  const std::size_t out_rank = rank(c.diff_piece(i, j));
  const std::size_t in_rank = rank(c.diff_piece(i - 1, j));
  return dim - out_rank - in_rank;
}

/// d² = 0 on every consecutive pair and homogeneity of every entry.
template <class Alg>
bool verify_complex(const FreeComplex<Alg>& c) {
  for (const auto& d : c.diffs) d.check_homogeneous();
  for (int i = c.lo; i + 1 < c.hi(); ++i)
    if (!compose(c.diff(i + 1), c.diff(i)).is_zero()) return false;
  return true;
}

template <class Alg>
bool is_minimal(const FreeComplex<Alg>& c) {
  return std::all_of(c.diffs.begin(), c.diffs.end(), [](const GradedMap<Alg>& d) { return d.is_minimal(); });
}

namespace detail {

template <class Alg>
GradedMap<Alg> drop(const GradedMap<Alg>& m, std::optional<std::size_t> row, std::optional<std::size_t> col) {
  auto keep = [](const GradedFree<Alg>& f, std::optional<std::size_t> skip) {
    GradedFree<Alg> out(f.alg, {});
    for (std::size_t i = 0; i < f.rank(); ++i)
      if (!skip || *skip != i) out.degrees.push_back(f.degrees[i]);
    return out;
  };
  GradedMap<Alg> out(keep(m.source(), col), keep(m.target(), row));
  std::size_t rr = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (row && *row == r) continue;
    std::size_t cc = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (col && *col == c) continue;
      out.at(rr, cc++) = m.at(r, c);
    }
    ++rr;
  }
  return out;
}

}  // namespace detail

/// Gaussian cancellation: while some differential has a scalar entry u at
/// (r, c), split off the contractible summand gen_c → gen_r. The result is
/// homotopy equivalent to the input and minimal.
template <class Alg>
FreeComplex<Alg> minimize(FreeComplex<Alg> c) {
  for (int i = c.lo; i < c.hi();) {
    auto& d = c.diff(i);
    std::optional<std::pair<std::size_t, std::size_t>> unit;
    for (std::size_t col = 0; col < d.cols() && !unit; ++col)
      for (std::size_t row = 0; row < d.rows() && !unit; ++row)
        if (!d.at(row, col).constant().is_zero()) unit = std::pair{row, col};
    if (!unit) {
      ++i;
      continue;
    }
    const auto [r, col] = *unit;
    const Scalar inv = d.at(r, col).constant().inverse();
    // new d^i = δ - β u^{-1} γ on the surviving rows and columns
    GradedMap<Alg> nd = d;
    for (std::size_t rr = 0; rr < d.rows(); ++rr) {
      if (rr == r || d.at(rr, col).is_zero()) continue;
      const auto beta = d.at(rr, col) * inv;
      for (std::size_t cc = 0; cc < d.cols(); ++cc) {
        if (cc == col || d.at(r, cc).is_zero()) continue;
        nd.at(rr, cc) = nd.at(rr, cc) - beta * d.at(r, cc);
      }
    }
    c.diff(i) = detail::drop(nd, std::optional<std::size_t>(r), std::optional<std::size_t>(col));
    if (i > c.lo) c.diff(i - 1) = detail::drop(c.diff(i - 1), std::optional<std::size_t>(col), std::nullopt);
    if (i + 1 < c.hi()) c.diff(i + 1) = detail::drop(c.diff(i + 1), std::nullopt, std::optional<std::size_t>(r));
    c.terms[static_cast<std::size_t>(i - c.lo)] = c.diff(i).source();
    c.terms[static_cast<std::size_t>(i + 1 - c.lo)] = c.diff(i).target();
    if (i > c.lo) --i;  // the previous differential lost a row; recheck it
  }
  return c;
}

/// Entrywise component of absolute degree 1.
template <class Alg>
GradedMap<Alg> linear_part(const GradedMap<Alg>& m) {
  const int lin = Alg::kind == RingKind::Exterior ? -1 : 1;
  GradedMap<Alg> out(m.source(), m.target());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.at(r, c) = m.at(r, c).component(lin);
  return out;
}

template <class Alg>
FreeComplex<Alg> linear_part(const FreeComplex<Alg>& c) {
  if (!is_minimal(c)) throw std::invalid_argument("linear_part requires a minimal complex");
  FreeComplex<Alg> out = c;
  for (auto& d : out.diffs) d = linear_part(d);
  return out;
}

/// C⟨a⟩, the complex with (C⟨a⟩)^j = C^{a+j}.
template <class Alg>
FreeComplex<Alg> shift_cohomological(FreeComplex<Alg> c, int a) {
  c.lo -= a;
  return c;
}

template <class Alg>
GradedFree<Alg> twist(GradedFree<Alg> f, int a) {
  for (auto& d : f.degrees) d -= a;
  return f;
}

template <class Alg>
GradedMap<Alg> twist(const GradedMap<Alg>& m, int a) {
  GradedMap<Alg> out(twist(m.source(), a), twist(m.target(), a));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.at(r, c) = m.at(r, c);
  return out;
}

/// C(a): every generator degree g becomes g - a, since M(a)_b = M_{a+b}.
template <class Alg>
FreeComplex<Alg> twist_internal(FreeComplex<Alg> c, int a) {
  for (auto& t : c.terms) t = twist(t, a);
  for (auto& d : c.diffs) d = twist(d, a);
  return c;
}

/// The anti-automorphism fixing the variables: reverses exterior words,
/// identity on S. Transposing a matrix and applying it entrywise turns
/// composition around, which is what dualizing needs.
template <class Alg>
Poly<Alg> reversal(const Poly<Alg>& p) {
  if constexpr (Alg::kind == RingKind::Exterior) {
    std::vector<typename Poly<Alg>::Term> terms;
    for (const auto& [m, c] : p.terms()) {
      const int k = std::popcount(m);
      terms.emplace_back(m, (k * (k - 1) / 2) % 2 ? -c : c);
    }
    return Poly<Alg>::from_terms(p.algebra(), std::move(terms));
  } else {
    return p;
  }
}

/// Dual of a free module with generator degree g ↦ shift - g.
template <class Alg>
GradedFree<Alg> dual_module(const GradedFree<Alg>& f, int shift) {
  GradedFree<Alg> out(f.alg, {});
  for (int g : f.degrees) out.degrees.push_back(shift - g);
  return out;
}

template <class Alg>
GradedMap<Alg> dual_map(const GradedMap<Alg>& m, int shift) {
  GradedMap<Alg> out(dual_module(m.target(), shift), dual_module(m.source(), shift));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.at(c, r) = reversal(m.at(r, c));
  return out;
}

/// Dual complex, (C*)^i = (C^{-i})*. With shift = 0 this is Hom(C, R);
/// over E, shift = v gives Hom_K(C, K) and shift = 2v gives Hom_K(C, ∧^v W).
template <class Alg>
FreeComplex<Alg> dualize(const FreeComplex<Alg>& c, int shift) {
  FreeComplex<Alg> out(c.alg, -c.hi());
  for (int i = c.hi(); i >= c.lo; --i) out.terms.push_back(dual_module(c.term(i), shift));
  for (int i = c.hi() - 1; i >= c.lo; --i) out.diffs.push_back(dual_map(c.diff(i), shift));
  out.zero_below = c.zero_above;
  out.zero_above = c.zero_below;
  return out;
}

/// Hom_K(C, ∧^v W) for complexes over E: ω_E(a) ↦ ω_E(-a).
inline EComplex dualize_K(const EComplex& c) { return dualize(c, 2 * c.alg.v); }

/// Euler characteristic Σ_i (-1)^i dim C^i_j over the window.
template <class Alg>
long euler_characteristic(const FreeComplex<Alg>& c, int j) {
  long chi = 0;
  for (int i = c.lo; i <= c.hi(); ++i) {
    const long d = static_cast<long>(c.term(i).piece_dim(j));
    chi += (i % 2 == 0) ? d : -d;
  }
  return chi;
}

/// Text rendering: one line per term with its generator degrees.
template <class Alg>
std::string render_complex(const FreeComplex<Alg>& c) {
  std::ostringstream os;
  for (int i = c.lo; i <= c.hi(); ++i) {
    os << "C^" << i << ":";
    for (auto [deg, n] : c.term(i).degree_counts()) os << ' ' << n << '@' << deg;
    os << '\n';
  }
  return os.str();
}

}  // namespace bgg
