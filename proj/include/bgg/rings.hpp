#pragma once

// Homogeneous arithmetic in the exterior algebra E = ∧V (variables e_i of
// degree -1) and the symmetric algebra S = Sym W (variables x_i of degree +1).
// ∧W, the exterior algebra on the x_i, reuses the exterior machinery with
// positive degrees; it carries the Koszul generators that the contraction
// pairing acts on.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bgg/field.hpp"

namespace bgg {

enum class RingKind { Exterior, Symmetric };

inline constexpr int kMaxVariables = 8;

inline void check_variable_count(int v) {
  if (v < 1 || v > kMaxVariables)
    throw std::invalid_argument("number of variables must lie in [1, " + std::to_string(kMaxVariables) +
                                "], got " + std::to_string(v));
}

/// Exterior algebra on v generators. Monomials are bitsets of variable
/// indices; a mask with k bits has degree -k (or +k for the ∧W flavour).
struct ExteriorAlgebra {
  using Mono = std::uint32_t;
  static constexpr RingKind kind = RingKind::Exterior;

  int v = 0;
  char symbol = 'e';  // 'x' for ∧W, whose monomials sit in positive degree

  ExteriorAlgebra() = default;
  explicit ExteriorAlgebra(int nvars, char sym = 'e') : v(nvars), symbol(sym) { check_variable_count(nvars); }

  int sign_of_degree() const { return symbol == 'e' ? -1 : 1; }
  int degree(Mono m) const { return sign_of_degree() * std::popcount(m); }
  static Mono one() { return 0; }
  int min_degree() const { return symbol == 'e' ? -v : 0; }
  int max_degree() const { return symbol == 'e' ? 0 : v; }

  /// Product of monomials: the merged mask with the sign of the sorting
  /// permutation, or nothing when the masks overlap.
  static std::optional<std::pair<Mono, int>> mul(Mono a, Mono b) {
    if (a & b) return std::nullopt;
    int swaps = 0;
    for (Mono rest = b; rest; rest &= rest - 1) {
      const int j = std::countr_zero(rest);
      swaps += std::popcount(a >> (j + 1));
    }
    return std::pair{a | b, (swaps & 1) ? -1 : 1};
  }

  /// Monomials of the given degree, ascending as integers.
  const std::vector<Mono>& basis(int deg) const;
  /// Position of m within basis(degree(m)).
  std::size_t index(Mono m) const;

  std::string render_mono(Mono m) const {
    if (m == 0) return "1";
    std::string s;
    for (Mono rest = m; rest; rest &= rest - 1) {
      if (!s.empty()) s += '*';
      s += symbol + std::to_string(std::countr_zero(rest));
    }
    return s;
  }
  friend bool operator==(const ExteriorAlgebra& a, const ExteriorAlgebra& b) {
    return a.v == b.v && a.symbol == b.symbol;
  }
};

/// Polynomial ring on v generators. Exponent vectors are packed eight bits
/// per variable, so multiplication of monomials is integer addition.
struct SymmetricAlgebra {
  using Mono = std::uint64_t;
  static constexpr RingKind kind = RingKind::Symmetric;

  int v = 0;
  char symbol = 'x';

  SymmetricAlgebra() = default;
  explicit SymmetricAlgebra(int nvars) : v(nvars) { check_variable_count(nvars); }

  static int exponent(Mono m, int i) { return static_cast<int>((m >> (8 * i)) & 0xff); }
  static Mono variable(int i) { return Mono{1} << (8 * i); }
  static Mono one() { return 0; }
  int degree(Mono m) const {
    int d = 0;
    for (int i = 0; i < v; ++i) d += exponent(m, i);
    return d;
  }
  static std::optional<std::pair<Mono, int>> mul(Mono a, Mono b) { return std::pair{a + b, 1}; }

  /// Monomials of degree d in descending lexicographic order (x0^d first).
  const std::vector<Mono>& basis(int deg) const;
  std::size_t index(Mono m) const;

  std::string render_mono(Mono m) const {
    if (m == 0) return "1";
    std::string s;
    for (int i = 0; i < v; ++i) {
      const int e = exponent(m, i);
      if (e == 0) continue;
      if (!s.empty()) s += '*';
      s += symbol + std::to_string(i);
      if (e > 1) s += '^' + std::to_string(e);
    }
    return s;
  }
  friend bool operator==(const SymmetricAlgebra& a, const SymmetricAlgebra& b) { return a.v == b.v; }
};

namespace detail {

struct BasisCache {
  std::mutex mu;
  std::map<std::tuple<int, char, int>, std::vector<std::uint64_t>> lists;
  std::map<std::tuple<int, char, int>, std::map<std::uint64_t, std::size_t>> positions;
};

inline BasisCache& basis_cache() {
  static BasisCache cache;
  return cache;
}

inline void sym_monomials(int v, int var, int remaining, std::uint64_t acc, std::vector<std::uint64_t>& out) {
  if (var == v - 1) {
    out.push_back(acc + SymmetricAlgebra::variable(var) * static_cast<std::uint64_t>(remaining));
    return;
  }
  for (int e = remaining; e >= 0; --e)
    sym_monomials(v, var + 1, remaining - e, acc + SymmetricAlgebra::variable(var) * static_cast<std::uint64_t>(e), out);
}

template <class Build>
const std::vector<std::uint64_t>& cached_basis(std::tuple<int, char, int> key, Build build) {
  auto& cache = basis_cache();
  std::lock_guard lock(cache.mu);
  auto it = cache.lists.find(key);
  if (it == cache.lists.end()) {
    auto list = build();
    std::map<std::uint64_t, std::size_t> pos;
    for (std::size_t i = 0; i < list.size(); ++i) pos.emplace(list[i], i);
    cache.positions.emplace(key, std::move(pos));
    it = cache.lists.emplace(key, std::move(list)).first;
  }
  return it->second;
}

inline std::size_t cached_index(std::tuple<int, char, int> key, std::uint64_t m) {
  auto& cache = basis_cache();
  std::lock_guard lock(cache.mu);
  return cache.positions.at(key).at(m);
}

}  // namespace detail

inline const std::vector<ExteriorAlgebra::Mono>& ExteriorAlgebra::basis(int deg) const {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<Mono>> lists;
  const int k = deg * sign_of_degree();
  std::lock_guard lock(mu);
  auto key = std::pair{v, k};
  auto it = lists.find(key);
  if (it == lists.end()) {
    std::vector<Mono> out;
    if (k >= 0 && k <= v)
      for (Mono m = 0; m < (Mono{1} << v); ++m)
        if (std::popcount(m) == k) out.push_back(m);
    it = lists.emplace(key, std::move(out)).first;
  }
  return it->second;
}

inline std::size_t ExteriorAlgebra::index(Mono m) const {
  // rank of m among masks with the same popcount, ascending
  std::size_t idx = 0;
  int seen = 0;
  for (int bit = 0; bit < v; ++bit) {
    if (!(m >> bit & 1)) continue;
    ++seen;
    // combinatorial number system: masks below m with the same popcount
    if (bit < seen) continue;
    std::uint64_t c = 1;
    for (int t = 0; t < seen; ++t) c = c * static_cast<std::uint64_t>(bit - t) / static_cast<std::uint64_t>(t + 1);
    idx += c;
  }
  return idx;
}

inline const std::vector<SymmetricAlgebra::Mono>& SymmetricAlgebra::basis(int deg) const {
  return detail::cached_basis({v, 'x', deg}, [&] {
    std::vector<std::uint64_t> out;
    if (deg >= 0) detail::sym_monomials(v, 0, deg, 0, out);
    return out;
  });
}

inline std::size_t SymmetricAlgebra::index(Mono m) const {
  const int d = degree(m);
  basis(d);
  return detail::cached_index({v, 'x', d}, m);
}

/// Sparse polynomial over one of the algebras; terms sorted by monomial,
/// no zero coefficients stored.
template <class Alg>
class Poly {
 public:
  using Mono = typename Alg::Mono;
  using Term = std::pair<Mono, Scalar>;

  Poly() = default;
  explicit Poly(Alg alg) : alg_(alg) {}
  Poly(Alg alg, Scalar c) : alg_(alg) {
    if (!c.is_zero()) terms_.emplace_back(Alg::one(), c);
  }
  static Poly monomial(Alg alg, Mono m, Scalar c = Scalar(1)) {
    Poly p(alg);
    if (!c.is_zero()) p.terms_.emplace_back(m, c);
    return p;
  }
  /// Builds from arbitrary (possibly repeated, unsorted) terms.
  static Poly from_terms(Alg alg, std::vector<Term> terms) {
    Poly p(alg);
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  const Alg& algebra() const { return alg_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Constant (degree 0 monomial) coefficient.
  Scalar constant() const {
    for (const auto& [m, c] : terms_)
      if (m == Alg::one()) return c;
    return Scalar();
  }
  bool is_unit() const { return terms_.size() == 1 && terms_[0].first == Alg::one(); }

  /// Degree of the first term; callers use homogeneous polynomials only.
  std::optional<int> degree() const {
    if (terms_.empty()) return std::nullopt;
    return alg_.degree(terms_.front().first);
  }
  bool is_homogeneous() const {
    for (const auto& [m, c] : terms_)
      if (alg_.degree(m) != alg_.degree(terms_.front().first)) return false;
    return true;
  }
  bool is_homogeneous_of(int d) const {
    return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) { return alg_.degree(t.first) == d; });
  }
  /// The part of given degree.
  Poly component(int d) const {
    Poly p(alg_);
    for (const auto& t : terms_)
      if (alg_.degree(t.first) == d) p.terms_.push_back(t);
    return p;
  }

  Scalar coefficient(Mono m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, Mono x) { return t.first < x; });
    return it != terms_.end() && it->first == m ? it->second : Scalar();
  }

  Poly operator+(const Poly& o) const {
    check_same(o);
    std::vector<Term> t = terms_;
    t.insert(t.end(), o.terms_.begin(), o.terms_.end());
    return from_terms(alg_, std::move(t));
  }
  Poly operator-() const {
    Poly p = *this;
    for (auto& t : p.terms_) t.second = -t.second;
    return p;
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }
  Poly operator*(const Poly& o) const {
    check_same(o);
    std::vector<Term> t;
    t.reserve(terms_.size() * o.terms_.size());
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_)
        if (auto prod = Alg::mul(ma, mb)) t.emplace_back(prod->first, prod->second < 0 ? -(ca * cb) : ca * cb);
    return from_terms(alg_, std::move(t));
  }
  Poly operator*(Scalar s) const {
    Poly p(alg_);
    if (s.is_zero()) return p;
    p.terms_ = terms_;
    for (auto& t : p.terms_) t.second *= s;
    return p;
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  /// Canonical text: `3*x0^2*x1-e0*e2`, `0` for zero.
  std::string render() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    // highest monomial first reads more naturally for polynomials
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      std::int64_t coef = c.lift();
      if (coef < 0) {
        os << '-';
        coef = -coef;
      } else if (!first) {
        os << '+';
      }
      first = false;
      const bool unit_mono = m == Alg::one();
      if (unit_mono) {
        os << coef;
      } else {
        if (coef != 1) os << coef << '*';
        os << alg_.render_mono(m);
      }
    }
    return os.str();
  }

 private:
  void check_same(const Poly& o) const {
    if (!(alg_ == o.alg_)) throw std::invalid_argument("polynomials from different rings");
  }
  void normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> out;
    for (const auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first)
        out.back().second += t.second;
      else
        out.push_back(t);
      if (out.back().second.is_zero()) out.pop_back();
    }
    terms_ = std::move(out);
  }

  Alg alg_;
  std::vector<Term> terms_;
};

using ExtPoly = Poly<ExteriorAlgebra>;
using SymPoly = Poly<SymmetricAlgebra>;

inline ExtPoly ext_var(const ExteriorAlgebra& alg, int i) { return ExtPoly::monomial(alg, ExteriorAlgebra::Mono{1} << i); }
inline SymPoly sym_var(const SymmetricAlgebra& alg, int i) { return SymPoly::monomial(alg, SymmetricAlgebra::variable(i)); }

inline ExtPoly ext_mul(const ExtPoly& a, const ExtPoly& b) { return a * b; }
inline SymPoly sym_mul(const SymPoly& a, const SymPoly& b) { return a * b; }

/// Interior product e_i ⌟ (x_{j_1}∧…∧x_{j_a}) on a single monomial:
/// (-1)^(t-1) times the monomial with slot t removed when i = j_t.
inline std::optional<std::pair<ExteriorAlgebra::Mono, int>> contract_mono(int i, ExteriorAlgebra::Mono w) {
  const ExteriorAlgebra::Mono bit = ExteriorAlgebra::Mono{1} << i;
  if (!(w & bit)) return std::nullopt;
  const int below = std::popcount(w & (bit - 1));
  return std::pair{w & ~bit, (below & 1) ? -1 : 1};
}

/// Contraction of η ∈ ∧^b V into w ∈ ∧^a W. For a monomial η = e_{i_1}∧…∧e_{i_b}
/// (i_1 < … < i_b) the factor e_{i_b} acts first, e_{i_1} last.
inline ExtPoly contract(const ExtPoly& w, const ExtPoly& eta) {
  if (w.algebra().symbol != 'x' || eta.algebra().symbol != 'e' || w.algebra().v != eta.algebra().v)
    throw std::invalid_argument("contract expects an element of ∧W and one of ∧V on the same space");
  if (!w.is_zero() && !eta.is_zero() && *eta.degree() + *w.degree() < 0)
    throw std::invalid_argument("contract: degree of η exceeds degree of w");
  std::vector<ExtPoly::Term> out;
  for (const auto& [em, ec] : eta.terms()) {
    std::vector<int> idx;
    for (auto rest = em; rest; rest &= rest - 1) idx.push_back(std::countr_zero(rest));
    for (const auto& [wm, wc] : w.terms()) {
      auto cur = wm;
      int sign = 1;
      bool alive = true;
      for (auto it = idx.rbegin(); it != idx.rend() && alive; ++it) {
        auto r = contract_mono(*it, cur);
        if (!r) {
          alive = false;
        } else {
          cur = r->first;
          sign *= r->second;
        }
      }
      if (alive) out.emplace_back(cur, sign < 0 ? -(ec * wc) : ec * wc);
    }
  }
  return ExtPoly::from_terms(w.algebra(), std::move(out));
}

}  // namespace bgg
