#pragma once

// Exact arithmetic in a prime field F_p and dense linear algebra over it.
// Every homological computation in the library bottoms out in the routines
// of this header: rank, kernel, cokernel complements and linear solves.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace bgg {

/// Session-wide characteristic. Set once before any computation starts.
class PrimeField {
 public:
  static constexpr std::uint32_t kDefaultPrime = 32003;

  static std::uint32_t prime() { return prime_; }

  static void set_prime(std::uint32_t p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p) || p >= (1u << 31))
      throw std::invalid_argument("characteristic must be an odd prime below 2^31, got " +
                                  std::to_string(p));
    prime_ = p;
  }

  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

 private:
  static inline std::uint32_t prime_ = kDefaultPrime;
};

/// RAII guard that switches the session prime for a scope (tests, fixtures).
class ScopedPrime {
 public:
  explicit ScopedPrime(std::uint32_t p) : saved_(PrimeField::prime()) { PrimeField::set_prime(p); }
  ~ScopedPrime() { PrimeField::set_prime(saved_); }
  ScopedPrime(const ScopedPrime&) = delete;
  ScopedPrime& operator=(const ScopedPrime&) = delete;

 private:
  std::uint32_t saved_;
};

/// Residue class modulo the session prime, always stored reduced.
class Scalar {
 public:
  constexpr Scalar() = default;
  Scalar(std::int64_t x) {  // NOLINT(google-explicit-constructor)
    const auto p = static_cast<std::int64_t>(PrimeField::prime());
    x %= p;
    if (x < 0) x += p;
    value_ = static_cast<std::uint32_t>(x);
  }
  static Scalar raw(std::uint32_t reduced) {
    Scalar s;
    s.value_ = reduced;
    return s;
  }

  std::uint32_t value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  /// Symmetric representative in (-p/2, p/2], used for printing.
  std::int64_t lift() const {
    const auto p = PrimeField::prime();
    return value_ > p / 2 ? static_cast<std::int64_t>(value_) - p : value_;
  }

  Scalar operator+(Scalar o) const {
    std::uint32_t s = value_ + o.value_;
    if (s >= PrimeField::prime()) s -= PrimeField::prime();
    return raw(s);
  }
  Scalar operator-(Scalar o) const {
    return raw(value_ >= o.value_ ? value_ - o.value_ : value_ + PrimeField::prime() - o.value_);
  }
  Scalar operator-() const { return value_ == 0 ? *this : raw(PrimeField::prime() - value_); }
  Scalar operator*(Scalar o) const {
    return raw(static_cast<std::uint32_t>(static_cast<std::uint64_t>(value_) * o.value_ %
                                          PrimeField::prime()));
  }
  Scalar& operator+=(Scalar o) { return *this = *this + o; }
  Scalar& operator-=(Scalar o) { return *this = *this - o; }
  Scalar& operator*=(Scalar o) { return *this = *this * o; }

  Scalar inverse() const {
    if (value_ == 0) throw std::domain_error("inverse of zero");
    // extended Euclid on (value, p)
    std::int64_t a = value_, b = PrimeField::prime(), x0 = 1, x1 = 0;
    while (b != 0) {
      const std::int64_t q = a / b;
      std::tie(a, b) = std::pair{b, a - q * b};
      std::tie(x0, x1) = std::pair{x1, x0 - q * x1};
    }
    return Scalar(x0);
  }
  Scalar operator/(Scalar o) const { return *this * o.inverse(); }

  friend bool operator==(Scalar a, Scalar b) { return a.value_ == b.value_; }
  friend std::ostream& operator<<(std::ostream& os, Scalar s) { return os << s.lift(); }

 private:
  std::uint32_t value_ = 0;
};

using Vec = std::vector<Scalar>;

/// Dense matrix over F_p, row-major.
class KMatrix {
 public:
  KMatrix() = default;
  KMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  KMatrix(std::initializer_list<std::initializer_list<std::int64_t>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      for (auto x : row) data_.emplace_back(x);
    }
  }

  static KMatrix identity(std::size_t n) {
    KMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec column(std::size_t c) const {
    Vec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }
  void set_column(std::size_t c, const Vec& v) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  static KMatrix from_columns(std::size_t rows, const std::vector<Vec>& cols) {
    KMatrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
    return m;
  }

  KMatrix transpose() const {
    KMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Scalar s) { return s.is_zero(); });
  }

  friend KMatrix operator*(const KMatrix& a, const KMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    KMatrix out(a.rows_, b.cols_);
    const std::uint64_t p = PrimeField::prime();
    std::vector<std::uint64_t> acc(b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const std::uint64_t x = a(i, k).value();
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) acc[j] = (acc[j] + x * b(k, j).value()) % p;
      }
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = Scalar::raw(static_cast<std::uint32_t>(acc[j]));
    }
    return out;
  }

  Vec operator*(const Vec& x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix-vector product: shape mismatch");
    Vec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      Scalar s;
      for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c) * x[c];
      out[r] = s;
    }
    return out;
  }

  friend KMatrix operator+(KMatrix a, const KMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend KMatrix operator-(KMatrix a, const KMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend bool operator==(const KMatrix& a, const KMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const KMatrix& m) {
    for (std::size_t r = 0; r < m.rows_; ++r) {
      os << '[';
      for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? " " : "") << m(r, c);
      os << "]\n";
    }
    return os;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

namespace detail {

/// In-place row echelon form on raw residues; returns pivot columns. With
/// reduce_above the form is reduced (needed for kernels and solving); rank
/// only needs the rows below each pivot cleared.
inline std::vector<std::size_t> rref_rows(std::vector<std::vector<std::uint32_t>>& rows, std::size_t ncols,
                                          bool reduce_above = true) {
  const std::uint64_t p = PrimeField::prime();
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> nz;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    auto& piv = rows[r];
    const std::uint64_t inv = Scalar::raw(piv[c]).inverse().value();
    nz.clear();
    for (std::size_t k = c; k < ncols; ++k)
      if (piv[k] != 0) {
        piv[k] = static_cast<std::uint32_t>(piv[k] * inv % p);
        nz.push_back(k);
      }
    for (std::size_t i = reduce_above ? 0 : r + 1; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      auto& row = rows[i];
      const std::uint64_t f = p - row[c];
      for (std::size_t k : nz) row[k] = static_cast<std::uint32_t>((row[k] + f * piv[k]) % p);
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

inline std::vector<std::vector<std::uint32_t>> raw_rows(const KMatrix& a) {
  std::vector<std::vector<std::uint32_t>> rows(a.rows(), std::vector<std::uint32_t>(a.cols()));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) rows[r][c] = a(r, c).value();
  return rows;
}

}  // namespace detail

/// Reduced row echelon form together with its pivot columns.
struct RowEchelon {
  KMatrix reduced;                  // rank x cols
  std::vector<std::size_t> pivots;  // one pivot column per row
};

inline RowEchelon rref(const KMatrix& a) {
  auto rows = detail::raw_rows(a);
  auto pivots = detail::rref_rows(rows, a.cols());
  KMatrix red(rows.size(), a.cols());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) red(r, c) = Scalar::raw(rows[r][c]);
  return {std::move(red), std::move(pivots)};
}

namespace detail {

using SparseEntry = std::pair<std::uint32_t, std::uint32_t>;  // (column, residue)
using SparseRow = std::vector<SparseEntry>;

/// Rank of the span of sparse rows over columns [0, ncols) by forward
/// elimination against stored pivot rows, sparsest rows first.
inline std::size_t sparse_rank(std::vector<SparseRow> input, std::size_t ncols) {
  const std::uint64_t p = PrimeField::prime();
  const std::size_t n = ncols;
  std::vector<std::size_t> order(input.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return input[x].size() < input[y].size(); });
  // pivot row for each column, normalized to leading coefficient 1
  std::vector<SparseRow> pivot(n);
  std::vector<bool> has(n, false);
  std::vector<std::uint64_t> scratch(n, 0);
  std::size_t rk = 0;
  for (std::size_t k : order) {
    if (input[k].empty()) continue;
    std::size_t first = n;
    for (auto [c, x] : input[k]) {
      scratch[c] = (scratch[c] + x) % p;
      first = std::min<std::size_t>(first, c);
    }
    SparseRow().swap(input[k]);
    std::size_t lead = n;
    for (std::size_t c = first; c < n; ++c) {
      if (scratch[c] == 0) continue;
      if (!has[c]) {
        lead = c;
        break;
      }
      const std::uint64_t f = p - scratch[c];
      for (auto [cc, x] : pivot[c]) scratch[cc] = (scratch[cc] + f * x) % p;
    }
    if (lead == n) continue;
    const std::uint64_t inv = Scalar::raw(static_cast<std::uint32_t>(scratch[lead])).inverse().value();
    SparseRow row;
    for (std::size_t c = lead; c < n; ++c)
      if (scratch[c]) {
        row.push_back({static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(scratch[c] * inv % p)});
        scratch[c] = 0;
      }
    pivot[lead] = std::move(row);
    has[lead] = true;
    if (++rk == n) break;
  }
  return rk;
}

}  // namespace detail

inline std::size_t rank(const KMatrix& a) {
  if (a.empty()) return 0;
  const bool by_rows = a.rows() >= a.cols();  // pivot along the shorter side
  std::vector<detail::SparseRow> input(by_rows ? a.rows() : a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (auto x = a(r, c).value())
        input[by_rows ? r : c].push_back({static_cast<std::uint32_t>(by_rows ? c : r), x});
  return detail::sparse_rank(std::move(input), by_rows ? a.cols() : a.rows());
}

/// Null space basis: columns of the result, one per free column of rref(A),
/// with a 1 in that free position and zeros in all other free positions.
inline KMatrix kernel_basis(const KMatrix& a) {
  const std::size_t n = a.cols();
  auto rows = detail::raw_rows(a);
  auto pivots = detail::rref_rows(rows, n);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  KMatrix basis(n, free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis(free[k], k) = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      basis(pivots[r], k) = -Scalar::raw(rows[r][free[k]]);
  }
  return basis;
}

/// Solves A x = b. Returns nullopt when b is not in the column space.
inline std::optional<Vec> solve(const KMatrix& a, const Vec& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: right-hand side has wrong length");
  const std::size_t n = a.cols();
  std::vector<std::vector<std::uint32_t>> rows(a.rows(), std::vector<std::uint32_t>(n + 1));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) rows[r][c] = a(r, c).value();
    rows[r][n] = b[r].value();
  }
  auto pivots = detail::rref_rows(rows, n + 1);
  Vec x(n);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == n) return std::nullopt;
    x[pivots[r]] = Scalar::raw(rows[r][n]);
  }
  return x;
}

/// Rows of the target whose standard basis vectors form a basis of
/// coker(A) = K^rows / im(A). A row survives when it is not a pivot of the
/// column space of A (elimination prefers small row indices as pivots).
inline std::vector<std::size_t> coker_basis(const KMatrix& a) {
  std::vector<bool> pivot(a.rows(), false);
  if (a.cols() != 0) {
    auto rows = detail::raw_rows(a.transpose());
    for (auto r : detail::rref_rows(rows, a.rows())) pivot[r] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < a.rows(); ++r)
    if (!pivot[r]) out.push_back(r);
  return out;
}

/// Incrementally maintained reduced basis of a subspace of K^n. Supports
/// reduction of vectors modulo the span and coordinates relative to the
/// inserted vectors' pivot positions.
class EchelonSpace {
 public:
  explicit EchelonSpace(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Reduces v modulo the span in place; returns true when v becomes zero.
  bool reduce(std::vector<std::uint32_t>& v) const {
    const std::uint64_t p = PrimeField::prime();
    bool zero = true;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::uint32_t x = v[pivots_[k]];
      if (x == 0) continue;
      const std::uint64_t f = p - x;
      const auto& row = rows_[k];
      for (std::size_t c = 0; c < dim_; ++c)
        if (row[c] != 0) v[c] = static_cast<std::uint32_t>((v[c] + f * row[c]) % p);
    }
    for (auto x : v)
      if (x != 0) zero = false;
    return zero;
  }

  /// Inserts v if it is independent of the span; returns whether it was.
  bool insert(std::vector<std::uint32_t> v) {
    if (reduce(v)) return false;
    const std::uint64_t p = PrimeField::prime();
    std::size_t c = 0;
    while (v[c] == 0) ++c;
    const std::uint64_t inv = Scalar::raw(v[c]).inverse().value();
    for (auto& x : v) x = static_cast<std::uint32_t>(x * inv % p);
    // keep the basis fully reduced on pivot columns
    for (auto& row : rows_) {
      if (row[c] == 0) continue;
      const std::uint64_t f = p - row[c];
      for (std::size_t k = 0; k < dim_; ++k)
        if (v[k] != 0) row[k] = static_cast<std::uint32_t>((row[k] + f * v[k]) % p);
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(c);
    return true;
  }

  bool insert(const Vec& v) { return insert(to_raw(v)); }
  bool contains(const Vec& v) const {
    auto r = to_raw(v);
    return reduce(r);
  }

  static std::vector<std::uint32_t> to_raw(const Vec& v) {
    std::vector<std::uint32_t> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].value();
    return r;
  }

 private:
  std::size_t dim_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace bgg
