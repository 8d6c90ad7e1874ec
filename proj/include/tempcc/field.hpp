#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tempcc {

/// 2^61 - 1, a Mersenne prime. Default modulus for generic-rank evaluation.
inline constexpr std::uint64_t kDefaultPrime = 2305843009213693951ULL;

/// Smallest modulus accepted for rank evaluation.
inline constexpr std::uint64_t kMinPrime = 1000000ULL;

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = detail::pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Arithmetic in GF(p). Elements are canonical residues in [0, p).
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t modulus = kDefaultPrime) : p_(modulus) {
    if (modulus <= kMinPrime || !is_prime(modulus)) {
      throw std::invalid_argument("field modulus must be a prime greater than 10^6, got " +
                                  std::to_string(modulus));
    }
  }

  std::uint64_t modulus() const { return p_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;  // p < 2^63, no overflow
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return detail::mul_mod(a, b, p_); }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const { return detail::pow_mod(a, e, p_); }

  std::uint64_t inv(std::uint64_t a) const {
    if (a % p_ == 0) throw std::domain_error("inverse of zero in GF(p)");
    return pow(a, p_ - 2);
  }

  std::uint64_t reduce(std::uint64_t a) const { return a % p_; }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

/// Dense row-major matrix over GF(p).
class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<std::uint64_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const std::uint64_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<std::uint64_t> column(std::size_t c) const {
    std::vector<std::uint64_t> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  void set_column(std::size_t c, std::span<const std::uint64_t> values) {
    if (values.size() != rows_) throw std::invalid_argument("column length mismatch");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
  }

  /// Submatrix made of the given columns, in order.
  FieldMatrix select_columns(std::span<const std::size_t> cols) const {
    FieldMatrix out(rows_, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      for (std::size_t r = 0; r < rows_; ++r) out(r, j) = (*this)(r, cols[j]);
    }
    return out;
  }

  /// Columns of `left` followed by columns of `right`.
  static FieldMatrix hconcat(const FieldMatrix& left, const FieldMatrix& right) {
    if (left.rows_ != right.rows_) throw std::invalid_argument("hconcat: row count mismatch");
    FieldMatrix out(left.rows_, left.cols_ + right.cols_);
    for (std::size_t r = 0; r < left.rows_; ++r) {
      for (std::size_t c = 0; c < left.cols_; ++c) out(r, c) = left(r, c);
      for (std::size_t c = 0; c < right.cols_; ++c) out(r, left.cols_ + c) = right(r, c);
    }
    return out;
  }

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint64_t> data_;
};

/// Row echelon reduction result: rank plus the pivot positions.
struct Echelon {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;  // original row index of each pivot
  std::vector<std::size_t> pivot_cols;
};

/// Gaussian elimination over GF(p); the first nonzero entry in the current
/// column is taken as pivot. The input is taken by value and destroyed.
inline Echelon row_echelon(FieldMatrix m, const PrimeField& field) {
  Echelon out;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> row_origin(rows);
  for (std::size_t r = 0; r < rows; ++r) row_origin[r] = r;

  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    std::size_t sel = pivot_row;
    while (sel < rows && m(sel, c) == 0) ++sel;
    if (sel == rows) continue;
    if (sel != pivot_row) {
      auto a = m.row(sel);
      auto b = m.row(pivot_row);
      std::swap_ranges(a.begin(), a.end(), b.begin());
      std::swap(row_origin[sel], row_origin[pivot_row]);
    }
    const std::uint64_t inv = field.inv(m(pivot_row, c));
    for (std::size_t r = pivot_row + 1; r < rows; ++r) {
      if (m(r, c) == 0) continue;
      const std::uint64_t factor = field.mul(m(r, c), inv);
      for (std::size_t k = c; k < cols; ++k) {
        if (m(pivot_row, k) != 0) m(r, k) = field.sub(m(r, k), field.mul(factor, m(pivot_row, k)));
      }
    }
    out.pivot_rows.push_back(row_origin[pivot_row]);
    out.pivot_cols.push_back(c);
    ++pivot_row;
  }
  out.rank = pivot_row;
  return out;
}

/// Exact rank over GF(p). An empty matrix has rank 0.
inline std::size_t generic_rank(const FieldMatrix& m, const PrimeField& field) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return row_echelon(m, field).rank;
}

/// Solves the square system a * x = b. Returns an empty vector when `a` is singular.
inline std::vector<std::uint64_t> solve_square(FieldMatrix a, std::vector<std::uint64_t> b,
                                               const PrimeField& field) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve_square: shape mismatch");
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && a(sel, c) == 0) ++sel;
    if (sel == n) return {};
    if (sel != c) {
      auto x = a.row(sel);
      auto y = a.row(c);
      std::swap_ranges(x.begin(), x.end(), y.begin());
      std::swap(b[sel], b[c]);
    }
    const std::uint64_t inv = field.inv(a(c, c));
    for (std::size_t k = c; k < n; ++k) a(c, k) = field.mul(a(c, k), inv);
    b[c] = field.mul(b[c], inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const std::uint64_t f = a(r, c);
      for (std::size_t k = c; k < n; ++k) a(r, k) = field.sub(a(r, k), field.mul(f, a(c, k)));
      b[r] = field.sub(b[r], field.mul(f, b[c]));
    }
  }
  return b;
}

/// 64-bit finalizer used to derive independent sub-seeds from structured keys.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  return mix64(mix64(mix64(master) ^ a) ^ (b * 0x2545f4914f6cdd1dULL));
}

}  // namespace tempcc
