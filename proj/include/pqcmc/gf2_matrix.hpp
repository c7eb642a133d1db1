#pragma once

// Dense GF(2) matrices. Rows are bit-packed MSB-first into octets and each
// row is padded to a whole octet; padding bits are always zero.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pqcmc/bytes.hpp"
#include "pqcmc/errors.hpp"

namespace pqcmc {

namespace detail {

// dst ^= src over `len` octets, eight at a time.
inline void xor_octets(std::uint8_t* dst, const std::uint8_t* src, std::size_t len) {
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    std::uint64_t a;
    std::uint64_t b;
    std::memcpy(&a, dst + i, 8);
    std::memcpy(&b, src + i, 8);
    a ^= b;
    std::memcpy(dst + i, &a, 8);
  }
  for (; i < len; ++i) dst[i] ^= src[i];
}

inline std::uint8_t padding_mask(std::size_t cols) {
  const std::size_t used = cols % 8;
  return used == 0 ? std::uint8_t{0} : static_cast<std::uint8_t>(0xff >> used);
}

}  // namespace detail

class Gf2Matrix {
 public:
  /// Zero matrix. Both dimensions must be positive.
  Gf2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), stride_((cols + 7) / 8) {
    if (rows == 0 || cols == 0) {
      throw DimensionError("matrix dimensions must be positive, got " + shape_string(rows, cols));
    }
    data_.assign(rows_ * stride_, 0);
  }

  /// Literal constructor for small matrices, e.g. `{{1,0},{1,1}}`.
  Gf2Matrix(std::initializer_list<std::initializer_list<int>> rows)
      : Gf2Matrix(rows.size(), rows.size() == 0 ? 0 : rows.begin()->size()) {
    std::size_t r = 0;
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DimensionError("ragged matrix literal");
      std::size_t c = 0;
      for (int v : row) set(r, c++, (v & 1) != 0);
      ++r;
    }
  }

  static Gf2Matrix identity(std::size_t n) {
    Gf2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  /// Builds a rows x cols matrix from packed row-major octets (`rows * stride`
  /// octets). Padding bits must be zero.
  static Gf2Matrix from_packed(std::size_t rows, std::size_t cols, ByteView packed) {
    Gf2Matrix m(rows, cols);
    if (packed.size() != m.data_.size()) {
      throw DimensionError("packed payload has " + std::to_string(packed.size()) + " octets, expected " +
                           std::to_string(m.data_.size()));
    }
    std::copy(packed.begin(), packed.end(), m.data_.begin());
    if (!m.padding_is_clear()) throw NonzeroPadding("nonzero padding bits in packed matrix");
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  /// Octets per packed row.
  std::size_t stride() const noexcept { return stride_; }

  bool get(std::size_t r, std::size_t c) const {
    return (data_[r * stride_ + c / 8] >> (7 - c % 8)) & 1u;
  }

  void set(std::size_t r, std::size_t c, bool v) {
    auto& byte = data_[r * stride_ + c / 8];
    const auto mask = static_cast<std::uint8_t>(0x80u >> (c % 8));
    byte = v ? static_cast<std::uint8_t>(byte | mask) : static_cast<std::uint8_t>(byte & ~mask);
  }

  void flip(std::size_t r, std::size_t c) { data_[r * stride_ + c / 8] ^= static_cast<std::uint8_t>(0x80u >> (c % 8)); }

  std::span<const std::uint8_t> row(std::size_t r) const { return {data_.data() + r * stride_, stride_}; }
  std::span<std::uint8_t> row(std::size_t r) { return {data_.data() + r * stride_, stride_}; }

  /// dst row ^= src row of `other` (same column count).
  void xor_row_from(std::size_t dst, const Gf2Matrix& other, std::size_t src) {
    detail::xor_octets(data_.data() + dst * stride_, other.data_.data() + src * other.stride_, stride_);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(data_.begin() + static_cast<std::ptrdiff_t>(a * stride_),
                     data_.begin() + static_cast<std::ptrdiff_t>((a + 1) * stride_),
                     data_.begin() + static_cast<std::ptrdiff_t>(b * stride_));
  }

  /// Packed row-major storage, rows() * stride() octets.
  ByteView packed() const noexcept { return data_; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](std::uint8_t b) { return b == 0; });
  }

  bool row_is_zero(std::size_t r) const {
    auto bytes = row(r);
    return std::all_of(bytes.begin(), bytes.end(), [](std::uint8_t b) { return b == 0; });
  }

  std::size_t weight() const {
    std::size_t w = 0;
    for (auto b : data_) w += static_cast<std::size_t>(__builtin_popcount(b));
    return w;
  }

  bool padding_is_clear() const {
    const auto mask = detail::padding_mask(cols_);
    if (mask == 0) return true;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (data_[r * stride_ + stride_ - 1] & mask) return false;
    }
    return true;
  }

  std::string shape() const { return shape_string(rows_, cols_); }

  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

  static std::string shape_string(std::size_t rows, std::size_t cols) {
    return std::to_string(rows) + "x" + std::to_string(cols);
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t stride_;
  std::vector<std::uint8_t> data_;
};

inline std::ostream& operator<<(std::ostream& os, const Gf2Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) os << (m.get(r, c) ? '1' : '0');
    if (r + 1 < m.rows()) os << '\n';
  }
  return os;
}

inline Gf2Matrix identity(std::size_t n) { return Gf2Matrix::identity(n); }

/// Matrix product over GF(2). For each set bit a(i,k), row k of b is XORed
/// into row i of the result.
inline Gf2Matrix multiply(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("cannot multiply " + a.shape() + " by " + b.shape());
  }
  Gf2Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto arow = a.row(i);
    for (std::size_t byte = 0; byte < arow.size(); ++byte) {
      std::uint8_t bits = arow[byte];
      while (bits != 0) {
        const int lead = __builtin_clz(static_cast<unsigned>(bits)) - 24;
        out.xor_row_from(i, b, byte * 8 + static_cast<std::size_t>(lead));
        bits = static_cast<std::uint8_t>(bits & ~(0x80u >> lead));
      }
    }
  }
  return out;
}

inline Gf2Matrix add(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("cannot add " + a.shape() + " and " + b.shape());
  }
  Gf2Matrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) out.xor_row_from(r, b, r);
  return out;
}

inline Gf2Matrix operator*(const Gf2Matrix& a, const Gf2Matrix& b) { return multiply(a, b); }
inline Gf2Matrix operator+(const Gf2Matrix& a, const Gf2Matrix& b) { return add(a, b); }

inline Gf2Matrix transpose(const Gf2Matrix& a) {
  Gf2Matrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (a.get(r, c)) out.set(c, r, true);
    }
  }
  return out;
}

/// Rows [first, first + count) of `a` as a new matrix.
inline Gf2Matrix row_slice(const Gf2Matrix& a, std::size_t first, std::size_t count) {
  if (count == 0 || first + count > a.rows()) throw DimensionError("row slice out of range for " + a.shape());
  return Gf2Matrix::from_packed(count, a.cols(), a.packed().subspan(first * a.stride(), count * a.stride()));
}

/// [a | b]
inline Gf2Matrix hstack(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("cannot hstack " + a.shape() + " and " + b.shape());
  Gf2Matrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out.set(r, c, a.get(r, c));
    for (std::size_t c = 0; c < b.cols(); ++c) out.set(r, a.cols() + c, b.get(r, c));
  }
  return out;
}

/// [a ; b]
inline Gf2Matrix vstack(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.cols() != b.cols()) throw DimensionError("cannot vstack " + a.shape() + " and " + b.shape());
  Bytes packed(a.packed().begin(), a.packed().end());
  packed.insert(packed.end(), b.packed().begin(), b.packed().end());
  return Gf2Matrix::from_packed(a.rows() + b.rows(), a.cols(), packed);
}

namespace detail {

// Forward elimination in place; returns pivot columns in row order.
// Pivot choice: first row at or below the current one with a 1 in the column.
inline std::vector<std::size_t> echelon(Gf2Matrix& m, Gf2Matrix* companion, bool reduced) {
  std::vector<std::size_t> pivots;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    std::size_t r = pivot_row;
    while (r < m.rows() && !m.get(r, col)) ++r;
    if (r == m.rows()) continue;
    m.swap_rows(r, pivot_row);
    if (companion) companion->swap_rows(r, pivot_row);
    const std::size_t start = reduced ? 0 : pivot_row + 1;
    for (std::size_t k = start; k < m.rows(); ++k) {
      if (k != pivot_row && m.get(k, col)) {
        m.xor_row_from(k, m, pivot_row);
        if (companion) companion->xor_row_from(k, *companion, pivot_row);
      }
    }
    pivots.push_back(col);
    ++pivot_row;
  }
  return pivots;
}

}  // namespace detail

inline std::size_t rank(const Gf2Matrix& a) {
  Gf2Matrix work = a;
  return detail::echelon(work, nullptr, false).size();
}

/// Gauss-Jordan inverse of a square matrix.
inline Gf2Matrix invert(const Gf2Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("cannot invert non-square " + a.shape());
  Gf2Matrix work = a;
  Gf2Matrix inv = Gf2Matrix::identity(a.rows());
  const auto pivots = detail::echelon(work, &inv, true);
  if (pivots.size() != a.rows()) {
    throw SingularMatrix("matrix " + a.shape() + " is singular (rank " + std::to_string(pivots.size()) + ")");
  }
  return inv;
}

/// X with a * X == I for a full-row-rank a (rows <= cols).
///
/// Row-reducing with tracked operations gives E * a = R in reduced echelon
/// form. Selecting the pivot columns yields X0 with R * X0 = I, so
/// a * (X0 * E) = E^-1 * R * X0 * E = I.
inline Gf2Matrix right_inverse(const Gf2Matrix& a) {
  if (a.rows() > a.cols()) throw NotFullRank("right inverse needs rows <= cols, got " + a.shape());
  Gf2Matrix work = a;
  Gf2Matrix ops = Gf2Matrix::identity(a.rows());
  const auto pivots = detail::echelon(work, &ops, true);
  if (pivots.size() != a.rows()) {
    throw NotFullRank("matrix " + a.shape() + " has rank " + std::to_string(pivots.size()));
  }
  Gf2Matrix select(a.cols(), a.rows());
  for (std::size_t j = 0; j < pivots.size(); ++j) select.set(pivots[j], j, true);
  return multiply(select, ops);
}

inline bool is_permutation(const Gf2Matrix& a) {
  if (a.rows() != a.cols()) return false;
  std::vector<std::uint8_t> col_seen(a.cols(), 0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::size_t ones = 0;
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (a.get(r, c)) {
        ++ones;
        if (col_seen[c]++) return false;
      }
    }
    if (ones != 1) return false;
  }
  return true;
}

// "GF2M" || be32 rows || be32 cols || packed payload
inline constexpr Magic kMatrixMagic = make_magic("GF2M");
inline constexpr std::size_t kMatrixHeaderSize = 12;

inline Bytes serialize(const Gf2Matrix& a) {
  Bytes out(kMatrixMagic.begin(), kMatrixMagic.end());
  out.reserve(kMatrixHeaderSize + a.packed().size());
  put_be32(out, static_cast<std::uint32_t>(a.rows()));
  put_be32(out, static_cast<std::uint32_t>(a.cols()));
  out.insert(out.end(), a.packed().begin(), a.packed().end());
  return out;
}

inline Gf2Matrix deserialize(ByteView in) {
  if (in.size() < kMatrixHeaderSize) throw TruncatedInput("GF2M header truncated");
  if (!std::equal(kMatrixMagic.begin(), kMatrixMagic.end(), in.begin())) throw BadMagic("expected magic 'GF2M'");
  const std::size_t rows = get_be32(in.subspan(4, 4));
  const std::size_t cols = get_be32(in.subspan(8, 4));
  if (rows == 0 || cols == 0) throw InvalidField("GF2M dimensions must be positive");
  const std::size_t payload = rows * ((cols + 7) / 8);
  const std::size_t available = in.size() - kMatrixHeaderSize;
  if (available < payload) throw TruncatedInput("GF2M payload truncated");
  if (available > payload) throw TrailingData("GF2M payload followed by extra octets");
  return Gf2Matrix::from_packed(rows, cols, in.subspan(kMatrixHeaderSize, payload));
}

}  // namespace pqcmc
