#pragma once

// Shared helpers for the test binaries: random matrices and plain-loop
// reference implementations that never touch the packed representation.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pqcmc/gf2_matrix.hpp"
#include "pqcmc/prng.hpp"

namespace pqcmc::testing {

using BitGrid = std::vector<std::vector<int>>;

inline BitGrid to_grid(const Gf2Matrix& m) {
  BitGrid g(m.rows(), std::vector<int>(m.cols(), 0));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) g[r][c] = m.get(r, c) ? 1 : 0;
  return g;
}

inline Gf2Matrix from_grid(const BitGrid& g) {
  Gf2Matrix m(g.size(), g.at(0).size());
  for (std::size_t r = 0; r < g.size(); ++r)
    for (std::size_t c = 0; c < g[r].size(); ++c) m.set(r, c, g[r][c] != 0);
  return m;
}

inline Gf2Matrix random_matrix(std::size_t rows, std::size_t cols, SplitMix64& gen) {
  Gf2Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, gen.next_u64() & 1);
  return m;
}

// Triple loop, entry (i,j) = XOR_k a(i,k) b(k,j).
inline BitGrid naive_multiply(const BitGrid& a, const BitGrid& b) {
  BitGrid out(a.size(), std::vector<int>(b.at(0).size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b[0].size(); ++j) {
      int acc = 0;
      for (std::size_t k = 0; k < b.size(); ++k) acc ^= a[i][k] & b[k][j];
      out[i][j] = acc;
    }
  return out;
}

// Rank by elimination on an int grid.
inline std::size_t naive_rank(BitGrid g) {
  std::size_t rank = 0;
  const std::size_t rows = g.size();
  const std::size_t cols = rows ? g[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && !g[p][c]) ++p;
    if (p == rows) continue;
    std::swap(g[p], g[rank]);
    for (std::size_t r = 0; r < rows; ++r)
      if (r != rank && g[r][c])
        for (std::size_t k = 0; k < cols; ++k) g[r][k] ^= g[rank][k];
    ++rank;
  }
  return rank;
}

inline Gf2Matrix random_invertible_by_rejection(std::size_t n, SplitMix64& gen) {
  while (true) {
    Gf2Matrix m = random_matrix(n, n, gen);
    if (naive_rank(to_grid(m)) == n) return m;
  }
}

inline Gf2Matrix column_of_bits(std::uint64_t bits, std::size_t height) {
  Gf2Matrix m(height, 1);
  for (std::size_t i = 0; i < height; ++i) m.set(i, 0, (bits >> (height - 1 - i)) & 1);
  return m;
}

inline Gf2Matrix row_of_bits(std::uint64_t bits, std::size_t width) {
  Gf2Matrix m(1, width);
  for (std::size_t i = 0; i < width; ++i) m.set(0, i, (bits >> (width - 1 - i)) & 1);
  return m;
}

}  // namespace pqcmc::testing
