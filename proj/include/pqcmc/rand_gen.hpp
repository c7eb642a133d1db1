#pragma once

// Seeded generation of invertible GF(2) matrices: the linear-time
// permutation-pair generator used for M_r and M_h, a dense scrambler
// construction with an analytic inverse, and a rejection-sampling baseline.

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "pqcmc/errors.hpp"
#include "pqcmc/gf2_matrix.hpp"
#include "pqcmc/prng.hpp"

namespace pqcmc {

template <class G>
concept WordGenerator = requires(G g) {
  { g.next_u64() } -> std::convertible_to<std::uint64_t>;
};

/// Pseudo-random order I of [0, size): one draw and one swap per index,
/// j = draw mod size. This is the whole O(size) part of the generator; the
/// permutation matrices are a rendering of I.
template <WordGenerator G>
std::vector<std::uint32_t> shuffled_order(G& gen, std::size_t size) {
  if (size == 0) throw InvalidArgument("permutation size must be positive");
  std::vector<std::uint32_t> order(size);
  std::iota(order.begin(), order.end(), 0u);
  for (std::size_t i = 0; i < size; ++i) {
    const auto j = static_cast<std::size_t>(gen.next_u64() % size);
    std::swap(order[i], order[j]);
  }
  return order;
}

inline std::vector<std::uint32_t> shuffled_order(std::uint64_t seed, std::size_t size) {
  SplitMix64 gen(seed);
  return shuffled_order(gen, size);
}

struct PermutationPair {
  Gf2Matrix m1;  // m1[i][order[i]] = 1
  Gf2Matrix m2;  // m2[order[i]][i] = 1, the inverse (and transpose) of m1
};

inline PermutationPair permutation_pair_from_order(const std::vector<std::uint32_t>& order) {
  const std::size_t n = order.size();
  PermutationPair pair{Gf2Matrix(n, n), Gf2Matrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    pair.m1.set(i, order[i], true);
    pair.m2.set(order[i], i, true);
  }
  return pair;
}

template <WordGenerator G>
PermutationPair permutation_pair(G& gen, std::size_t size) {
  return permutation_pair_from_order(shuffled_order(gen, size));
}

inline PermutationPair permutation_pair(std::uint64_t seed, std::size_t size) {
  SplitMix64 gen(seed);
  return permutation_pair(gen, size);
}

namespace detail {

// Fills columns [first_col, cols) of a row with generator output, eight
// octets per draw; earlier columns and padding bits are cleared.
inline void fill_random_bits(Gf2Matrix& m, std::size_t row, std::size_t first_col, SplitMix64& gen) {
  auto bytes = m.row(row);
  for (std::size_t i = 0; i < bytes.size(); i += 8) {
    const std::uint64_t word = gen.next_u64();
    for (std::size_t k = 0; k < 8 && i + k < bytes.size(); ++k) {
      bytes[i + k] = static_cast<std::uint8_t>(word >> (56 - 8 * k));
    }
  }
  for (std::size_t c = 0; c < first_col && c < m.cols(); ++c) m.set(row, c, false);
  if (const auto mask = detail::padding_mask(m.cols()); mask != 0) {
    bytes[bytes.size() - 1] = static_cast<std::uint8_t>(bytes[bytes.size() - 1] & ~mask);
  }
}

// Inverse of a unit upper-triangular matrix by back substitution:
// row i of the inverse = e_i + sum_{j > i, u(i,j) = 1} (row j of the inverse).
inline Gf2Matrix invert_unit_upper(const Gf2Matrix& u) {
  const std::size_t n = u.rows();
  Gf2Matrix inv = Gf2Matrix::identity(n);
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (u.get(i, j)) inv.xor_row_from(i, inv, j);
    }
  }
  return inv;
}

#if defined(__clang__)
#define PQCMC_SCALAR_LOOP _Pragma("clang loop vectorize(disable) interleave(disable)")
#else
#define PQCMC_SCALAR_LOOP
#endif

/// Rank by textbook Gaussian elimination, one octet per entry and one entry
/// per step. This is the classical cubic method the baseline stands for;
/// packed rows or SIMD lanes divide the cubic term by 64 or 32 and leave
/// per-row overhead dominant at the sizes the baseline is timed at.
#if defined(__GNUC__) && !defined(__clang__)
[[gnu::optimize("no-tree-vectorize")]]
#endif
inline std::size_t scalar_rank(const Gf2Matrix& a) {
  const std::size_t n = a.rows();
  const std::size_t c = a.cols();
  std::vector<std::uint8_t> e(n * c);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < c; ++k) e[r * c + k] = a.get(r, k);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < c && rank < n; ++col) {
    std::size_t p = rank;
    while (p < n && !e[p * c + col]) ++p;
    if (p == n) continue;
    if (p != rank)
      for (std::size_t k = col; k < c; ++k) std::swap(e[p * c + k], e[rank * c + k]);
    for (std::size_t r = rank + 1; r < n; ++r) {
      if (!e[r * c + col]) continue;
      PQCMC_SCALAR_LOOP
      for (std::size_t k = col; k < c; ++k) e[r * c + k] ^= e[rank * c + k];
    }
    ++rank;
  }
  return rank;
}

#undef PQCMC_SCALAR_LOOP

}  // namespace detail

/// Dense random invertible matrix M = U * W * P with U unit upper-triangular,
/// W unit lower-triangular and P a seeded permutation. Returns (M, M^-1), the
/// inverse assembled as P^T * W^-1 * U^-1.
inline std::pair<Gf2Matrix, Gf2Matrix> random_invertible(std::uint64_t seed, std::size_t n) {
  if (n == 0) throw InvalidArgument("matrix size must be positive");
  SplitMix64 gen(seed);
  Gf2Matrix upper = Gf2Matrix::identity(n);
  Gf2Matrix lower_t = Gf2Matrix::identity(n);  // W^T, upper unit triangular
  for (auto* tri : {&upper, &lower_t}) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      detail::fill_random_bits(*tri, i, i + 1, gen);
      tri->set(i, i, true);
    }
  }
  const auto perm = permutation_pair(gen.next_u64(), n);

  const Gf2Matrix lower = transpose(lower_t);
  const Gf2Matrix upper_inv = detail::invert_unit_upper(upper);
  // (W^T)^-1 = (W^-1)^T
  const Gf2Matrix lower_inv = transpose(detail::invert_unit_upper(lower_t));

  Gf2Matrix m = multiply(multiply(upper, lower), perm.m1);
  Gf2Matrix m_inv = multiply(multiply(perm.m2, lower_inv), upper_inv);
  return {std::move(m), std::move(m_inv)};
}

/// Straw-man generator: uniformly random matrices until one has full rank.
inline Gf2Matrix baseline_random_invertible(std::uint64_t seed, std::size_t n) {
  if (n == 0) throw InvalidArgument("matrix size must be positive");
  SplitMix64 gen(seed);
  while (true) {
    Gf2Matrix candidate(n, n);
    for (std::size_t r = 0; r < n; ++r) detail::fill_random_bits(candidate, r, 0, gen);
    if (detail::scalar_rank(candidate) == n) return candidate;
  }
}

}  // namespace pqcmc
