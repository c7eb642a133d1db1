#pragma once

// McEliece-style keys over a pluggable linear code, row-vector encryption
// (z = m L + e) and column-vector matrix signatures (s = K3^-1 K4 K1^-1 m).
//
// Two code families are provided. errorless-systematic (t = 0) is what the
// certificate protocol uses; hamming-7-4 (t = 1) exercises syndrome decoding.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pqcmc/bytes.hpp"
#include "pqcmc/errors.hpp"
#include "pqcmc/gf2_matrix.hpp"
#include "pqcmc/prng.hpp"
#include "pqcmc/rand_gen.hpp"

namespace pqcmc {

enum class CodeFamily { kErrorlessSystematic, kHamming74 };

inline const char* family_name(CodeFamily f) {
  return f == CodeFamily::kHamming74 ? "hamming-7-4" : "errorless-systematic";
}

struct ParameterSet {
  std::string name;
  std::size_t zeta1 = 0;  // message length in bits
  std::size_t zeta2 = 0;  // codeword length in bits
  CodeFamily family = CodeFamily::kErrorlessSystematic;
  std::size_t t = 0;  // correctable errors

  friend bool operator==(const ParameterSet&, const ParameterSet&) = default;
};

inline void validate(const ParameterSet& ps) {
  if (ps.zeta1 == 0 || ps.zeta1 >= ps.zeta2) {
    throw InvalidArgument("parameter set '" + ps.name + "' needs 0 < zeta1 < zeta2");
  }
  if (ps.family == CodeFamily::kErrorlessSystematic && ps.t != 0) {
    throw InvalidArgument("errorless-systematic codes have t = 0");
  }
  if (ps.family == CodeFamily::kHamming74 && (ps.zeta1 != 4 || ps.zeta2 != 7 || ps.t != 1)) {
    throw InvalidArgument("hamming-7-4 requires (zeta1, zeta2, t) = (4, 7, 1)");
  }
}

inline ParameterSet errorless_set(std::size_t zeta1, std::size_t zeta2) {
  return {"mceliece-" + std::to_string(zeta1) + "-" + std::to_string(zeta2), zeta1, zeta2,
          CodeFamily::kErrorlessSystematic, 0};
}

/// The (zeta1, zeta2) rows of the certificate-length table, in table order.
inline const std::vector<ParameterSet>& length_table_presets() {
  static const std::vector<ParameterSet> presets = {
      errorless_set(524, 1024),  errorless_set(1219, 1702), errorless_set(1696, 2048),
      errorless_set(1751, 2048), errorless_set(2384, 3178), errorless_set(3604, 4096),
      errorless_set(5208, 6944),
  };
  return presets;
}

/// Every named preset: the table rows plus the two small test sets.
inline std::vector<ParameterSet> parameter_presets() {
  std::vector<ParameterSet> all = {
      {"small-12-28", 12, 28, CodeFamily::kErrorlessSystematic, 0},
      {"hamming-7-4", 4, 7, CodeFamily::kHamming74, 1},
  };
  const auto& table = length_table_presets();
  all.insert(all.end(), table.begin(), table.end());
  return all;
}

inline ParameterSet parameter_set(std::string_view name) {
  for (auto& ps : parameter_presets()) {
    if (ps.name == name) return ps;
  }
  throw UnknownParameterSet("unknown parameter set '" + std::string(name) + "'");
}

struct DecodeOutcome {
  Gf2Matrix messages;             // k x zeta1
  std::size_t corrected_bits = 0; // rows whose syndrome was nonzero and got a correction
};

/// Generator K2, right inverse K4 (K2 K4 = I) and parity check K5
/// (K2 K5^T = 0), with single-error syndrome decoding when t >= 1.
struct LinearCode {
  CodeFamily family;
  std::size_t t;
  Gf2Matrix generator;     // K2, zeta1 x zeta2
  Gf2Matrix decoder;       // K4, zeta2 x zeta1
  Gf2Matrix parity_check;  // K5, (zeta2 - zeta1) x zeta2

  std::size_t message_bits() const { return generator.rows(); }
  std::size_t codeword_bits() const { return generator.cols(); }

  /// Syndromes of each row of `words`, one row per word.
  Gf2Matrix syndromes(const Gf2Matrix& words) const { return multiply(words, transpose(parity_check)); }

  /// Decodes each row of `words` (k x zeta2) to a message row. A nonzero
  /// syndrome is corrected when it equals a column of K5 and t >= 1;
  /// otherwise UncorrectableError.
  DecodeOutcome decode(Gf2Matrix words) const {
    if (words.cols() != codeword_bits()) {
      throw DimensionError("codeword width " + std::to_string(words.cols()) + " != " +
                           std::to_string(codeword_bits()));
    }
    const Gf2Matrix columns = transpose(parity_check);  // row j = column j of K5
    const Gf2Matrix synd = multiply(words, columns);
    std::size_t corrected = 0;
    for (std::size_t r = 0; r < words.rows(); ++r) {
      if (synd.row_is_zero(r)) continue;
      if (t == 0) throw UncorrectableError("nonzero syndrome in row " + std::to_string(r) + " of an errorless code");
      const auto s = synd.row(r);
      std::size_t j = 0;
      while (j < columns.rows() && !std::equal(s.begin(), s.end(), columns.row(j).begin())) ++j;
      if (j == columns.rows()) throw UncorrectableError("syndrome in row " + std::to_string(r) + " matches no single error");
      words.flip(r, j);
      ++corrected;
    }
    return {multiply(words, decoder), corrected};
  }
};

namespace detail {

inline LinearCode hamming74_code() {
  Gf2Matrix g{{1, 0, 0, 0, 1, 1, 0},
              {0, 1, 0, 0, 1, 0, 1},
              {0, 0, 1, 0, 0, 1, 1},
              {0, 0, 0, 1, 1, 1, 1}};
  Gf2Matrix h{{1, 1, 0, 1, 1, 0, 0},
              {1, 0, 1, 1, 0, 1, 0},
              {0, 1, 1, 1, 0, 0, 1}};
  Gf2Matrix k4 = right_inverse(g);
  return {CodeFamily::kHamming74, 1, std::move(g), std::move(k4), std::move(h)};
}

// K2 = [I | P] with every row of P nonzero, so each single-bit error has a
// nonzero syndrome. K4 = [I ; 0], K5 = [P^T | I].
inline LinearCode systematic_code(std::size_t zeta1, std::size_t zeta2, SplitMix64& gen) {
  const std::size_t redundancy = zeta2 - zeta1;
  Gf2Matrix parity(zeta1, redundancy);
  for (std::size_t r = 0; r < zeta1; ++r) {
    do {
      fill_random_bits(parity, r, 0, gen);
    } while (parity.row_is_zero(r));
  }
  Gf2Matrix k2 = hstack(Gf2Matrix::identity(zeta1), parity);
  Gf2Matrix k4 = vstack(Gf2Matrix::identity(zeta1), Gf2Matrix(redundancy, zeta1));
  Gf2Matrix k5 = hstack(transpose(parity), Gf2Matrix::identity(redundancy));
  return {CodeFamily::kErrorlessSystematic, 0, std::move(k2), std::move(k4), std::move(k5)};
}

}  // namespace detail

inline LinearCode make_code(const ParameterSet& ps, SplitMix64& gen) {
  validate(ps);
  if (ps.family == CodeFamily::kHamming74) return detail::hamming74_code();
  return detail::systematic_code(ps.zeta1, ps.zeta2, gen);
}

struct PublicKey {
  ParameterSet params;
  Gf2Matrix l;  // zeta1 x zeta2
};

struct McElieceKeyPair {
  ParameterSet params;
  Gf2Matrix k1;      // scrambler, zeta1 x zeta1
  Gf2Matrix k1_inv;
  LinearCode code;   // K2, K4, K5
  Gf2Matrix k3;      // permutation, zeta2 x zeta2
  Gf2Matrix k3_inv;
  Gf2Matrix public_l;  // K1 K2 K3

  PublicKey public_key() const { return {params, public_l}; }
};

/// Deterministic in (params, seed).
inline McElieceKeyPair keygen(const ParameterSet& params, std::uint64_t seed) {
  validate(params);
  SplitMix64 gen(seed);
  auto [k1, k1_inv] = random_invertible(gen.next_u64(), params.zeta1);
  auto perm = permutation_pair(gen.next_u64(), params.zeta2);
  LinearCode code = make_code(params, gen);
  Gf2Matrix l = multiply(multiply(k1, code.generator), perm.m1);
  return {params, std::move(k1), std::move(k1_inv), std::move(code), std::move(perm.m1), std::move(perm.m2),
          std::move(l)};
}

/// A 1 x n row of Hamming weight exactly t, positions drawn by a partial
/// Fisher-Yates shuffle.
inline Gf2Matrix random_error_row(std::size_t n, std::size_t t, SplitMix64& gen) {
  if (t > n) throw InvalidArgument("error weight exceeds codeword length");
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[i] = i;
  Gf2Matrix e(1, n);
  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(gen.next_u64() % (n - i));
    std::swap(pos[i], pos[j]);
    e.set(0, pos[i], true);
  }
  return e;
}

/// z = m L + e for each row of m (k x zeta1). Error rows are drawn in row
/// order from `gen`.
inline Gf2Matrix encrypt(const Gf2Matrix& m, const Gf2Matrix& l, std::size_t t, SplitMix64& gen) {
  if (m.cols() != l.rows()) {
    throw DimensionError("message width " + std::to_string(m.cols()) + " != key rows " + std::to_string(l.rows()));
  }
  Gf2Matrix z = multiply(m, l);
  if (t > 0) {
    for (std::size_t r = 0; r < z.rows(); ++r) z.xor_row_from(r, random_error_row(z.cols(), t, gen), 0);
  }
  return z;
}

inline Gf2Matrix encrypt(const Gf2Matrix& m, const PublicKey& pub, SplitMix64& gen) {
  return encrypt(m, pub.l, pub.params.t, gen);
}

struct DecryptOutcome {
  Gf2Matrix message;
  std::size_t corrected_bits = 0;
};

/// f(z K3^-1) K4 K1^-1, written against the individual private factors so
/// expanded keys can reuse it with their own scrambler inverse.
inline DecryptOutcome decrypt_with(const Gf2Matrix& z, const Gf2Matrix& k1_inv, const LinearCode& code,
                                   const Gf2Matrix& k3_inv) {
  if (z.cols() != k3_inv.rows()) {
    throw DimensionError("ciphertext width " + std::to_string(z.cols()) + " != " + std::to_string(k3_inv.rows()));
  }
  auto decoded = code.decode(multiply(z, k3_inv));
  return {multiply(decoded.messages, k1_inv), decoded.corrected_bits};
}

inline DecryptOutcome decrypt_detailed(const Gf2Matrix& z, const McElieceKeyPair& key) {
  return decrypt_with(z, key.k1_inv, key.code, key.k3_inv);
}

inline Gf2Matrix decrypt(const Gf2Matrix& z, const McElieceKeyPair& key) {
  return decrypt_detailed(z, key).message;
}

/// K3^-1 K4 K1^-1 m for m of height zeta1 (a column vector or a matrix).
inline Gf2Matrix sign_with(const Gf2Matrix& m, const Gf2Matrix& k1_inv, const LinearCode& code,
                           const Gf2Matrix& k3_inv) {
  if (m.rows() != k1_inv.cols()) {
    throw DimensionError("message height " + std::to_string(m.rows()) + " != " + std::to_string(k1_inv.cols()));
  }
  return multiply(k3_inv, multiply(code.decoder, multiply(k1_inv, m)));
}

inline Gf2Matrix sign(const Gf2Matrix& m, const McElieceKeyPair& key) {
  return sign_with(m, key.k1_inv, key.code, key.k3_inv);
}

/// L s; the caller compares the result with the expected message.
inline Gf2Matrix verify(const Gf2Matrix& s, const Gf2Matrix& l) {
  if (s.rows() != l.cols()) {
    throw DimensionError("signature height " + std::to_string(s.rows()) + " != " + std::to_string(l.cols()));
  }
  return multiply(l, s);
}

/// First zeta1 bits of the digest, MSB-first, as a zeta1 x 1 column.
/// Missing bits are zero.
inline Gf2Matrix hash_to_message(ByteView digest, std::size_t zeta1) {
  if (digest.empty()) throw InvalidArgument("digest must be nonempty");
  Gf2Matrix m(zeta1, 1);
  for (std::size_t i = 0; i < zeta1 && i / 8 < digest.size(); ++i) {
    m.set(i, 0, (digest[i / 8] >> (7 - i % 8)) & 1u);
  }
  return m;
}

}  // namespace pqcmc
