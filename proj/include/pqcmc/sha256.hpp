#pragma once

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <initializer_list>

#include "pqcmc/bytes.hpp"
#include "pqcmc/errors.hpp"

namespace pqcmc {

using Digest = std::array<std::uint8_t, 32>;

/// SHA-256 over the concatenation of `parts`.
inline Digest sha256(std::initializer_list<ByteView> parts) {
  Digest out{};
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) throw CryptoBackendError("EVP_MD_CTX_new failed");
  bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1;
  for (auto part : parts) ok = ok && EVP_DigestUpdate(ctx, part.data(), part.size()) == 1;
  unsigned int len = 0;
  ok = ok && EVP_DigestFinal_ex(ctx, out.data(), &len) == 1 && len == out.size();
  EVP_MD_CTX_free(ctx);
  if (!ok) throw CryptoBackendError("SHA-256 computation failed");
  return out;
}

inline Digest sha256(ByteView data) { return sha256({data}); }

}  // namespace pqcmc
