#pragma once

// File containers for keys and issuance messages. Each is a 4-octet magic
// followed by TLV fields in increasing tag order; matrices are embedded as
// GF2M blocks and every container starts with the parameter-set name.
//
//   PQCK  private key   params K1 K1_INV K2 K3 K3_INV K4 K5 L
//   PQCL  public key    params L
//   PQCX  expanded key  params K2 K3 K3_INV K4 K5 K1' K1'_INV Q
//   PQCR  request       params L info
//   PQCS  response      params seed_r cert

#include <array>
#include <optional>
#include <cstdint>
#include <string>
#include <utility>

#include "pqcmc/bytes.hpp"
#include "pqcmc/certs.hpp"
#include "pqcmc/errors.hpp"
#include "pqcmc/gf2_matrix.hpp"
#include "pqcmc/mceliece.hpp"
#include "pqcmc/protocol.hpp"

namespace pqcmc {

inline constexpr Magic kPrivateKeyMagic = make_magic("PQCK");
inline constexpr Magic kPublicKeyMagic = make_magic("PQCL");
inline constexpr Magic kExpandedKeyMagic = make_magic("PQCX");
inline constexpr Magic kRequestMagic = make_magic("PQCR");
inline constexpr Magic kResponseMagic = make_magic("PQCS");

namespace block {
inline constexpr std::uint8_t kParams = 0x01;
inline constexpr std::uint8_t kK1 = 0x11;
inline constexpr std::uint8_t kK1Inv = 0x12;
inline constexpr std::uint8_t kK2 = 0x13;
inline constexpr std::uint8_t kK3 = 0x14;
inline constexpr std::uint8_t kK3Inv = 0x15;
inline constexpr std::uint8_t kK4 = 0x16;
inline constexpr std::uint8_t kK5 = 0x17;
inline constexpr std::uint8_t kL = 0x18;
inline constexpr std::uint8_t kK1New = 0x19;
inline constexpr std::uint8_t kK1NewInv = 0x1a;
inline constexpr std::uint8_t kQ = 0x1b;
inline constexpr std::uint8_t kInfo = 0x20;
inline constexpr std::uint8_t kSeedR = 0x21;
inline constexpr std::uint8_t kCert = 0x22;
}  // namespace block

/// Leading four octets of a buffer as a magic value, if present.
inline std::optional<Magic> peek_magic(ByteView data) {
  if (data.size() < 4) return std::nullopt;
  return Magic{data[0], data[1], data[2], data[3]};
}

namespace detail {

inline Gf2Matrix read_block(const TlvFields& f, std::uint8_t tag, const char* name, std::size_t rows,
                            std::size_t cols) {
  Gf2Matrix m = deserialize(f.require(tag, name));
  if (m.rows() != rows || m.cols() != cols) {
    throw InvalidField(std::string("block ") + name + " is " + m.shape() + ", expected " +
                       Gf2Matrix::shape_string(rows, cols));
  }
  return m;
}

inline ParameterSet read_params(const TlvFields& f) {
  auto name = f.require(block::kParams, "params");
  return parameter_set(std::string(name.begin(), name.end()));
}

inline LinearCode read_code(const TlvFields& f, const ParameterSet& ps) {
  const std::size_t z1 = ps.zeta1;
  const std::size_t z2 = ps.zeta2;
  return {ps.family, ps.t, read_block(f, block::kK2, "K2", z1, z2), read_block(f, block::kK4, "K4", z2, z1),
          read_block(f, block::kK5, "K5", z2 - z1, z2)};
}

}  // namespace detail

inline Bytes write_private_key(const McElieceKeyPair& k) {
  TlvWriter w(kPrivateKeyMagic);
  w.put(block::kParams, k.params.name)
      .put(block::kK1, serialize(k.k1))
      .put(block::kK1Inv, serialize(k.k1_inv))
      .put(block::kK2, serialize(k.code.generator))
      .put(block::kK3, serialize(k.k3))
      .put(block::kK3Inv, serialize(k.k3_inv))
      .put(block::kK4, serialize(k.code.decoder))
      .put(block::kK5, serialize(k.code.parity_check))
      .put(block::kL, serialize(k.public_l));
  return std::move(w).finish();
}

inline McElieceKeyPair read_private_key(ByteView data) {
  static constexpr std::array<std::uint8_t, 9> tags = {block::kParams, block::kK1, block::kK1Inv,
                                                       block::kK2,     block::kK3, block::kK3Inv,
                                                       block::kK4,     block::kK5, block::kL};
  TlvFields f(parse_tlv(data, kPrivateKeyMagic), tags);
  const ParameterSet ps = detail::read_params(f);
  const std::size_t z1 = ps.zeta1;
  const std::size_t z2 = ps.zeta2;
  return {ps,
          detail::read_block(f, block::kK1, "K1", z1, z1),
          detail::read_block(f, block::kK1Inv, "K1_INV", z1, z1),
          detail::read_code(f, ps),
          detail::read_block(f, block::kK3, "K3", z2, z2),
          detail::read_block(f, block::kK3Inv, "K3_INV", z2, z2),
          detail::read_block(f, block::kL, "L", z1, z2)};
}

inline Bytes write_public_key(const PublicKey& pub) {
  TlvWriter w(kPublicKeyMagic);
  w.put(block::kParams, pub.params.name).put(block::kL, serialize(pub.l));
  return std::move(w).finish();
}

inline PublicKey read_public_key(ByteView data) {
  static constexpr std::array<std::uint8_t, 2> tags = {block::kParams, block::kL};
  TlvFields f(parse_tlv(data, kPublicKeyMagic), tags);
  const ParameterSet ps = detail::read_params(f);
  return {ps, detail::read_block(f, block::kL, "L", ps.zeta1, ps.zeta2)};
}

inline Bytes write_expanded_key(const ExpandedKeyPair& k) {
  TlvWriter w(kExpandedKeyMagic);
  w.put(block::kParams, k.params.name)
      .put(block::kK2, serialize(k.code.generator))
      .put(block::kK3, serialize(k.k3))
      .put(block::kK3Inv, serialize(k.k3_inv))
      .put(block::kK4, serialize(k.code.decoder))
      .put(block::kK5, serialize(k.code.parity_check))
      .put(block::kK1New, serialize(k.k1_new))
      .put(block::kK1NewInv, serialize(k.k1_new_inv))
      .put(block::kQ, serialize(k.public_q));
  return std::move(w).finish();
}

inline ExpandedKeyPair read_expanded_key(ByteView data) {
  static constexpr std::array<std::uint8_t, 9> tags = {block::kParams, block::kK2,    block::kK3,
                                                       block::kK3Inv,  block::kK4,    block::kK5,
                                                       block::kK1New,  block::kK1NewInv, block::kQ};
  TlvFields f(parse_tlv(data, kExpandedKeyMagic), tags);
  const ParameterSet ps = detail::read_params(f);
  const std::size_t z1 = ps.zeta1;
  const std::size_t z2 = ps.zeta2;
  return {ps,
          detail::read_block(f, block::kK1New, "K1'", z1, z1),
          detail::read_block(f, block::kK1NewInv, "K1'_INV", z1, z1),
          detail::read_code(f, ps),
          detail::read_block(f, block::kK3, "K3", z2, z2),
          detail::read_block(f, block::kK3Inv, "K3_INV", z2, z2),
          detail::read_block(f, block::kQ, "Q", z1, z2)};
}

inline Bytes write_request(const ParameterSet& ps, const IssuanceRequest& req) {
  TlvWriter w(kRequestMagic);
  w.put(block::kParams, ps.name).put(block::kL, serialize(req.ee_public_l)).put(block::kInfo, req.info);
  return std::move(w).finish();
}

inline std::pair<ParameterSet, IssuanceRequest> read_request(ByteView data) {
  static constexpr std::array<std::uint8_t, 3> tags = {block::kParams, block::kL, block::kInfo};
  TlvFields f(parse_tlv(data, kRequestMagic), tags);
  const ParameterSet ps = detail::read_params(f);
  auto info = f.require(block::kInfo, "info");
  return {ps, IssuanceRequest{detail::read_block(f, block::kL, "L", ps.zeta1, ps.zeta2), Bytes(info.begin(), info.end())}};
}

inline Bytes write_response(const IssuanceResponse& resp) {
  TlvWriter w(kResponseMagic);
  w.put(block::kParams, resp.cert.param_set)
      .put(block::kSeedR, be64_bytes(resp.seed_r))
      .put(block::kCert, encode_cert(resp.cert));
  return std::move(w).finish();
}

inline IssuanceResponse read_response(ByteView data) {
  static constexpr std::array<std::uint8_t, 3> tags = {block::kParams, block::kSeedR, block::kCert};
  TlvFields f(parse_tlv(data, kResponseMagic), tags);
  auto seed = f.require(block::kSeedR, "seed_r");
  if (seed.size() != 8) throw InvalidField("seed_r must be 8 octets");
  IssuanceResponse resp{get_be64(seed), decode_cert(f.require(block::kCert, "cert"))};
  auto name = f.require(block::kParams, "params");
  if (resp.cert.param_set != std::string(name.begin(), name.end())) {
    throw InvalidField("response parameter set does not match its certificate");
  }
  return resp;
}

}  // namespace pqcmc
