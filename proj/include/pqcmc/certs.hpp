#pragma once

// Implicit certificate container, digests, and the length arithmetic for
// keys, reconstruction values and signatures.
//
// Wire format: "PQCC" followed by (tag, be32 length, value) fields in
// strictly increasing tag order. There is no signature field.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pqcmc/bytes.hpp"
#include "pqcmc/errors.hpp"
#include "pqcmc/gf2_matrix.hpp"
#include "pqcmc/sha256.hpp"

namespace pqcmc {

enum class CertType : std::uint8_t {
  kImplicit = 1,
  kRoot = 2,  // CA self-descriptor; the matrix field holds the CA public key
};

struct Validity {
  std::uint64_t not_before = 0;
  std::uint64_t not_after = 0;
  friend bool operator==(const Validity&, const Validity&) = default;
};

struct ImplicitCert {
  std::uint32_t version = 1;
  CertType cert_type = CertType::kImplicit;
  Digest issuer_digest{};
  std::string param_set;
  Bytes info_e;
  Gf2Matrix reconstruction_b{1, 1};
  std::optional<Validity> validity;

  friend bool operator==(const ImplicitCert&, const ImplicitCert&) = default;
};

namespace cert_tag {
inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::uint8_t kType = 0x02;
inline constexpr std::uint8_t kIssuer = 0x03;
inline constexpr std::uint8_t kParamSet = 0x04;
inline constexpr std::uint8_t kInfo = 0x05;
inline constexpr std::uint8_t kReconstruction = 0x06;
inline constexpr std::uint8_t kValidity = 0x07;
inline constexpr std::array<std::uint8_t, 7> kAll = {kVersion, kType,           kIssuer,  kParamSet,
                                                     kInfo,    kReconstruction, kValidity};
}  // namespace cert_tag

inline constexpr Magic kCertMagic = make_magic("PQCC");

inline Bytes encode_cert(const ImplicitCert& cert) {
  Bytes version;
  put_be32(version, cert.version);
  const std::uint8_t type = static_cast<std::uint8_t>(cert.cert_type);
  TlvWriter w(kCertMagic);
  w.put(cert_tag::kVersion, version)
      .put(cert_tag::kType, ByteView(&type, 1))
      .put(cert_tag::kIssuer, cert.issuer_digest)
      .put(cert_tag::kParamSet, cert.param_set)
      .put(cert_tag::kInfo, cert.info_e)
      .put(cert_tag::kReconstruction, serialize(cert.reconstruction_b));
  if (cert.validity) {
    Bytes v;
    put_be64(v, cert.validity->not_before);
    put_be64(v, cert.validity->not_after);
    w.put(cert_tag::kValidity, v);
  }
  return std::move(w).finish();
}

inline ImplicitCert decode_cert(ByteView octets) {
  TlvFields fields(parse_tlv(octets, kCertMagic), cert_tag::kAll);
  ImplicitCert cert;

  auto version = fields.require(cert_tag::kVersion, "version");
  if (version.size() != 4) throw InvalidField("version must be 4 octets");
  cert.version = get_be32(version);

  auto type = fields.require(cert_tag::kType, "type");
  if (type.size() != 1 || (type[0] != 1 && type[0] != 2)) throw InvalidField("invalid certificate type");
  cert.cert_type = static_cast<CertType>(type[0]);

  auto issuer = fields.require(cert_tag::kIssuer, "issuer");
  if (issuer.size() != cert.issuer_digest.size()) throw InvalidField("issuer digest must be 32 octets");
  std::copy(issuer.begin(), issuer.end(), cert.issuer_digest.begin());

  auto params = fields.require(cert_tag::kParamSet, "param_set");
  cert.param_set.assign(params.begin(), params.end());

  auto info = fields.require(cert_tag::kInfo, "info");
  cert.info_e.assign(info.begin(), info.end());

  cert.reconstruction_b = deserialize(fields.require(cert_tag::kReconstruction, "reconstruction"));

  if (const auto* v = fields.find(cert_tag::kValidity)) {
    if (v->value.size() != 16) throw InvalidField("validity must be 16 octets");
    cert.validity = Validity{get_be64(v->value), get_be64(v->value.subspan(8))};
  }
  return cert;
}

/// SHA-256 of a canonical certificate encoding.
inline Digest cert_digest(ByteView octets) { return sha256(octets); }

struct LengthRow {
  std::size_t zeta1 = 0;
  std::size_t zeta2 = 0;
  std::uint64_t l_bits = 0;  // zeta1 * zeta2
  std::uint64_t b_bits = 0;  // zeta2^2
  std::uint64_t s_bits = 0;  // zeta2
  std::uint64_t l_kb = 0;
  std::uint64_t b_kb = 0;
  std::uint64_t s_bytes = 0;

  double l_bytes() const { return static_cast<double>(l_bits) / 8.0; }
  double b_bytes() const { return static_cast<double>(b_bits) / 8.0; }
};

struct LengthReport {
  std::vector<LengthRow> rows;

  /// Aligned table: (zeta1, zeta2) | L(E) | B | s.
  std::string to_text() const {
    std::ostringstream os;
    os << std::left << std::setw(16) << "(zeta1, zeta2)" << std::right << std::setw(14) << "length of L(E)"
       << std::setw(14) << "length of B" << std::setw(14) << "length of s" << '\n';
    for (const auto& r : rows) {
      std::ostringstream dims;
      dims << '(' << r.zeta1 << ", " << r.zeta2 << ')';
      os << std::left << std::setw(16) << dims.str() << std::right << std::setw(11) << r.l_kb << " KB"
         << std::setw(11) << r.b_kb << " KB" << std::setw(8) << r.s_bytes << " bytes" << '\n';
    }
    return os.str();
  }

  std::string to_kv() const {
    std::ostringstream os;
    for (const auto& r : rows) {
      os << "zeta1=" << r.zeta1 << " zeta2=" << r.zeta2 << " l_bits=" << r.l_bits << " b_bits=" << r.b_bits
         << " s_bits=" << r.s_bits << " l_kb=" << r.l_kb << " b_kb=" << r.b_kb << " s_bytes=" << r.s_bytes << '\n';
    }
    return os.str();
  }
};

/// Raw payload sizes. KB = 1024 octets; kilobytes and signature octets are
/// rounded half-up to the nearest integer.
inline LengthRow length_row(std::size_t zeta1, std::size_t zeta2) {
  LengthRow r;
  r.zeta1 = zeta1;
  r.zeta2 = zeta2;
  r.l_bits = std::uint64_t{zeta1} * zeta2;
  r.b_bits = std::uint64_t{zeta2} * zeta2;
  r.s_bits = zeta2;
  constexpr std::uint64_t kBitsPerKb = 8 * 1024;
  r.l_kb = (r.l_bits + kBitsPerKb / 2) / kBitsPerKb;
  r.b_kb = (r.b_bits + kBitsPerKb / 2) / kBitsPerKb;
  r.s_bytes = (r.s_bits + 4) / 8;
  return r;
}

inline LengthReport length_report(const std::vector<std::pair<std::size_t, std::size_t>>& params) {
  LengthReport report;
  for (auto [z1, z2] : params) report.rows.push_back(length_row(z1, z2));
  return report;
}

/// NIST P-256 certificate arithmetic: point encodings and what an implicit
/// certificate saves over an explicit one.
struct EccCertSavings {
  std::size_t coordinate_bytes;
  std::size_t uncompressed_point;
  std::size_t compressed_point;
  std::size_t compression_savings;
  std::size_t signature_compressed;  // compressed R plus scalar s
  std::size_t explicit_total;        // VKI + signature
  std::size_t implicit_total;        // VKI only
  std::size_t implicit_savings;
};

inline constexpr EccCertSavings ecc_cert_savings() {
  constexpr std::size_t coord = 32;  // 256-bit field
  constexpr std::size_t tag = 1;
  constexpr std::size_t uncompressed = tag + 2 * coord;
  constexpr std::size_t compressed = tag + coord;
  constexpr std::size_t signature = compressed + coord;
  constexpr std::size_t explicit_total = compressed + signature;
  constexpr std::size_t implicit_total = compressed + 0;
  return {coord,     uncompressed,   compressed,     uncompressed - compressed,
          signature, explicit_total, implicit_total, explicit_total - implicit_total};
}

}  // namespace pqcmc
