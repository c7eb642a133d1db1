#pragma once

// Octet helpers shared by the wire formats: big-endian integers, hex text,
// and the (tag, length, value) framing used by every container file.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pqcmc/errors.hpp"

namespace pqcmc {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline void put_be32(Bytes& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

inline void put_be64(Bytes& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

inline std::uint32_t get_be32(ByteView in) {
  if (in.size() < 4) throw TruncatedInput("need 4 octets for a 32-bit field");
  return (std::uint32_t{in[0]} << 24) | (std::uint32_t{in[1]} << 16) | (std::uint32_t{in[2]} << 8) |
         std::uint32_t{in[3]};
}

inline std::uint64_t get_be64(ByteView in) {
  if (in.size() < 8) throw TruncatedInput("need 8 octets for a 64-bit field");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 8; ++i) v = (v << 8) | in[i];
  return v;
}

inline Bytes be64_bytes(std::uint64_t v) {
  Bytes out;
  put_be64(out, v);
  return out;
}

inline Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

inline std::string to_hex(ByteView data) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0x0f]);
  }
  return out;
}

inline Bytes from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) throw InvalidArgument("hex string has odd length");
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = nibble(hex[i]);
    int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) throw InvalidArgument("invalid hex digit");
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

using Magic = std::array<std::uint8_t, 4>;

constexpr Magic make_magic(const char (&s)[5]) {
  return {static_cast<std::uint8_t>(s[0]), static_cast<std::uint8_t>(s[1]),
          static_cast<std::uint8_t>(s[2]), static_cast<std::uint8_t>(s[3])};
}

struct TlvField {
  std::uint8_t tag;
  ByteView value;
};

/// Builds `magic || (tag, be32 length, value)*`.
class TlvWriter {
 public:
  explicit TlvWriter(const Magic& magic) : out_(magic.begin(), magic.end()) {}

  TlvWriter& put(std::uint8_t tag, ByteView value) {
    out_.push_back(tag);
    put_be32(out_, static_cast<std::uint32_t>(value.size()));
    out_.insert(out_.end(), value.begin(), value.end());
    return *this;
  }

  TlvWriter& put(std::uint8_t tag, std::string_view value) {
    return put(tag, ByteView(reinterpret_cast<const std::uint8_t*>(value.data()), value.size()));
  }

  Bytes finish() && { return std::move(out_); }

 private:
  Bytes out_;
};

/// Splits a TLV container into fields after checking its magic. Only framing
/// is validated here; tag semantics belong to the caller.
inline std::vector<TlvField> parse_tlv(ByteView data, const Magic& magic) {
  if (data.size() < magic.size()) throw TruncatedInput("container shorter than its magic");
  for (std::size_t i = 0; i < magic.size(); ++i) {
    if (data[i] != magic[i]) {
      throw BadMagic("expected magic '" + std::string(magic.begin(), magic.end()) + "'");
    }
  }
  std::vector<TlvField> fields;
  std::size_t pos = magic.size();
  while (pos < data.size()) {
    if (data.size() - pos < 5) throw TruncatedInput("TLV header truncated");
    std::uint8_t tag = data[pos];
    std::uint32_t len = get_be32(data.subspan(pos + 1, 4));
    pos += 5;
    if (data.size() - pos < len) throw TruncatedInput("TLV value truncated");
    fields.push_back({tag, data.subspan(pos, len)});
    pos += len;
  }
  return fields;
}

/// Tag-ordered field lookup over a parsed container. Enforces strictly
/// increasing tags (which also rules out duplicates) and a known tag set.
class TlvFields {
 public:
  TlvFields(std::vector<TlvField> fields, std::span<const std::uint8_t> known_tags)
      : fields_(std::move(fields)) {
    int previous = -1;
    for (const auto& f : fields_) {
      bool known = false;
      for (auto t : known_tags) known = known || t == f.tag;
      if (!known) throw UnknownTag("unknown TLV tag " + std::to_string(f.tag));
      if (f.tag == previous) throw DuplicateTag("duplicate TLV tag " + std::to_string(f.tag));
      if (f.tag < previous) throw OutOfOrderTag("TLV tag " + std::to_string(f.tag) + " out of order");
      previous = f.tag;
    }
  }

  const TlvField* find(std::uint8_t tag) const {
    for (const auto& f : fields_) {
      if (f.tag == tag) return &f;
    }
    return nullptr;
  }

  ByteView require(std::uint8_t tag, std::string_view what) const {
    if (const auto* f = find(tag)) return f->value;
    throw MissingField("missing field '" + std::string(what) + "'");
  }

  const std::vector<TlvField>& all() const { return fields_; }

 private:
  std::vector<TlvField> fields_;
};

}  // namespace pqcmc
