#pragma once

// Toy-scale elliptic-curve baseline: group law on y^2 = x^3 + ax + b over a
// small prime field, point compression, ECDSA and ECQV implicit
// certificates. Insecure by construction; only for parity tests.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "pqcmc/bytes.hpp"
#include "pqcmc/errors.hpp"
#include "pqcmc/sha256.hpp"

namespace pqcmc::ec {

using Scalar = std::int64_t;

struct EcPoint {
  bool infinity = true;
  Scalar x = 0;
  Scalar y = 0;

  static EcPoint at_infinity() { return {}; }
  static EcPoint affine(Scalar x, Scalar y) { return {false, x, y}; }

  friend bool operator==(const EcPoint&, const EcPoint&) = default;
};

inline std::string to_string(const EcPoint& p) {
  if (p.infinity) return "O";
  return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

inline Scalar mod(Scalar v, Scalar m) {
  v %= m;
  return v < 0 ? v + m : v;
}

inline Scalar pow_mod(Scalar base, Scalar exp, Scalar m) {
  Scalar result = 1 % m;
  base = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = result * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return result;
}

/// Inverse mod a prime via Fermat; zero has no inverse.
inline std::optional<Scalar> inv_mod(Scalar v, Scalar p) {
  v = mod(v, p);
  if (v == 0) return std::nullopt;
  return pow_mod(v, p - 2, p);
}

/// Square root mod an odd prime (Tonelli-Shanks), or nullopt for a non-residue.
inline std::optional<Scalar> sqrt_mod(Scalar v, Scalar p) {
  v = mod(v, p);
  if (v == 0) return Scalar{0};
  if (pow_mod(v, (p - 1) / 2, p) != 1) return std::nullopt;
  Scalar q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  Scalar z = 2;
  while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
  Scalar m = s;
  Scalar c = pow_mod(z, q, p);
  Scalar t = pow_mod(v, q, p);
  Scalar r = pow_mod(v, (q + 1) / 2, p);
  while (t != 1) {
    Scalar i = 0;
    Scalar tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    Scalar b = c;
    for (Scalar k = 0; k < m - i - 1; ++k) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

struct CurveParams {
  Scalar p;
  Scalar a;
  Scalar b;
  EcPoint g;
  Scalar n;  // order of g

  bool on_curve(const EcPoint& pt) const {
    if (pt.infinity) return true;
    if (pt.x < 0 || pt.x >= p || pt.y < 0 || pt.y >= p) return false;
    return mod(pt.y * pt.y - (pt.x * pt.x % p * pt.x + a * pt.x + b), p) == 0;
  }
};

/// p = 17, a = 2, b = 2, G = (5, 1), n = 19.
inline const CurveParams& toy_curve() {
  static const CurveParams curve{17, 2, 2, EcPoint::affine(5, 1), 19};
  return curve;
}

inline void require_on_curve(const CurveParams& c, const EcPoint& pt) {
  if (!c.on_curve(pt)) throw PointNotOnCurve("point " + to_string(pt) + " is not on the curve");
}

inline EcPoint negate(const CurveParams& c, const EcPoint& pt) {
  if (pt.infinity) return pt;
  return EcPoint::affine(pt.x, mod(-pt.y, c.p));
}

inline EcPoint point_add(const CurveParams& c, const EcPoint& p1, const EcPoint& p2) {
  require_on_curve(c, p1);
  require_on_curve(c, p2);
  if (p1.infinity) return p2;
  if (p2.infinity) return p1;
  if (p1.x == p2.x && mod(p1.y + p2.y, c.p) == 0) return EcPoint::at_infinity();
  Scalar slope;
  if (p1 == p2) {
    slope = mod((3 * p1.x % c.p * p1.x + c.a) * *inv_mod(2 * p1.y, c.p), c.p);
  } else {
    slope = mod((p2.y - p1.y) * *inv_mod(p2.x - p1.x, c.p), c.p);
  }
  const Scalar x3 = mod(slope * slope - p1.x - p2.x, c.p);
  const Scalar y3 = mod(slope * (p1.x - x3) - p1.y, c.p);
  return EcPoint::affine(x3, y3);
}

/// k * pt by double-and-add; k is reduced modulo nothing, negative k negates.
inline EcPoint scalar_mul(const CurveParams& c, Scalar k, const EcPoint& pt) {
  require_on_curve(c, pt);
  EcPoint base = k < 0 ? negate(c, pt) : pt;
  std::uint64_t e = static_cast<std::uint64_t>(k < 0 ? -k : k);
  EcPoint acc = EcPoint::at_infinity();
  while (e) {
    if (e & 1) acc = point_add(c, acc, base);
    base = point_add(c, base, base);
    e >>= 1;
  }
  return acc;
}

struct CompressedPoint {
  std::uint8_t tag;  // 0x02 for even y, 0x03 for odd y
  Scalar x;
  friend bool operator==(const CompressedPoint&, const CompressedPoint&) = default;
};

inline CompressedPoint compress(const CurveParams& c, const EcPoint& pt) {
  require_on_curve(c, pt);
  if (pt.infinity) throw NotCompressible("the point at infinity has no compressed form");
  return {static_cast<std::uint8_t>(0x02 | (pt.y & 1)), pt.x};
}

inline EcPoint decompress(const CurveParams& c, const CompressedPoint& cp) {
  if (cp.tag != 0x02 && cp.tag != 0x03) throw InvalidArgument("compressed point tag must be 0x02 or 0x03");
  if (cp.x < 0 || cp.x >= c.p) throw InvalidArgument("x coordinate out of range");
  const Scalar rhs = mod(cp.x * cp.x % c.p * cp.x + c.a * cp.x + c.b, c.p);
  auto y = sqrt_mod(rhs, c.p);
  if (!y) throw NonResidue("x = " + std::to_string(cp.x) + " gives a quadratic non-residue");
  Scalar yy = *y;
  if ((yy & 1) != (cp.tag & 1)) yy = mod(-yy, c.p);
  return EcPoint::affine(cp.x, yy);
}

// ECDSA with the naming used here: private key a, public key A = aG, nonce
// r, R = rG. s = (h + a x_R) / r mod n.

struct EcdsaSignature {
  EcPoint r_point;
  Scalar s;
};

inline EcdsaSignature ecdsa_sign(const CurveParams& c, Scalar h, Scalar priv, Scalar nonce) {
  if (nonce <= 0 || nonce >= c.n) throw InvalidArgument("nonce must lie in (0, n)");
  const EcPoint r_point = scalar_mul(c, nonce, c.g);
  if (r_point.infinity) throw RetryNeeded("R is the point at infinity");
  const Scalar x_r = mod(r_point.x, c.n);
  if (x_r == 0) throw RetryNeeded("x_R is 0 mod n");
  const auto r_inv = inv_mod(nonce, c.n);
  const Scalar s = mod((mod(h, c.n) + mod(priv, c.n) * x_r) % c.n * *r_inv, c.n);
  if (s == 0) throw RetryNeeded("s is 0 mod n");
  return {r_point, s};
}

/// Intermediate values of verification; accepted iff z == R.
struct EcdsaVerification {
  Scalar w;
  Scalar u;
  Scalar v;
  EcPoint z;
  bool accepted;
};

inline EcdsaVerification ecdsa_verify_detailed(const CurveParams& c, Scalar h, const EcdsaSignature& sig,
                                               const EcPoint& pub) {
  require_on_curve(c, pub);
  require_on_curve(c, sig.r_point);
  const auto w = inv_mod(sig.s, c.n);
  if (!w || sig.r_point.infinity) return {0, 0, 0, EcPoint::at_infinity(), false};
  const Scalar u = mod(h, c.n) * *w % c.n;
  const Scalar v = mod(sig.r_point.x, c.n) * *w % c.n;
  const EcPoint z = point_add(c, scalar_mul(c, u, c.g), scalar_mul(c, v, pub));
  return {*w, u, v, z, z == sig.r_point};
}

inline bool ecdsa_verify(const CurveParams& c, Scalar h, const EcdsaSignature& sig, const EcPoint& pub) {
  return ecdsa_verify_detailed(c, h, sig, pub).accepted;
}

/// SHA-256 of data reduced mod n. Toy-scale only.
inline Scalar hash_to_scalar(const CurveParams& c, ByteView data) {
  const Digest d = sha256(data);
  Scalar acc = 0;
  for (auto byte : d) acc = (acc * 256 + byte) % c.n;
  return acc;
}

// ECQV. EE key pair (a, A), CA key pair (c, C), CA nonce r.

struct EcqvIssuance {
  Bytes cert_bytes;    // encoding of (P, E); no signature
  EcPoint recon_point; // P = A + rG
  Scalar key_recon;    // b = h r + c mod n
};

/// tag || be64 x || E
inline Bytes encode_ecqv_cert(const CurveParams& c, const EcPoint& p, ByteView info) {
  const auto cp = compress(c, p);
  Bytes out{cp.tag};
  put_be64(out, static_cast<std::uint64_t>(cp.x));
  out.insert(out.end(), info.begin(), info.end());
  return out;
}

inline EcqvIssuance ecqv_issue(const CurveParams& c, const EcPoint& ee_pub, ByteView info, Scalar ca_priv,
                               Scalar nonce) {
  require_on_curve(c, ee_pub);
  if (nonce < 0 || nonce >= c.n) throw InvalidArgument("nonce must lie in [0, n)");
  const EcPoint p = point_add(c, ee_pub, scalar_mul(c, nonce, c.g));
  if (p.infinity) throw RetryNeeded("reconstruction point is the point at infinity");
  Bytes cert = encode_ecqv_cert(c, p, info);
  const Scalar h = hash_to_scalar(c, cert);
  const Scalar b = mod(h * nonce + ca_priv, c.n);
  return {std::move(cert), p, b};
}

struct EcqvKeys {
  Scalar q;    // h a + b
  EcPoint big_q;  // h P + C
};

/// q = h a + b, Q = h P + C for an explicit certificate hash h.
inline EcqvKeys ecqv_expand_with_hash(const CurveParams& c, Scalar h, Scalar ee_priv, Scalar key_recon,
                                      const EcPoint& recon_point, const EcPoint& ca_pub) {
  const Scalar q = mod(mod(h, c.n) * mod(ee_priv, c.n) + key_recon, c.n);
  const EcPoint big_q = point_add(c, scalar_mul(c, mod(h, c.n), recon_point), ca_pub);
  return {q, big_q};
}

inline EcqvKeys ecqv_expand(const CurveParams& c, Scalar ee_priv, const EcqvIssuance& iss, const EcPoint& ca_pub) {
  return ecqv_expand_with_hash(c, hash_to_scalar(c, iss.cert_bytes), ee_priv, iss.key_recon, iss.recon_point,
                               ca_pub);
}

/// Human-readable issuance and expansion transcript for fixed small keys.
inline std::string ecqv_demo_transcript(const CurveParams& c, Scalar ee_priv, Scalar ca_priv, Scalar nonce,
                                        ByteView info) {
  const EcPoint a_pub = scalar_mul(c, ee_priv, c.g);
  const EcPoint c_pub = scalar_mul(c, ca_priv, c.g);
  const auto iss = ecqv_issue(c, a_pub, info, ca_priv, nonce);
  const auto keys = ecqv_expand(c, ee_priv, iss, c_pub);
  const EcPoint check = scalar_mul(c, keys.q, c.g);
  std::ostringstream os;
  os << "curve     y^2 = x^3 + " << c.a << "x + " << c.b << " mod " << c.p << ", G = " << to_string(c.g)
     << ", n = " << c.n << '\n'
     << "EE        a = " << ee_priv << ", A = " << to_string(a_pub) << '\n'
     << "CA        c = " << ca_priv << ", C = " << to_string(c_pub) << '\n'
     << "nonce     r = " << nonce << '\n'
     << "P         " << to_string(iss.recon_point) << '\n'
     << "C_E       " << to_hex(iss.cert_bytes) << '\n'
     << "h         " << hash_to_scalar(c, iss.cert_bytes) << '\n'
     << "b         " << iss.key_recon << '\n'
     << "q         " << keys.q << '\n'
     << "Q         " << to_string(keys.big_q) << '\n'
     << "qG        " << to_string(check) << (check == keys.big_q ? "  (== Q)" : "  (MISMATCH)") << '\n';
  return os.str();
}

}  // namespace pqcmc::ec
