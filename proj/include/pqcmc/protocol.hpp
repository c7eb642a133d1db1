#pragma once

// Certificate issuance without signatures.
//
//   CA:        M_r = perm(seed_r), T = K3_CA^-1 K4_CA K1_CA^-1 M_r, B = T L_E
//   EE:        T = rows of B decrypted under the EE key, check L_CA T == M_r,
//              K1' = M_h L_CA T K1_E with inverse K1_E^-1 M_r^-1 M_h^-1
//   verifier:  Q = M_h L_CA B
//
// M_h is a permutation seeded from SHA-256(SHA-256(C_E) || SHA-256(C_CA)).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>

#include "pqcmc/bytes.hpp"
#include "pqcmc/certs.hpp"
#include "pqcmc/errors.hpp"
#include "pqcmc/gf2_matrix.hpp"
#include "pqcmc/mceliece.hpp"
#include "pqcmc/rand_gen.hpp"
#include "pqcmc/sha256.hpp"

namespace pqcmc {

struct CaContext {
  McElieceKeyPair keypair;
  Bytes ca_cert;  // canonical encoding of the CA self-descriptor
};

/// Root self-descriptor for a CA key: type root, zero issuer digest, the
/// CA public key in the matrix field. Deterministic in the keypair and info.
inline ImplicitCert ca_self_descriptor(const McElieceKeyPair& ca, ByteView info = {}) {
  ImplicitCert cert;
  cert.cert_type = CertType::kRoot;
  cert.param_set = ca.params.name;
  cert.info_e.assign(info.begin(), info.end());
  cert.reconstruction_b = ca.public_l;
  return cert;
}

inline CaContext make_ca_context(McElieceKeyPair keypair, ByteView info = {}) {
  Bytes cert = encode_cert(ca_self_descriptor(keypair, info));
  return {std::move(keypair), std::move(cert)};
}

struct IssuanceRequest {
  Gf2Matrix ee_public_l;
  Bytes info;
};

struct IssuanceResponse {
  std::uint64_t seed_r = 0;
  ImplicitCert cert;
};

struct ExpandedKeyPair {
  ParameterSet params;
  Gf2Matrix k1_new;      // M_h L_CA T K1_E
  Gf2Matrix k1_new_inv;  // K1_E^-1 M_r^-1 M_h^-1
  LinearCode code;       // inherited from the EE key
  Gf2Matrix k3;
  Gf2Matrix k3_inv;
  Gf2Matrix public_q;  // M_h L_CA B

  PublicKey public_key() const { return {params, public_q}; }
};

/// T = K3^-1 K4 K1^-1 M_r, the CA's matrix signature on M_r.
inline Gf2Matrix reconstruction_factor(const McElieceKeyPair& ca, const Gf2Matrix& m_r) { return sign(m_r, ca); }

/// Seed reuse is not detected; callers must supply a fresh seed_r per issuance.
inline IssuanceResponse ca_issue(const CaContext& ca, const IssuanceRequest& req, std::uint64_t seed_r,
                                 std::optional<Validity> validity = std::nullopt) {
  const auto& params = ca.keypair.params;
  if (req.ee_public_l.rows() != params.zeta1 || req.ee_public_l.cols() != params.zeta2) {
    throw DimensionError("EE public key is " + req.ee_public_l.shape() + ", CA parameter set '" + params.name +
                         "' expects " + Gf2Matrix::shape_string(params.zeta1, params.zeta2));
  }
  const Gf2Matrix m_r = permutation_pair(seed_r, params.zeta1).m1;
  const Gf2Matrix t = reconstruction_factor(ca.keypair, m_r);

  ImplicitCert cert;
  cert.cert_type = CertType::kImplicit;
  cert.issuer_digest = cert_digest(ca.ca_cert);
  cert.param_set = params.name;
  cert.info_e = req.info;
  cert.reconstruction_b = multiply(t, req.ee_public_l);
  cert.validity = validity;
  return {seed_r, std::move(cert)};
}

/// Permutation seeded by the first eight octets (big-endian) of
/// SHA-256(SHA-256(cert_e) || SHA-256(cert_ca)).
inline Gf2Matrix derive_mh(ByteView cert_e, ByteView cert_ca, std::size_t zeta1) {
  if (cert_e.empty() || cert_ca.empty()) throw InvalidArgument("certificate encodings must be nonempty");
  const Digest he = sha256(cert_e);
  const Digest hca = sha256(cert_ca);
  const Digest h = sha256({ByteView(he), ByteView(hca)});
  return permutation_pair(get_be64(h), zeta1).m1;
}

namespace detail {

inline void check_reconstruction_shape(const ImplicitCert& cert, const Gf2Matrix& ca_public_l) {
  const auto& b = cert.reconstruction_b;
  if (b.rows() != ca_public_l.cols() || b.cols() != ca_public_l.cols()) {
    throw MalformedReconstructionValue("reconstruction value is " + b.shape() + ", expected " +
                                       Gf2Matrix::shape_string(ca_public_l.cols(), ca_public_l.cols()));
  }
}

}  // namespace detail

/// Q = M_h L_CA B. Uses only public inputs.
inline Gf2Matrix reconstruct_public(const ImplicitCert& cert_e, ByteView ca_cert, const Gf2Matrix& ca_public_l) {
  detail::check_reconstruction_shape(cert_e, ca_public_l);
  const Gf2Matrix m_h = derive_mh(encode_cert(cert_e), ca_cert, ca_public_l.rows());
  return multiply(multiply(m_h, ca_public_l), cert_e.reconstruction_b);
}

inline ExpandedKeyPair ee_expand(const McElieceKeyPair& ee, const IssuanceResponse& resp, ByteView ca_cert,
                                 const Gf2Matrix& ca_public_l) {
  const std::size_t zeta1 = ee.params.zeta1;
  if (ca_public_l.rows() != zeta1 || ca_public_l.cols() != ee.params.zeta2) {
    throw DimensionError("CA public key " + ca_public_l.shape() + " does not match EE parameter set '" +
                         ee.params.name + "'");
  }
  const ImplicitCert& cert = resp.cert;
  detail::check_reconstruction_shape(cert, ca_public_l);
  if (cert.issuer_digest != cert_digest(ca_cert)) {
    throw IssuerValidationError("certificate issuer digest does not match the CA certificate");
  }

  // Each row of B is an errorless ciphertext row(T) L_E.
  Gf2Matrix t_recovered(1, 1);
  try {
    t_recovered = decrypt(cert.reconstruction_b, ee);
  } catch (const UncorrectableError& e) {
    throw IssuerValidationError(std::string("reconstruction value is not T L_E: ") + e.what());
  }
  // A code with t >= 1 silently corrects tampered rows; B must be exact.
  if (multiply(t_recovered, ee.public_l) != cert.reconstruction_b) {
    throw IssuerValidationError("reconstruction value is not T L_E");
  }

  const auto m_r = permutation_pair(resp.seed_r, zeta1);
  if (multiply(ca_public_l, t_recovered) != m_r.m1) {
    throw IssuerValidationError("L_CA T does not reproduce M_r");
  }

  const Bytes cert_bytes = encode_cert(cert);
  const Gf2Matrix m_h = derive_mh(cert_bytes, ca_cert, zeta1);
  const Gf2Matrix m_h_inv = transpose(m_h);
  const Gf2Matrix l_ca_t = multiply(ca_public_l, t_recovered);

  ExpandedKeyPair out{ee.params,
                      multiply(multiply(m_h, l_ca_t), ee.k1),
                      multiply(multiply(ee.k1_inv, m_r.m2), m_h_inv),
                      ee.code,
                      ee.k3,
                      ee.k3_inv,
                      multiply(multiply(m_h, ca_public_l), cert.reconstruction_b)};
  return out;
}

inline Gf2Matrix expanded_sign(const Gf2Matrix& m, const ExpandedKeyPair& key) {
  return sign_with(m, key.k1_new_inv, key.code, key.k3_inv);
}

inline DecryptOutcome expanded_decrypt_detailed(const Gf2Matrix& z, const ExpandedKeyPair& key) {
  return decrypt_with(z, key.k1_new_inv, key.code, key.k3_inv);
}

inline Gf2Matrix expanded_decrypt(const Gf2Matrix& z, const ExpandedKeyPair& key) {
  return expanded_decrypt_detailed(z, key).message;
}

}  // namespace pqcmc
