// Issue, expand and reconstruct one implicit certificate in-process, then
// sign and encrypt under the expanded key.

#include <iostream>

#include "pqcmc/pqcmc.hpp"

using namespace pqcmc;

int main() {
  const ParameterSet ps = parameter_set("small-12-28");

  const CaContext ca = make_ca_context(keygen(ps, 1));
  const McElieceKeyPair ee = keygen(ps, 2);
  std::cout << "parameter set   " << ps.name << " (zeta1=" << ps.zeta1 << ", zeta2=" << ps.zeta2 << ")\n";
  std::cout << "CA cert digest  " << to_hex(cert_digest(ca.ca_cert)) << '\n';

  const IssuanceResponse resp = ca_issue(ca, {ee.public_l, to_bytes("obu-0042")}, 0x5eed);
  const Bytes cert = encode_cert(resp.cert);
  std::cout << "certificate     " << cert.size() << " octets, B is " << resp.cert.reconstruction_b.shape() << '\n';

  const ExpandedKeyPair mine = ee_expand(ee, resp, ca.ca_cert, ca.keypair.public_l);
  const Gf2Matrix q = reconstruct_public(decode_cert(cert), ca.ca_cert, ca.keypair.public_l);
  std::cout << "Q matches       " << (q == mine.public_q ? "yes" : "no") << '\n';

  const Gf2Matrix m = hash_to_message(sha256(to_bytes("brake warning")), ps.zeta1);
  const Gf2Matrix s = expanded_sign(m, mine);
  std::cout << "signature       " << (verify(s, q) == m ? "verifies under Q" : "REJECTED") << '\n';

  SplitMix64 gen(7);
  const Gf2Matrix plain = transpose(m);
  const Gf2Matrix z = encrypt(plain, PublicKey{ps, q}, gen);
  std::cout << "decryption      " << (expanded_decrypt(z, mine) == plain ? "round-trips" : "FAILED") << '\n';

  auto tampered = resp;
  tampered.cert.reconstruction_b.flip(0, 0);
  try {
    ee_expand(ee, tampered, ca.ca_cert, ca.keypair.public_l);
    std::cout << "tampered B      accepted\n";
  } catch (const IssuerValidationError& e) {
    std::cout << "tampered B      rejected (" << e.kind() << ")\n";
  }

  for (const auto& row : length_report({{ps.zeta1, ps.zeta2}}).rows) {
    std::cout << "raw sizes       L " << row.l_bytes() << " B, B " << row.b_bytes() << " B, s " << row.s_bits
              << " bits\n";
  }
  return 0;
}
