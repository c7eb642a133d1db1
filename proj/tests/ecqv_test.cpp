#include "pqcmc/ecqv.hpp"

#include <gtest/gtest.h>

#include <set>
#include <string>
#include <vector>

#include "pqcmc/prng.hpp"

namespace pqcmc::ec {
namespace {

const CurveParams& C = toy_curve();

// Every affine solution of y^2 = x^3 + 2x + 2 over F_17, by brute force.
std::vector<EcPoint> all_points() {
  std::vector<EcPoint> pts{EcPoint::at_infinity()};
  for (Scalar x = 0; x < C.p; ++x)
    for (Scalar y = 0; y < C.p; ++y)
      if ((y * y - (x * x * x + C.a * x + C.b)) % C.p == 0) pts.push_back(EcPoint::affine(x, y));
  return pts;
}

TEST(Field, InverseAndSquareRoot) {
  for (Scalar v = 1; v < 17; ++v) EXPECT_EQ(v * *inv_mod(v, 17) % 17, 1);
  EXPECT_FALSE(inv_mod(0, 17).has_value());
  for (Scalar v = 0; v < 17; ++v) {
    const auto r = sqrt_mod(v, 17);
    bool residue = false;
    for (Scalar y = 0; y < 17; ++y) residue = residue || y * y % 17 == v;
    EXPECT_EQ(r.has_value(), residue) << v;
    if (r) EXPECT_EQ(*r * *r % 17, v);
  }
}

TEST(Curve, BruteForcePointSetAndOrder) {
  const auto pts = all_points();
  EXPECT_EQ(pts.size(), 19u);
  EXPECT_TRUE(C.on_curve(C.g));
  EXPECT_EQ(scalar_mul(C, 2, C.g), EcPoint::affine(6, 3));
  EXPECT_EQ(scalar_mul(C, 0, C.g), EcPoint::at_infinity());
  EXPECT_EQ(scalar_mul(C, 19, C.g), EcPoint::at_infinity());

  // Repeated addition from G visits every point before returning to O.
  std::set<std::pair<Scalar, Scalar>> seen;
  EcPoint acc = C.g;
  int order = 1;
  while (!acc.infinity) {
    seen.insert({acc.x, acc.y});
    acc = point_add(C, acc, C.g);
    ++order;
  }
  EXPECT_EQ(order, 19);
  EXPECT_EQ(seen.size(), 18u);
}

TEST(Curve, ScalarMulMatchesRepeatedAddition) {
  EcPoint acc = EcPoint::at_infinity();
  for (Scalar k = 0; k < 40; ++k) {
    EXPECT_EQ(scalar_mul(C, k, C.g), acc) << k;
    acc = point_add(C, acc, C.g);
  }
  EXPECT_EQ(scalar_mul(C, -1, C.g), negate(C, C.g));
}

TEST(Curve, GroupAxiomsOnAllPoints) {
  const auto pts = all_points();
  const EcPoint o = EcPoint::at_infinity();
  for (const auto& p : pts) {
    EXPECT_EQ(point_add(C, p, o), p);
    EXPECT_EQ(point_add(C, p, negate(C, p)), o);
    for (const auto& q : pts) {
      const auto pq = point_add(C, p, q);
      ASSERT_TRUE(C.on_curve(pq));
      ASSERT_EQ(pq, point_add(C, q, p));
      for (const auto& r : pts) ASSERT_EQ(point_add(C, pq, r), point_add(C, p, point_add(C, q, r)));
    }
  }
}

TEST(Curve, OffCurveInputRejected) {
  EXPECT_THROW(point_add(C, EcPoint::affine(1, 1), C.g), PointNotOnCurve);
  EXPECT_THROW(scalar_mul(C, 3, EcPoint::affine(0, 0)), PointNotOnCurve);
}

TEST(Compression, RoundTripEveryPoint) {
  for (const auto& p : all_points()) {
    if (p.infinity) {
      EXPECT_THROW(compress(C, p), NotCompressible);
      continue;
    }
    const auto cp = compress(C, p);
    EXPECT_EQ(decompress(C, cp), p);
    if (p.y != 0) EXPECT_NE(compress(C, negate(C, p)).tag, cp.tag);
  }
}

TEST(Compression, NonResidueAndBadInput) {
  int nonresidues = 0;
  for (Scalar x = 0; x < C.p; ++x) {
    try {
      decompress(C, {0x02, x});
    } catch (const NonResidue&) {
      ++nonresidues;
    }
  }
  EXPECT_GT(nonresidues, 0);
  EXPECT_THROW(decompress(C, {0x04, 5}), InvalidArgument);
  EXPECT_THROW(decompress(C, {0x02, 17}), InvalidArgument);
}

TEST(Ecdsa, ExhaustiveSignVerifyAndResidue) {
  int signed_count = 0;
  int retries = 0;
  for (Scalar a = 1; a < C.n; ++a) {
    const EcPoint pub = scalar_mul(C, a, C.g);
    for (Scalar k = 1; k < C.n; ++k) {
      for (Scalar h = 0; h < C.n; ++h) {
        EcdsaSignature sig;
        try {
          sig = ecdsa_sign(C, h, a, k);
        } catch (const RetryNeeded&) {
          ++retries;
          continue;
        }
        ++signed_count;
        const auto v = ecdsa_verify_detailed(C, h, sig, pub);
        ASSERT_TRUE(v.accepted) << "a=" << a << " k=" << k << " h=" << h;
        ASSERT_EQ(mod(v.u + v.v * a, C.n), k);
        for (Scalar bad = 0; bad < C.n; ++bad) {
          if (bad != h) ASSERT_FALSE(ecdsa_verify(C, bad, sig, pub));
        }
      }
    }
  }
  EXPECT_GT(signed_count, 0);
  EXPECT_EQ(signed_count + retries, 18 * 18 * 19);
}

TEST(Ecdsa, NonceRangeChecked) {
  EXPECT_THROW(ecdsa_sign(C, 1, 1, 0), InvalidArgument);
  EXPECT_THROW(ecdsa_sign(C, 1, 1, 19), InvalidArgument);
}

TEST(Ecqv, KeyPairConsistencyRandomIssuances) {
  SplitMix64 gen(19);
  int done = 0;
  while (done < 100) {
    const Scalar a = 1 + gen.next_u64() % 18;
    const Scalar c = 1 + gen.next_u64() % 18;
    const Scalar r = 1 + gen.next_u64() % 18;
    const Bytes info = {static_cast<std::uint8_t>(gen.next_u64()), static_cast<std::uint8_t>(done)};
    const EcPoint a_pub = scalar_mul(C, a, C.g);
    const EcPoint c_pub = scalar_mul(C, c, C.g);
    EcqvIssuance iss;
    try {
      iss = ecqv_issue(C, a_pub, info, c, r);
    } catch (const RetryNeeded&) {
      continue;
    }
    EXPECT_EQ(iss.recon_point, point_add(C, a_pub, scalar_mul(C, r, C.g)));
    const auto keys = ecqv_expand(C, a, iss, c_pub);
    ASSERT_EQ(scalar_mul(C, keys.q, C.g), keys.big_q);
    EXPECT_EQ(iss.cert_bytes, encode_ecqv_cert(C, iss.recon_point, info));
    ++done;
  }
}

TEST(Ecqv, ZeroNonceGivesEePublicKey) {
  const EcPoint a_pub = scalar_mul(C, 4, C.g);
  EXPECT_EQ(ecqv_issue(C, a_pub, Bytes{1}, 7, 0).recon_point, a_pub);
}

TEST(Ecqv, ZeroHashEdge) {
  const Scalar a = 3, c = 5, r = 2;
  const EcPoint a_pub = scalar_mul(C, a, C.g);
  const EcPoint c_pub = scalar_mul(C, c, C.g);
  bool found = false;
  for (std::uint32_t i = 0; i < 1000 && !found; ++i) {
    Bytes info;
    put_be32(info, i);
    const auto iss = ecqv_issue(C, a_pub, info, c, r);
    if (hash_to_scalar(C, iss.cert_bytes) != 0) continue;
    found = true;
    const auto keys = ecqv_expand(C, a, iss, c_pub);
    EXPECT_EQ(keys.q, iss.key_recon);
    EXPECT_EQ(keys.q, c);
    EXPECT_EQ(keys.big_q, c_pub);
  }
  EXPECT_TRUE(found);
  const auto forced = ecqv_expand_with_hash(C, 0, a, 11, C.g, c_pub);
  EXPECT_EQ(forced.q, 11);
  EXPECT_EQ(forced.big_q, c_pub);
}

TEST(Ecqv, ExpandedKeySignsUnderReconstructedPoint) {
  const Scalar a = 6, c = 9;
  const auto iss = ecqv_issue(C, scalar_mul(C, a, C.g), Bytes{'E'}, c, 4);
  const auto keys = ecqv_expand(C, a, iss, scalar_mul(C, c, C.g));
  int verified = 0;
  for (Scalar k = 1; k < C.n; ++k) {
    try {
      const auto sig = ecdsa_sign(C, 7, keys.q, k);
      EXPECT_TRUE(ecdsa_verify(C, 7, sig, keys.big_q));
      ++verified;
    } catch (const RetryNeeded&) {
    }
  }
  EXPECT_GT(verified, 10);
}

TEST(Ecqv, DeterministicAndTranscript) {
  const EcPoint a_pub = scalar_mul(C, 2, C.g);
  const auto x = ecqv_issue(C, a_pub, Bytes{1, 2}, 3, 4);
  const auto y = ecqv_issue(C, a_pub, Bytes{1, 2}, 3, 4);
  EXPECT_EQ(x.cert_bytes, y.cert_bytes);
  EXPECT_EQ(x.key_recon, y.key_recon);
  const auto t = ecqv_demo_transcript(C, 2, 3, 4, Bytes{'E'});
  EXPECT_NE(t.find("G = (5, 1)"), std::string::npos);
  EXPECT_EQ(t, ecqv_demo_transcript(C, 2, 3, 4, Bytes{'E'}));
}

}  // namespace
}  // namespace pqcmc::ec
