#include "pqcmc/gf2_matrix.hpp"

#include <gtest/gtest.h>

#include "pqcmc/rand_gen.hpp"
#include "test_util.hpp"

namespace pqcmc {
namespace {

using testing::naive_multiply;
using testing::naive_rank;
using testing::random_matrix;
using testing::to_grid;

TEST(Gf2Matrix, StorageIsRowPaddedAndMsbFirst) {
  Gf2Matrix m(3, 10);
  EXPECT_EQ(m.stride(), 2u);
  EXPECT_EQ(m.packed().size(), 6u);
  m.set(0, 0, true);
  m.set(1, 9, true);
  EXPECT_EQ(m.packed()[0], 0x80);
  EXPECT_EQ(m.packed()[3], 0x40);
  EXPECT_TRUE(m.padding_is_clear());
}

TEST(Gf2Matrix, RejectsEmptyDimensions) {
  EXPECT_THROW(Gf2Matrix(0, 3), DimensionError);
  EXPECT_THROW(Gf2Matrix(3, 0), DimensionError);
}

TEST(Multiply, HandEvaluatedExample) {
  const Gf2Matrix a{{1, 1}, {0, 1}};
  const Gf2Matrix b{{1, 0}, {1, 1}};
  const Gf2Matrix expected{{0, 1}, {1, 1}};
  EXPECT_EQ(multiply(a, b), expected);
}

TEST(Multiply, IdentityIsNeutral) {
  SplitMix64 gen(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_matrix(4, 4, gen);
    EXPECT_EQ(multiply(Gf2Matrix::identity(4), a), a);
    EXPECT_EQ(multiply(a, Gf2Matrix::identity(4)), a);
  }
}

TEST(Multiply, PermutationTimesTransposeIsIdentity) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = permutation_pair(seed, 13).m1;
    EXPECT_EQ(multiply(p, transpose(p)), Gf2Matrix::identity(13));
  }
}

TEST(Multiply, DimensionMismatchNamesBothShapes) {
  try {
    multiply(Gf2Matrix(2, 3), Gf2Matrix(4, 5));
    FAIL() << "expected DimensionError";
  } catch (const DimensionError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("2x3"), std::string::npos);
    EXPECT_NE(what.find("4x5"), std::string::npos);
  }
}

TEST(Multiply, AgreesWithTripleLoopOracle) {
  SplitMix64 gen(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t r = 1 + gen.next_u64() % 16;
    const std::size_t k = 1 + gen.next_u64() % 16;
    const std::size_t c = 1 + gen.next_u64() % 16;
    const auto a = random_matrix(r, k, gen);
    const auto b = random_matrix(k, c, gen);
    ASSERT_EQ(to_grid(multiply(a, b)), naive_multiply(to_grid(a), to_grid(b))) << "trial " << trial;
  }
}

TEST(Multiply, IsAssociative) {
  SplitMix64 gen(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n1 = 1 + gen.next_u64() % 12, n2 = 1 + gen.next_u64() % 12;
    const std::size_t n3 = 1 + gen.next_u64() % 12, n4 = 1 + gen.next_u64() % 12;
    const auto a = random_matrix(n1, n2, gen);
    const auto b = random_matrix(n2, n3, gen);
    const auto c = random_matrix(n3, n4, gen);
    ASSERT_EQ(multiply(multiply(a, b), c), multiply(a, multiply(b, c)));
  }
}

TEST(Add, XorExampleAndIdentities) {
  EXPECT_EQ(add(Gf2Matrix{{1, 0}}, Gf2Matrix{{1, 1}}), (Gf2Matrix{{0, 1}}));
  SplitMix64 gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_matrix(1 + trial % 9, 1 + trial % 13, gen);
    EXPECT_TRUE(add(a, a).is_zero());
    EXPECT_EQ(add(a, Gf2Matrix(a.rows(), a.cols())), a);
  }
  EXPECT_THROW(add(Gf2Matrix(2, 2), Gf2Matrix(2, 3)), DimensionError);
}

TEST(Transpose, IsAnInvolution) {
  SplitMix64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_matrix(1 + trial % 17, 1 + (trial * 7) % 19, gen);
    EXPECT_EQ(transpose(transpose(a)), a);
  }
}

TEST(Invert, IdentityAndPermutation) {
  EXPECT_EQ(invert(Gf2Matrix::identity(8)), Gf2Matrix::identity(8));
  const auto p = permutation_pair(3, 9).m1;
  EXPECT_EQ(invert(p), transpose(p));
}

TEST(Invert, RandomInvertibleRoundTrips) {
  SplitMix64 gen(16);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = testing::random_invertible_by_rejection(16, gen);
    const auto inv = invert(m);
    ASSERT_EQ(multiply(m, inv), Gf2Matrix::identity(16));
    ASSERT_EQ(invert(inv), m);
  }
}

TEST(Invert, SingularAndNonSquareRejected) {
  EXPECT_THROW(invert(Gf2Matrix(4, 4)), SingularMatrix);
  EXPECT_THROW(invert(Gf2Matrix{{1, 1}, {1, 1}}), SingularMatrix);
  EXPECT_THROW(invert(Gf2Matrix(2, 3)), DimensionError);
}

TEST(RightInverse, SystematicDropsParityRows) {
  const Gf2Matrix a{{1, 0, 1}, {0, 1, 1}};
  const Gf2Matrix expected{{1, 0}, {0, 1}, {0, 0}};
  EXPECT_EQ(right_inverse(a), expected);
}

TEST(RightInverse, SquareCaseEqualsInverse) {
  SplitMix64 gen(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = testing::random_invertible_by_rejection(10, gen);
    EXPECT_EQ(right_inverse(m), invert(m));
  }
}

TEST(RightInverse, HammingGenerator) {
  const Gf2Matrix g{{1, 0, 0, 0, 1, 1, 0}, {0, 1, 0, 0, 1, 0, 1}, {0, 0, 1, 0, 0, 1, 1}, {0, 0, 0, 1, 1, 1, 1}};
  const auto k4 = right_inverse(g);
  EXPECT_EQ(k4.rows(), 7u);
  EXPECT_EQ(k4.cols(), 4u);
  EXPECT_EQ(multiply(g, k4), Gf2Matrix::identity(4));
}

TEST(RightInverse, RandomFullRowRankWideMatrices) {
  SplitMix64 gen(77);
  int checked = 0;
  while (checked < 100) {
    const std::size_t rows = 1 + gen.next_u64() % 12;
    const std::size_t cols = rows + gen.next_u64() % 10;
    const auto a = random_matrix(rows, cols, gen);
    if (naive_rank(to_grid(a)) != rows) {
      EXPECT_THROW(right_inverse(a), NotFullRank);
      continue;
    }
    ASSERT_EQ(multiply(a, right_inverse(a)), Gf2Matrix::identity(rows));
    ++checked;
  }
}

TEST(RightInverse, RankDeficientRejected) {
  EXPECT_THROW(right_inverse(Gf2Matrix{{1, 1, 0}, {1, 1, 0}}), NotFullRank);
  EXPECT_THROW(right_inverse(Gf2Matrix(3, 2)), NotFullRank);
}

TEST(Rank, BasicCasesAndOracle) {
  EXPECT_EQ(rank(Gf2Matrix::identity(8)), 8u);
  EXPECT_EQ(rank(Gf2Matrix(4, 4)), 0u);
  SplitMix64 gen(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_matrix(1 + gen.next_u64() % 14, 1 + gen.next_u64() % 14, gen);
    ASSERT_EQ(rank(a), naive_rank(to_grid(a)));
  }
}

TEST(IsPermutation, Classification) {
  EXPECT_TRUE(is_permutation(Gf2Matrix::identity(5)));
  EXPECT_TRUE(is_permutation(Gf2Matrix{{0, 1}, {1, 0}}));
  EXPECT_FALSE(is_permutation(Gf2Matrix{{1, 1}, {0, 0}}));
  EXPECT_FALSE(is_permutation(Gf2Matrix{{1, 0}, {1, 0}}));
  EXPECT_FALSE(is_permutation(Gf2Matrix(2, 3)));
}

TEST(Serialize, SmallestMatrix) {
  const Bytes bytes = serialize(Gf2Matrix{{1}});
  const Bytes expected = {'G', 'F', '2', 'M', 0, 0, 0, 1, 0, 0, 0, 1, 0x80};
  EXPECT_EQ(bytes, expected);
}

TEST(Serialize, PayloadSizeOfTableRow) {
  const Bytes bytes = serialize(Gf2Matrix(524, 1024));
  EXPECT_EQ(bytes.size() - kMatrixHeaderSize, 67072u);
  EXPECT_EQ(67072.0 / 1024.0, 65.5);
}

TEST(Serialize, RoundTripAndSizeFormula) {
  SplitMix64 gen(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + gen.next_u64() % 40;
    const std::size_t c = 1 + gen.next_u64() % 40;
    const auto a = random_matrix(r, c, gen);
    const auto bytes = serialize(a);
    ASSERT_EQ(bytes.size(), kMatrixHeaderSize + r * ((c + 7) / 8));
    ASSERT_EQ(deserialize(bytes), a);
  }
}

TEST(Deserialize, DistinctErrors) {
  Bytes good = serialize(Gf2Matrix{{1, 0, 1}});
  Bytes bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_THROW(deserialize(bad_magic), BadMagic);

  Bytes truncated(good.begin(), good.end() - 1);
  EXPECT_THROW(deserialize(truncated), TruncatedInput);
  EXPECT_THROW(deserialize(Bytes(good.begin(), good.begin() + 6)), TruncatedInput);

  Bytes padded = good;
  padded.back() |= 0x01;
  EXPECT_THROW(deserialize(padded), NonzeroPadding);

  Bytes trailing = good;
  trailing.push_back(0);
  EXPECT_THROW(deserialize(trailing), TrailingData);
}

TEST(Stack, HorizontalAndVertical) {
  const Gf2Matrix a{{1, 0}, {0, 1}};
  const Gf2Matrix b{{1}, {1}};
  EXPECT_EQ(hstack(a, b), (Gf2Matrix{{1, 0, 1}, {0, 1, 1}}));
  EXPECT_EQ(vstack(a, Gf2Matrix{{1, 1}}), (Gf2Matrix{{1, 0}, {0, 1}, {1, 1}}));
  EXPECT_EQ(row_slice(vstack(a, a), 1, 2), (Gf2Matrix{{0, 1}, {1, 0}}));
}

}  // namespace
}  // namespace pqcmc
