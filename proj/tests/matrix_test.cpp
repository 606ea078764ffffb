#include "matknap/matrix.hpp"

#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace matknap {
namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

TEST(MatMul, Examples) {
  EXPECT_EQ(Mat::identity(2) * Mat::identity(2), Mat::identity(2));
  EXPECT_EQ(Mat::diag({2, 3}) * Mat::diag({q(1, 2), q(1, 3)}), Mat::identity(2));
  EXPECT_EQ((Mat{{1, 1}, {0, 1}} * Mat{{1, 1}, {0, 1}}), (Mat{{1, 2}, {0, 1}}));
  EXPECT_THROW(Mat::identity(2) * Mat::identity(3), invalid_input);
}

TEST(MatInverse, Examples) {
  EXPECT_EQ(mat_inverse(Mat::diag({2, 3})), Mat::diag({q(1, 2), q(1, 3)}));
  EXPECT_EQ(mat_inverse(Mat::identity(4)), Mat::identity(4));
  Mat shear{{1, 1}, {0, 1}};
  Mat inv = mat_inverse(shear);
  EXPECT_EQ(inv, (Mat{{1, -1}, {0, 1}}));
  EXPECT_TRUE((shear * inv).is_identity());
  EXPECT_THROW(mat_inverse(Mat{{1, 2}, {2, 4}}), precondition_error);
}

TEST(MatInverse, AgreesWithGaussJordanOnRandomRationalMatrices) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 4;
    Mat a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = q(num(rng), den(rng));
    if (determinant(a) == 0) {
      EXPECT_THROW(mat_inverse(a), precondition_error);
      continue;
    }
    ASSERT_EQ(mat_inverse(a), oracle::naive_inverse(a));
    ++checked;
  }
  EXPECT_GT(checked, 150);
}

TEST(Determinant, SmallCases) {
  EXPECT_EQ(determinant(Mat{{2, 1}, {1, 3}}), Rational(5));
  EXPECT_EQ(determinant(Mat{{0, 1}, {1, 0}}), Rational(-1));
  EXPECT_EQ(determinant(Mat{{q(1, 2), 0}, {0, q(2, 3)}}), q(1, 3));
  EXPECT_EQ(determinant(Mat{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}), Rational(0));
}

TEST(MatPow, Examples) {
  EXPECT_EQ(mat_pow(Mat::identity(2), 5), Mat::identity(2));
  EXPECT_EQ(mat_pow(Mat::diag({2, 3}), -2), Mat::diag({q(1, 4), q(1, 9)}));
  EXPECT_EQ(mat_pow(Mat{{1, 1}, {0, 1}}, 4), (Mat{{1, 4}, {0, 1}}));
  EXPECT_EQ(mat_pow(Mat{{1, 1}, {0, 1}}, 0), Mat::identity(2));
  EXPECT_THROW(mat_pow(Mat{{0, 0}, {0, 1}}, -1), precondition_error);
}

TEST(MatPow, ExponentsAddForInvertibleMatrices) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(-4, 4), den(1, 3);
  for (int trial = 0; trial < 20; ++trial) {
    Mat a(2 + trial % 2);
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) a(i, j) = q(num(rng), den(rng));
    if (determinant(a) == 0) continue;
    auto table = oracle::power_table(a, 8);
    for (long k = -8; k <= 8; ++k) {
      ASSERT_EQ(mat_pow(a, k), table[static_cast<std::size_t>(k + 8)]);
      for (long l = -8; l <= 8; ++l)
        if (std::abs(k + l) <= 8) {
          ASSERT_EQ(mat_pow(a, k + l), mat_pow(a, k) * mat_pow(a, l));
        }
    }
  }
}

TEST(Height, Examples) {
  EXPECT_EQ(height(Mat::identity(2)), Integer(1));
  EXPECT_EQ(height(Mat{{2, 4}, {6, 8}}), Integer(4));
  EXPECT_EQ(height(Mat{{q(1, 2), 3}, {0, 1}}), Integer(6));
  EXPECT_THROW(height(Mat(2)), invalid_input);
}

TEST(Height, InvariantUnderScaling) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> num(-20, 20), den(1, 7);
  for (int trial = 0; trial < 300; ++trial) {
    Mat a(2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) a(i, j) = q(num(rng), den(rng));
    if (a.is_zero()) continue;
    long n = num(rng);
    Rational s = q(n == 0 ? 3 : n, den(rng));
    ASSERT_EQ(height(scaled(a, s)), height(a));
  }
}

TEST(MatHash, EqualMatricesHashEqual) {
  Mat a{{q(2, 4), 1}, {0, -3}};
  Mat b{{q(1, 2), 1}, {0, -3}};
  EXPECT_EQ(MatHash{}(a), MatHash{}(b));
}

}  // namespace
}  // namespace matknap
