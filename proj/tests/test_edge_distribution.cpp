#include "edgefs/edge_distribution.hpp"

#include <random>

#include <gtest/gtest.h>

#include "edgefs/error.hpp"
#include "test_util.hpp"

namespace edgefs {
namespace {

using testutil::expectError;

GrayImage randomImage(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> shade(0, 255);
  GrayImage image(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      image(r, c) = static_cast<std::uint8_t>(shade(rng));
  return image;
}

TEST(Sobel, ConstantImageHasZeroResponse) {
  const GrayImage image = GrayImage::Constant(12, 20, 137);
  const GradientImage gradient = sobelHorizontal(image);
  EXPECT_TRUE((gradient.array() == 0).all());
}

TEST(Sobel, VerticalStepResponseIsExact) {
  // Columns [0, 16) black, [16, 32) white.  The kernel straddles the step at
  // columns 15 and 16 with weight sum (1+2+1) * 255 = 1020 per interior pixel.
  constexpr int kH = 96;
  constexpr int kW = 32;
  GrayImage image(kH, kW);
  image.leftCols(16).setZero();
  image.rightCols(16).setConstant(255);

  const GradientImage gradient = sobelHorizontal(image);
  for (int r = 1; r < kH - 1; ++r) {
    EXPECT_EQ(1020, gradient(r, 15));
    EXPECT_EQ(1020, gradient(r, 16));
    EXPECT_EQ(0, gradient(r, 14));
    EXPECT_EQ(0, gradient(r, 17));
  }

  // Column sums pick up the (height - 2) interior rows: 94 * 1020 = 95880.
  const EdgeDistribution dist = compress(gradient);
  for (int u = 0; u < kW; ++u) {
    const int expected = (u == 15 || u == 16) ? 94 * 1020 : 0;
    EXPECT_EQ(expected, dist.values[u]) << "column " << u;
  }
}

TEST(Sobel, BorderStaysZero) {
  const GrayImage image = randomImage(9, 14, 21);
  const GradientImage gradient = sobelHorizontal(image);
  EXPECT_TRUE((gradient.row(0).array() == 0).all());
  EXPECT_TRUE((gradient.row(8).array() == 0).all());
  EXPECT_TRUE((gradient.col(0).array() == 0).all());
  EXPECT_TRUE((gradient.col(13).array() == 0).all());
}

TEST(Sobel, InteriorResponseMatchesDirectKernel) {
  const GrayImage image = randomImage(7, 11, 5);
  const GradientImage gradient = sobelHorizontal(image);
  for (int r = 1; r < 6; ++r) {
    for (int c = 1; c < 10; ++c) {
      const int expected = -image(r - 1, c - 1) + image(r - 1, c + 1) -
                           2 * image(r, c - 1) + 2 * image(r, c + 1) -
                           image(r + 1, c - 1) + image(r + 1, c + 1);
      EXPECT_EQ(expected, gradient(r, c)) << "at (" << r << ", " << c << ")";
    }
  }
}

TEST(Compress, MatchesManualAbsoluteColumnSums) {
  const GradientImage gradient = sobelHorizontal(randomImage(10, 40, 77));
  const EdgeDistribution dist = compress(gradient, 0.5);
  ASSERT_EQ(40, dist.size());
  for (int u = 0; u < 40; ++u) {
    std::int64_t sum = 0;
    for (int r = 0; r < 10; ++r) sum += std::abs(gradient(r, u));
    EXPECT_EQ(sum, dist.values[u]);
  }
  EXPECT_DOUBLE_EQ(0.5, dist.source_timestamp_s);
}

TEST(EdgeDistribution, TranslatesWithImageContent) {
  // Two views of the same wide strip, offset by 3 columns: away from the
  // image borders the distributions must be exact shifted copies.
  const GrayImage base = randomImage(32, 70, 11);
  const GrayImage view_a = base.leftCols(64);
  const GrayImage view_b = base.middleCols(3, 64);

  const EdgeDistribution dist_a = edgeDistribution(view_a);
  const EdgeDistribution dist_b = edgeDistribution(view_b);
  for (int u = 1; u < 60; ++u)
    EXPECT_EQ(dist_a.values[u + 3], dist_b.values[u]) << "column " << u;
}

TEST(EdgeDistribution, ValuesStayWithinTheDocumentedBound) {
  const EdgeDistribution dist = edgeDistribution(randomImage(96, 128, 3));
  EXPECT_TRUE((dist.values >= 0).all());
  EXPECT_TRUE((dist.values <= 96 * 1020).all());
}

TEST(EdgeDistribution, RejectsImagesSmallerThanTheKernel) {
  expectError(ErrorCode::ImageTooSmall,
              [] { sobelHorizontal(GrayImage::Zero(2, 5)); });
  expectError(ErrorCode::ImageTooSmall,
              [] { sobelHorizontal(GrayImage::Zero(5, 2)); });
  EXPECT_NO_THROW(sobelHorizontal(GrayImage::Zero(3, 3)));
}

}  // namespace
}  // namespace edgefs
