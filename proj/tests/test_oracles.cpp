#include "edgefs/oracles.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "edgefs/edge_distribution.hpp"

namespace edgefs {
namespace {

enum class Texture { Uniform, Plateaus, Impulses };

Eigen::ArrayXi drawValues(int size, Texture texture, std::mt19937_64& rng) {
  Eigen::ArrayXi values(size);
  std::uniform_int_distribution<int> uniform(0, 5000);
  std::bernoulli_distribution change(0.1);
  std::bernoulli_distribution spike(0.05);
  switch (texture) {
    case Texture::Uniform:
      for (int i = 0; i < size; ++i) values[i] = uniform(rng);
      break;
    case Texture::Plateaus: {
      int level = uniform(rng);
      for (int i = 0; i < size; ++i) {
        if (change(rng)) level = uniform(rng);
        values[i] = level;
      }
      break;
    }
    case Texture::Impulses:
      for (int i = 0; i < size; ++i) values[i] = spike(rng) ? 3000 : 0;
      break;
  }
  return values;
}

EdgeDistribution makeDist(Eigen::ArrayXi values) {
  EdgeDistribution dist;
  dist.values = std::move(values);
  return dist;
}

/// The production matcher and the independently written reference must agree
/// on every column: same validity, same cost, same displacement.  Run across
/// texture families that exercise ties, flats, and degenerate subpixel cases.
TEST(ExhaustiveMatch, AgreesWithTheProductionMatcherEverywhere) {
  struct Batch {
    Texture texture;
    MatchConfig config;
    bool with_shift;
  };
  MatchConfig no_subpixel = MatchConfig::symmetric(5, 3);
  no_subpixel.subpixel = false;
  const Batch batches[] = {
      {Texture::Uniform, MatchConfig::symmetric(11, 15), false},
      {Texture::Plateaus, MatchConfig::symmetric(7, 5), true},
      {Texture::Impulses, MatchConfig::oneSided(11, 15), false},
      {Texture::Plateaus, no_subpixel, false},
  };

  std::mt19937_64 rng(314);
  std::uniform_int_distribution<int> shift_draw(-2, 2);
  constexpr int kWidth = 96;

  for (const Batch& batch : batches) {
    for (int pair = 0; pair < 50; ++pair) {
      const EdgeDistribution ref = makeDist(drawValues(kWidth, batch.texture, rng));
      const EdgeDistribution tgt = makeDist(drawValues(kWidth, batch.texture, rng));
      Eigen::ArrayXi shifts;
      if (batch.with_shift) {
        shifts.resize(kWidth);
        for (int i = 0; i < kWidth; ++i) shifts[i] = shift_draw(rng);
      }

      const MatchProfile ours = matchProfiles(ref, tgt, batch.config, shifts);
      const MatchProfile referee =
          oracles::exhaustiveMatch1d(ref, tgt, batch.config, shifts);

      ASSERT_EQ(ours.valid.size(), referee.valid.size());
      for (int i = 0; i < kWidth; ++i) {
        EXPECT_EQ(referee.valid[i], ours.valid[i]) << "column " << i;
        EXPECT_EQ(referee.cost[i], ours.cost[i]) << "column " << i;
        EXPECT_NEAR(referee.displacement_px[i], ours.displacement_px[i], 1e-9)
            << "column " << i;
      }
    }
  }
}

TEST(ExhaustiveMatch, RecoversAPlantedShiftOnItsOwn) {
  std::mt19937_64 rng(7);
  const Eigen::ArrayXi base = drawValues(136, Texture::Uniform, rng);
  MatchConfig config = MatchConfig::symmetric(11, 15);
  config.subpixel = false;
  const EdgeDistribution ref = makeDist(base.segment(20, 96));
  const EdgeDistribution tgt = makeDist(base.segment(16, 96));  // shift +4

  const MatchProfile profile = oracles::exhaustiveMatch1d(ref, tgt, config);
  ASSERT_GT(profile.valid.count(), 40);
  for (int i = 0; i < 96; ++i)
    if (profile.valid[i]) EXPECT_DOUBLE_EQ(4.0, profile.displacement_px[i]);
}

GrayImage randomImage(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> shade(0, 255);
  GrayImage image(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      image(r, c) = static_cast<std::uint8_t>(shade(rng));
  return image;
}

TEST(DenseBlockFlow, IsZeroOnIdenticalFrames) {
  const GrayImage frame = randomImage(48, 64, 12);
  const oracles::DenseFlowField field =
      oracles::denseBlockFlow(frame, frame, MatchConfig::symmetric(11, 7), 4);

  int checked = 0;
  for (Eigen::Index r = 0; r < field.valid.rows(); ++r) {
    for (Eigen::Index c = 0; c < field.valid.cols(); ++c) {
      if (!field.valid(r, c)) continue;
      EXPECT_DOUBLE_EQ(0.0, field.du_px(r, c));
      EXPECT_DOUBLE_EQ(0.0, field.dv_px(r, c));
      ++checked;
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(DenseBlockFlow, RecoversARigidTranslation) {
  const GrayImage base = randomImage(60, 80, 13);
  // Content moves 3 columns right and 2 rows down between the two crops.
  const GrayImage from = base.block(2, 3, 48, 64);
  const GrayImage to = base.block(0, 0, 48, 64);

  const oracles::DenseFlowField field =
      oracles::denseBlockFlow(from, to, MatchConfig::symmetric(11, 7), 4);
  int checked = 0;
  for (Eigen::Index r = 0; r < field.valid.rows(); ++r) {
    for (Eigen::Index c = 0; c < field.valid.cols(); ++c) {
      if (!field.valid(r, c)) continue;
      EXPECT_DOUBLE_EQ(3.0, field.du_px(r, c));
      EXPECT_DOUBLE_EQ(2.0, field.dv_px(r, c));
      ++checked;
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(AnalyticFlow, LateralMotionGivesUniformFlow) {
  const CameraIntrinsics intr = delflyStereoboard();
  const Eigen::ArrayXd depth = Eigen::ArrayXd::Constant(intr.width_px, 1.0);
  const Eigen::ArrayXd flow = oracles::analyticFlow(intr, 0.0, 0.3, 0.0, depth);
  ASSERT_EQ(intr.width_px, flow.size());
  for (Eigen::Index u = 0; u < flow.size(); ++u)
    EXPECT_DOUBLE_EQ(-0.3, flow[u]);
  // In pixel units: 0.3 * 127.7676 px = 38.330 px/s of edge drift.
  EXPECT_NEAR(-38.330, flow[0] * intr.focalPx(), 1e-3);
}

TEST(AnalyticFlow, ForwardMotionExpandsAboutTheImageCenter) {
  const CameraIntrinsics intr = delflyStereoboard();
  const Eigen::ArrayXd depth = Eigen::ArrayXd::Constant(intr.width_px, 1.0);
  const Eigen::ArrayXd flow = oracles::analyticFlow(intr, 0.2, 0.0, 0.0, depth);
  for (Eigen::Index u = 0; u < flow.size(); ++u)
    EXPECT_DOUBLE_EQ(0.2 * columnCenterX(intr, static_cast<double>(u)), flow[u]);
  // Focus of expansion: outward on both sides of the optical axis.
  EXPECT_LT(flow[0], 0.0);
  EXPECT_GT(flow[intr.width_px - 1], 0.0);
}

TEST(AnalyticFlow, YawRateAddsAUniformOffset) {
  const CameraIntrinsics intr = delflyStereoboard();
  const Eigen::ArrayXd depth = Eigen::ArrayXd::Constant(intr.width_px, 1.5);
  const Eigen::ArrayXd still = oracles::analyticFlow(intr, 0.1, -0.2, 0.0, depth);
  const Eigen::ArrayXd turning = oracles::analyticFlow(intr, 0.1, -0.2, 0.5, depth);
  for (Eigen::Index u = 0; u < still.size(); ++u)
    EXPECT_NEAR(0.5, turning[u] - still[u], 1e-12);
}

TEST(AnalyticFlow, NonPositiveDepthsProduceNoPrediction) {
  const CameraIntrinsics intr = delflyStereoboard();
  Eigen::ArrayXd depth = Eigen::ArrayXd::Constant(intr.width_px, 1.0);
  depth[3] = 0.0;
  depth[4] = -2.0;
  const Eigen::ArrayXd flow = oracles::analyticFlow(intr, 0.0, 0.3, 0.0, depth);
  EXPECT_DOUBLE_EQ(0.0, flow[3]);
  EXPECT_DOUBLE_EQ(0.0, flow[4]);
  EXPECT_DOUBLE_EQ(-0.3, flow[5]);
}

}  // namespace
}  // namespace edgefs
