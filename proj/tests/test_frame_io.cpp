#include "edgefs/frame_io.hpp"

#include <fstream>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "edgefs/error.hpp"
#include "test_util.hpp"

namespace edgefs {
namespace {

using testutil::expectError;
using testutil::ScopedTempDir;

GrayImage randomImage(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> shade(0, 255);
  GrayImage image(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      image(r, c) = static_cast<std::uint8_t>(shade(rng));
  return image;
}

void writeFile(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << bytes;
}

TEST(PgmIo, RoundTripPreservesEveryByte) {
  ScopedTempDir dir;
  const GrayImage image = randomImage(23, 37, 7);
  const auto path = dir.path() / "img.pgm";
  savePgm(image, path);

  const GrayImage loaded = loadPgm(path);
  ASSERT_EQ(image.rows(), loaded.rows());
  ASSERT_EQ(image.cols(), loaded.cols());
  EXPECT_TRUE((image.array() == loaded.array()).all());

  const auto [w, h] = readPgmDimensions(path);
  EXPECT_EQ(37, w);
  EXPECT_EQ(23, h);
}

TEST(PgmIo, HeaderCommentsAndLooseWhitespaceParse) {
  ScopedTempDir dir;
  const auto path = dir.path() / "commented.pgm";
  std::string bytes = "P5 # trailing comment\n# a whole comment line\n  3\n\t2 255\n";
  bytes += std::string("abcdef");  // 6 payload bytes
  writeFile(path, bytes);

  const GrayImage image = loadPgm(path);
  ASSERT_EQ(2, image.rows());
  ASSERT_EQ(3, image.cols());
  EXPECT_EQ('a', image(0, 0));
  EXPECT_EQ('f', image(1, 2));
}

TEST(PgmIo, MissingFileIsFileNotFound) {
  ScopedTempDir dir;
  expectError(ErrorCode::FileNotFound,
              [&] { loadPgm(dir.path() / "does-not-exist.pgm"); });
}

TEST(PgmIo, WrongMagicIsMalformedHeader) {
  ScopedTempDir dir;
  const auto path = dir.path() / "ascii.pgm";
  writeFile(path, "P2\n3 2\n255\n0 1 2 3 4 5\n");
  expectError(ErrorCode::MalformedHeader, [&] { loadPgm(path); });
}

TEST(PgmIo, NonNumericDimensionIsMalformedHeader) {
  ScopedTempDir dir;
  const auto path = dir.path() / "neg.pgm";
  writeFile(path, "P5\n-3 2\n255\n");
  expectError(ErrorCode::MalformedHeader, [&] { loadPgm(path); });
}

TEST(PgmIo, AbsurdDimensionsAreDimensionOverflow) {
  ScopedTempDir dir;
  const auto path = dir.path() / "huge.pgm";
  writeFile(path, "P5\n99999999 99999999\n255\n");
  expectError(ErrorCode::DimensionOverflow, [&] { readPgmDimensions(path); });
}

TEST(PgmIo, SixteenBitMaxvalIsRejected) {
  ScopedTempDir dir;
  const auto path = dir.path() / "deep.pgm";
  writeFile(path, "P5\n3 2\n65535\n");
  expectError(ErrorCode::MalformedHeader, [&] { loadPgm(path); });
}

TEST(PgmIo, ShortPayloadIsTruncatedPayload) {
  ScopedTempDir dir;
  const auto path = dir.path() / "short.pgm";
  writeFile(path, "P5\n4 4\n255\n0123456789");  // 10 of 16 bytes
  expectError(ErrorCode::TruncatedPayload, [&] { loadPgm(path); });
}

// ---------------------------------------------------------------------------
// Manifests.  Built by hand around tiny 8x6 frames so each schema rule can be
// violated in isolation.

constexpr const char* kIntrinsicsJson =
    R"("intrinsics": {"width_px": 8, "height_px": 6, "fov_h_deg": 57.4,
                      "fov_v_deg": 44.5, "baseline_m": 0.06})";

std::string manifestJson(const std::string& frames) {
  return std::string("{") + kIntrinsicsJson + ", \"frames\": [" + frames + "]}";
}

void writeTinyImages(const std::filesystem::path& dir, int count) {
  const GrayImage image = randomImage(6, 8, 3);
  for (int i = 0; i < count; ++i) {
    savePgm(image, dir / ("l" + std::to_string(i) + ".pgm"));
    savePgm(image, dir / ("r" + std::to_string(i) + ".pgm"));
  }
}

TEST(ManifestIo, SaveLoadRoundTripsPosesAndIntrinsics) {
  ScopedTempDir dir;
  writeTinyImages(dir.path(), 2);

  SequenceManifest manifest;
  manifest.base_dir = dir.path();
  manifest.intrinsics = CameraIntrinsics{8, 6, degToRad(57.4), degToRad(44.5), 0.06};
  for (int i = 0; i < 2; ++i) {
    FrameRecord rec;
    rec.timestamp_s = i / 30.0;
    rec.left_path = "l" + std::to_string(i) + ".pgm";
    rec.right_path = "r" + std::to_string(i) + ".pgm";
    rec.gyro_z_rad_s = 0.25 * i;
    rec.ground_truth = GroundTruth{0.3, -0.1, 0.5, 1.0 + i, 2.0};
    manifest.frames.push_back(rec);
  }
  saveManifest(manifest);

  const SequenceManifest loaded = loadManifest(dir.path() / "manifest.json");
  ASSERT_EQ(2u, loaded.frames.size());
  EXPECT_TRUE(loaded.hasGroundTruth());
  EXPECT_EQ(8, loaded.intrinsics.width_px);
  EXPECT_NEAR(degToRad(57.4), loaded.intrinsics.fov_h_rad, 1e-12);
  EXPECT_NEAR(0.06, loaded.intrinsics.baseline_m, 1e-12);
  EXPECT_DOUBLE_EQ(0.25, loaded.frames[1].gyro_z_rad_s);
  ASSERT_TRUE(loaded.frames[1].ground_truth.has_value());
  EXPECT_DOUBLE_EQ(2.0, loaded.frames[1].ground_truth->pos_x_m);
  EXPECT_DOUBLE_EQ(-0.1, loaded.frames[0].ground_truth->vy_m_s);

  const StereoFrame frame = loadStereoFrame(loaded, 1);
  EXPECT_DOUBLE_EQ(1.0 / 30.0, frame.timestamp_s);
  EXPECT_EQ(6, frame.left.rows());
  EXPECT_EQ(8, frame.right.cols());
}

TEST(ManifestIo, MalformedJsonIsSchemaViolation) {
  ScopedTempDir dir;
  const auto path = dir.path() / "manifest.json";
  writeFile(path, "{ not json at all");
  expectError(ErrorCode::SchemaViolation, [&] { loadManifest(path); });
}

TEST(ManifestIo, TimestampsMustStrictlyIncrease) {
  ScopedTempDir dir;
  writeTinyImages(dir.path(), 2);
  const auto path = dir.path() / "manifest.json";
  writeFile(path, manifestJson(
      R"({"t": 0.1, "left": "l0.pgm", "right": "r0.pgm", "gyro_z": 0},
         {"t": 0.1, "left": "l1.pgm", "right": "r1.pgm", "gyro_z": 0})"));
  expectError(ErrorCode::NonMonotonicTimestamps, [&] { loadManifest(path); });
}

TEST(ManifestIo, GroundTruthMustBeAllOrNone) {
  ScopedTempDir dir;
  writeTinyImages(dir.path(), 2);
  const auto path = dir.path() / "manifest.json";
  writeFile(path, manifestJson(
      R"({"t": 0.0, "left": "l0.pgm", "right": "r0.pgm", "gyro_z": 0,
          "gt": {"vx": 0, "vy": 0, "yaw": 0, "x": 0, "y": 0}},
         {"t": 0.1, "left": "l1.pgm", "right": "r1.pgm", "gyro_z": 0})"));
  expectError(ErrorCode::SchemaViolation, [&] { loadManifest(path); });
}

TEST(ManifestIo, AbsentImageIsMissingImage) {
  ScopedTempDir dir;
  const auto path = dir.path() / "manifest.json";
  writeFile(path, manifestJson(
      R"({"t": 0.0, "left": "l0.pgm", "right": "r0.pgm", "gyro_z": 0})"));
  expectError(ErrorCode::MissingImage, [&] { loadManifest(path); });
}

TEST(ManifestIo, ImageDimensionsMustMatchIntrinsics) {
  ScopedTempDir dir;
  // 5x4 images against 8x6 intrinsics.
  savePgm(randomImage(4, 5, 1), dir.path() / "l0.pgm");
  savePgm(randomImage(4, 5, 2), dir.path() / "r0.pgm");
  const auto path = dir.path() / "manifest.json";
  writeFile(path, manifestJson(
      R"({"t": 0.0, "left": "l0.pgm", "right": "r0.pgm", "gyro_z": 0})"));
  expectError(ErrorCode::SchemaViolation, [&] { loadManifest(path); });
}

TEST(ManifestIo, MissingFieldIsSchemaViolation) {
  ScopedTempDir dir;
  writeTinyImages(dir.path(), 1);
  const auto path = dir.path() / "manifest.json";
  writeFile(path, manifestJson(R"({"t": 0.0, "left": "l0.pgm", "gyro_z": 0})"));
  expectError(ErrorCode::SchemaViolation, [&] { loadManifest(path); });
}

TEST(ManifestIo, FrameIndexOutOfRangeIsReported) {
  ScopedTempDir dir;
  writeTinyImages(dir.path(), 1);
  const auto path = dir.path() / "manifest.json";
  writeFile(path, manifestJson(
      R"({"t": 0.0, "left": "l0.pgm", "right": "r0.pgm", "gyro_z": 0})"));
  const SequenceManifest manifest = loadManifest(path);
  expectError(ErrorCode::SchemaViolation, [&] { loadStereoFrame(manifest, 1); });
}

}  // namespace
}  // namespace edgefs
