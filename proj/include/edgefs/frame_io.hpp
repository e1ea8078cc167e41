#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "edgefs/camera.hpp"
#include "edgefs/image.hpp"

namespace edgefs {

/// Reads a binary (P5) graymap with maxval <= 255.  Distinct failures:
/// FileNotFound, MalformedHeader, DimensionOverflow, TruncatedPayload.
GrayImage loadPgm(const std::filesystem::path& path);

/// Writes a binary (P5) graymap with maxval 255.  Throws WriteFailure.
void savePgm(const GrayImage& image, const std::filesystem::path& path);

/// Parses just the header and returns {width, height} without touching the
/// pixel payload.  Same failure modes as loadPgm (minus truncation).
std::pair<int, int> readPgmDimensions(const std::filesystem::path& path);

/// Per-frame ground truth; all velocities in the body frame (x forward,
/// y right), pose in the world frame with yaw counter-clockwise from +x.
struct GroundTruth {
  double vx_m_s = 0.0;
  double vy_m_s = 0.0;
  double yaw_rad = 0.0;
  double pos_x_m = 0.0;
  double pos_y_m = 0.0;
};

struct FrameRecord {
  double timestamp_s = 0.0;
  std::filesystem::path left_path;   // relative to the manifest directory
  std::filesystem::path right_path;
  double gyro_z_rad_s = 0.0;
  std::optional<GroundTruth> ground_truth;
};

/// A recorded (or generated) stereo sequence: one JSON manifest naming the
/// per-frame image files.  Angles are degrees on disk, radians in memory.
struct SequenceManifest {
  CameraIntrinsics intrinsics;
  std::vector<FrameRecord> frames;
  std::filesystem::path base_dir;  // directory the image paths resolve against

  bool hasGroundTruth() const {
    return !frames.empty() && frames.front().ground_truth.has_value();
  }
};

/// Loads and validates a manifest: schema, strictly increasing timestamps,
/// all-or-none ground truth, and every referenced image present with
/// dimensions matching the declared intrinsics.
SequenceManifest loadManifest(const std::filesystem::path& path);

/// Writes manifest.json into manifest.base_dir (image paths stored relative).
void saveManifest(const SequenceManifest& manifest);

/// One temporally aligned stereo pair plus the gyro sample for the interval
/// that ended at this frame.
struct StereoFrame {
  double timestamp_s = 0.0;
  GrayImage left;
  GrayImage right;
  double gyro_z_rad_s = 0.0;
};

/// Loads the index-th frame's images from disk.
StereoFrame loadStereoFrame(const SequenceManifest& manifest, std::size_t index);

}  // namespace edgefs
