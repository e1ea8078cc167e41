#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "edgefs/error.hpp"

namespace edgefs {

constexpr double degToRad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double radToDeg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Pinhole stereo head.  The pixel scale is tied to the horizontal field of
/// view: focalPx() == width_px / fov_h_rad, by construction rather than as a
/// stored field, so the invariant cannot drift.
struct CameraIntrinsics {
  int width_px = 0;
  int height_px = 0;
  double fov_h_rad = 0.0;
  double fov_v_rad = 0.0;
  double baseline_m = 0.0;

  double focalPx() const { return static_cast<double>(width_px) / fov_h_rad; }

  /// Stereo constant in m*px: depth_m = depthScalePxM() / disparity_px.
  double depthScalePxM() const { return width_px * baseline_m / fov_h_rad; }

  void validate() const {
    if (width_px <= 0 || height_px <= 0)
      fail(ErrorCode::SchemaViolation, "intrinsics: image dimensions must be positive");
    if (!(fov_h_rad > 0.0) || !(fov_h_rad < std::numbers::pi) ||
        !(fov_v_rad > 0.0) || !(fov_v_rad < std::numbers::pi))
      fail(ErrorCode::SchemaViolation, "intrinsics: field of view must lie in (0, pi)");
    if (!(baseline_m > 0.0))
      fail(ErrorCode::SchemaViolation, "intrinsics: baseline must be positive");
  }
};

/// 128x96 stereo head with a 57.4 x 44.5 degree field of view and a 6 cm
/// baseline, running at 30 Hz.
inline CameraIntrinsics delflyStereoboard() {
  return CameraIntrinsics{128, 96, degToRad(57.4), degToRad(44.5), 0.06};
}

/// Normalized image-plane coordinate (tangent of the bearing to the right of
/// the optical axis) at the center of pixel column u.  Column u spans
/// [u, u+1), hence the half-pixel offset.
inline double columnCenterX(const CameraIntrinsics& intr, double u) {
  return (u + 0.5 - 0.5 * intr.width_px) / intr.focalPx();
}

}  // namespace edgefs
