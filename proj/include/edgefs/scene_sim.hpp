#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "edgefs/camera.hpp"
#include "edgefs/frame_io.hpp"
#include "edgefs/image.hpp"

namespace edgefs {

/// Stripe pattern along a wall, addressed in meters from the wall's first
/// endpoint.  Adjacent stripes always differ enough in shade to produce a
/// usable vertical edge, stripe widths are drawn log-uniformly so the
/// pattern never turns periodic, and shades blend linearly over a short
/// transition zone (a hard step would alias when resampled sub-pixel).
struct StripeTexture {
  std::vector<double> boundaries_m;  // stripe end positions, ascending
  std::vector<std::uint8_t> shades;  // shades.size() == boundaries_m.size()
  double blend_m = 0.0;              // transition width at each boundary

  double sample(double pos_m) const;
};

StripeTexture makeStripes(double length_m, double mean_stripe_m,
                          std::uint64_t seed, int shade_lo = 20,
                          int shade_hi = 235, int min_contrast = 25);

struct Wall {
  Eigen::Vector2d a;
  Eigen::Vector2d b;
  StripeTexture texture;  // coarse, high-contrast stripes
  StripeTexture detail;   // fine low-amplitude grain, added zero-mean

  double length() const { return (b - a).norm(); }

  /// Coarse shade plus grain; the result may leave [0, 255] slightly and is
  /// clamped at render time.
  double shadeAt(double pos_m) const;
};

/// Flat world: vertical walls over a 2-D floor plan, viewed by a camera at
/// wall height.  Geometry in meters, world frame x/y with yaw measured
/// counter-clockwise from +x.
struct World2D {
  std::vector<Wall> walls;
};

void addWall(World2D& world, const Eigen::Vector2d& a, const Eigen::Vector2d& b,
             double mean_stripe_m, std::uint64_t seed);

/// Axis-aligned square obstacle (four walls), e.g. a pole's cross-section.
void addBox(World2D& world, const Eigen::Vector2d& center, double half_extent_m,
            double mean_stripe_m, std::uint64_t seed);

/// Named layouts:
///  - "flat-wall":  one long wall along the x axis (face it from y < 0)
///  - "room4x4":    closed 4 m x 4 m room with corners (0,0)..(4,4)
///  - "pole-field": flat wall plus two square poles in front of it
/// Throws BadConfig for unknown names.
World2D makeWorld(const std::string& preset, std::uint64_t seed,
                  double mean_stripe_m = 0.10);

/// Camera/body state.  velocity is expressed in the body frame (x forward,
/// y right); yaw_rate is what a z gyro would read.
struct CameraPose {
  Eigen::Vector2d position_m = Eigen::Vector2d::Zero();
  double yaw_rad = 0.0;
  Eigen::Vector2d velocity_body_m_s = Eigen::Vector2d::Zero();
  double yaw_rate_rad_s = 0.0;
};

inline Eigen::Vector2d forwardVec(double yaw_rad) {
  return {std::cos(yaw_rad), std::sin(yaw_rad)};
}
/// Body +y in world coordinates; note the body frame is left-handed when z
/// points up, hence the minus sign.
inline Eigen::Vector2d rightVec(double yaw_rad) {
  return {std::sin(yaw_rad), -std::cos(yaw_rad)};
}
inline Eigen::Vector2d bodyToWorld(double yaw_rad, const Eigen::Vector2d& v_body) {
  return v_body.x() * forwardVec(yaw_rad) + v_body.y() * rightVec(yaw_rad);
}

struct RayHit {
  double range_m = 0.0;  // along the ray
  int wall_index = -1;
  double along_wall_m = 0.0;
};

/// Nearest wall intersection of the ray leaving origin at world angle
/// theta; empty when the ray escapes the world.
std::optional<RayHit> castRay(const World2D& world, const Eigen::Vector2d& origin,
                              double theta_rad);

/// Shortest distance from a point to any wall (collision queries).
double distanceToWalls(const World2D& world, const Eigen::Vector2d& position);

struct RenderedStereo {
  StereoFrame frame;
  Eigen::ArrayXd true_depth_m;  // optical-axis depth per left-image column
  ColumnMask depth_valid;       // false where the column ray escapes
};

/// Deterministic stereo render: pure function of (world, pose, intrinsics,
/// seed).  Each column averages four sub-column rays; a seeded per-row
/// ripple of +-3 shades roughens the image vertically without adding
/// horizontal edges.  Rays that hit nothing produce a fixed sky shade.
RenderedStereo renderStereo(const World2D& world, const CameraPose& pose,
                            const CameraIntrinsics& intr, std::uint64_t seed);

/// Constant body-frame velocity / yaw-rate command, optionally ramped in
/// linearly over ramp_s to avoid a velocity step at t = 0.
struct MotionScript {
  Eigen::Vector2d velocity_body_m_s = Eigen::Vector2d::Zero();
  double yaw_rate_rad_s = 0.0;
  double ramp_s = 0.0;
  double duration_s = 1.0;
  double rate_hz = 30.0;
};

/// Forward-Euler pose integration at the frame rate; each returned pose
/// carries the instantaneous (ramp-scaled) velocity and yaw rate, so a
/// frame's ground truth matches the step that produced it.
std::vector<CameraPose> integrateTrajectory(const CameraPose& start,
                                            const MotionScript& script);

/// Renders every pose, writes frames/######_{l,r}.pgm plus manifest.json
/// under out_dir, and returns the loaded-equivalent manifest (ground truth
/// and gyro filled from the poses).
SequenceManifest generateSequence(const World2D& world,
                                  const std::vector<CameraPose>& poses,
                                  double rate_hz, const CameraIntrinsics& intr,
                                  std::uint64_t seed,
                                  const std::filesystem::path& out_dir);

}  // namespace edgefs
