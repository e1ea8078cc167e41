#include "edgefs/scene_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "edgefs/error.hpp"

namespace edgefs {
namespace {

constexpr std::uint8_t kSkyShade = 40;
constexpr int kSubRays = 4;
constexpr int kDetailAmplitude = 28;     // grain spans +-12 shades
constexpr double kDetailStripeM = 0.04;  // grain scale in meters

double cross2(const Eigen::Vector2d& p, const Eigen::Vector2d& q) {
  return p.x() * q.y() - p.y() * q.x();
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seeded per-row brightness ripple in [-3, 3]; constant along a row, so it
// roughens the image without creating horizontal-gradient energy.
int rowRipple(std::uint64_t seed, int row) {
  return static_cast<int>(splitmix64(seed ^ (0x5DEECE66DULL * (row + 1))) % 7) - 3;
}

}  // namespace

double StripeTexture::sample(double pos_m) const {
  const auto it =
      std::upper_bound(boundaries_m.begin(), boundaries_m.end(), pos_m);
  const std::size_t idx =
      std::min(static_cast<std::size_t>(it - boundaries_m.begin()),
               shades.size() - 1);
  const double here = shades[idx];
  if (blend_m <= 0.0) return here;
  // Linear cross-fade around the nearest boundary.
  if (idx > 0) {
    const double from_left = pos_m - boundaries_m[idx - 1];
    if (from_left < 0.5 * blend_m)
      return 0.5 * (shades[idx - 1] + here) +
             (here - static_cast<double>(shades[idx - 1])) * from_left / blend_m;
  }
  if (idx + 1 < shades.size()) {
    const double to_right = boundaries_m[idx] - pos_m;
    if (to_right < 0.5 * blend_m)
      return 0.5 * (here + shades[idx + 1]) +
             (static_cast<double>(here) - shades[idx + 1]) * to_right / blend_m;
  }
  return here;
}

StripeTexture makeStripes(double length_m, double mean_stripe_m,
                          std::uint64_t seed, int shade_lo, int shade_hi,
                          int min_contrast) {
  if (!(length_m > 0.0) || !(mean_stripe_m > 0.0))
    fail(ErrorCode::BadConfig, "stripe texture needs positive lengths");
  if (shade_hi - shade_lo < 2 * min_contrast)
    fail(ErrorCode::BadConfig, "stripe shade span too narrow for contrast");

  std::mt19937_64 rng(seed);
  // log-uniform widths in [0.4, 2.2] x mean: multi-scale and aperiodic.
  std::uniform_real_distribution<double> log_width(std::log(0.4), std::log(2.2));
  std::uniform_int_distribution<int> shade(shade_lo, shade_hi);

  StripeTexture tex;
  tex.blend_m = 0.3 * mean_stripe_m;
  double pos = 0.0;
  int prev = -1000;
  while (pos < length_m) {
    pos += mean_stripe_m * std::exp(log_width(rng));
    int s = shade(rng);
    while (std::abs(s - prev) < min_contrast) s = shade(rng);
    tex.boundaries_m.push_back(pos);
    tex.shades.push_back(static_cast<std::uint8_t>(s));
    prev = s;
  }
  return tex;
}

double Wall::shadeAt(double pos_m) const {
  double shade = texture.sample(pos_m);
  if (!detail.shades.empty()) shade += detail.sample(pos_m) - kDetailAmplitude;
  return shade;
}

void addWall(World2D& world, const Eigen::Vector2d& a, const Eigen::Vector2d& b,
             double mean_stripe_m, std::uint64_t seed) {
  Wall wall{a, b, {}, {}};
  wall.texture = makeStripes(wall.length(), mean_stripe_m, seed);
  // Fine grain keeps even between-stripe windows matchable without enough
  // amplitude to compete with the stripe edges. Its blend is widened so the
  // per-column gradient mass shifts smoothly under sub-pixel image motion.
  wall.detail = makeStripes(wall.length(), kDetailStripeM, splitmix64(seed ^ 0xD7ULL),
                            0, 2 * kDetailAmplitude, kDetailAmplitude / 2);
  wall.detail.blend_m = 0.6 * kDetailStripeM;
  world.walls.push_back(std::move(wall));
}

void addBox(World2D& world, const Eigen::Vector2d& center, double half_extent_m,
            double mean_stripe_m, std::uint64_t seed) {
  const double hx = half_extent_m;
  const Eigen::Vector2d c = center;
  const Eigen::Vector2d corners[4] = {{c.x() - hx, c.y() - hx},
                                      {c.x() + hx, c.y() - hx},
                                      {c.x() + hx, c.y() + hx},
                                      {c.x() - hx, c.y() + hx}};
  for (int i = 0; i < 4; ++i)
    addWall(world, corners[i], corners[(i + 1) % 4], mean_stripe_m,
            splitmix64(seed ^ static_cast<std::uint64_t>(i + 1)));
}

World2D makeWorld(const std::string& preset, std::uint64_t seed,
                  double mean_stripe_m) {
  World2D world;
  if (preset == "flat-wall") {
    addWall(world, {-6.0, 0.0}, {6.0, 0.0}, mean_stripe_m, splitmix64(seed));
  } else if (preset == "room4x4") {
    const Eigen::Vector2d corners[4] = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
    for (int i = 0; i < 4; ++i)
      addWall(world, corners[i], corners[(i + 1) % 4], mean_stripe_m,
              splitmix64(seed ^ static_cast<std::uint64_t>(0x10 + i)));
  } else if (preset == "pole-field") {
    addWall(world, {-6.0, 0.0}, {6.0, 0.0}, mean_stripe_m, splitmix64(seed));
    addBox(world, {-0.5, -1.6}, 0.08, 0.05, splitmix64(seed ^ 0xA1ULL));
    addBox(world, {0.6, -2.3}, 0.08, 0.05, splitmix64(seed ^ 0xA2ULL));
  } else {
    fail(ErrorCode::BadConfig, "unknown world preset '" + preset + "'");
  }
  return world;
}

std::optional<RayHit> castRay(const World2D& world, const Eigen::Vector2d& origin,
                              double theta_rad) {
  const Eigen::Vector2d dir(std::cos(theta_rad), std::sin(theta_rad));
  std::optional<RayHit> nearest;
  for (std::size_t i = 0; i < world.walls.size(); ++i) {
    const Wall& wall = world.walls[i];
    const Eigen::Vector2d d = wall.b - wall.a;
    const double det = cross2(d, dir);
    if (std::abs(det) < 1e-12) continue;  // parallel
    const Eigen::Vector2d rel = wall.a - origin;
    const double t = cross2(d, rel) / det;
    const double s = cross2(dir, rel) / det;
    if (t <= 1e-9 || s < 0.0 || s > 1.0) continue;
    if (!nearest || t < nearest->range_m)
      nearest = RayHit{t, static_cast<int>(i), s * wall.length()};
  }
  return nearest;
}

double distanceToWalls(const World2D& world, const Eigen::Vector2d& position) {
  double best = std::numeric_limits<double>::infinity();
  for (const Wall& wall : world.walls) {
    const Eigen::Vector2d d = wall.b - wall.a;
    const double len2 = d.squaredNorm();
    double s = len2 > 0.0 ? (position - wall.a).dot(d) / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    best = std::min(best, (position - (wall.a + s * d)).norm());
  }
  return best;
}

namespace {

GrayImage renderEye(const World2D& world, const Eigen::Vector2d& origin,
                    double yaw_rad, const CameraIntrinsics& intr,
                    std::uint64_t seed) {
  const int w = intr.width_px;
  const int h = intr.height_px;
  const double focal = intr.focalPx();
  GrayImage image(h, w);

  Eigen::ArrayXd sharp(w);
  for (int u = 0; u < w; ++u) {
    double acc = 0.0;
    for (int sub = 0; sub < kSubRays; ++sub) {
      const double x_norm =
          (u + (sub + 0.5) / kSubRays - 0.5 * w) / focal;
      // Positive x is right of the optical axis, which for a yaw
      // counter-clockwise from +x means a *smaller* world angle.
      const double theta = yaw_rad - std::atan(x_norm);
      const std::optional<RayHit> hit = castRay(world, origin, theta);
      acc += hit ? world.walls[static_cast<std::size_t>(hit->wall_index)]
                       .shadeAt(hit->along_wall_m)
                 : kSkyShade;
    }
    sharp[u] = acc / kSubRays;
  }

  // Approximate the lens point-spread function with a 5-tap binomial blur
  // (sigma ~ 1 px). This keeps edge gradients spread over a few columns at
  // every depth, the way real optics do.
  for (int u = 0; u < w; ++u) {
    double blurred = 0.0;
    double weight = 0.0;
    static constexpr double kPsf[5] = {1.0, 4.0, 6.0, 4.0, 1.0};
    for (int k = -2; k <= 2; ++k) {
      const int j = u + k;
      if (j < 0 || j >= w) continue;
      blurred += kPsf[k + 2] * sharp[j];
      weight += kPsf[k + 2];
    }
    const int base = static_cast<int>(std::lround(blurred / weight));
    for (int v = 0; v < h; ++v) {
      const int shade = std::clamp(base + rowRipple(seed, v), 0, 255);
      image(v, u) = static_cast<std::uint8_t>(shade);
    }
  }
  return image;
}

}  // namespace

RenderedStereo renderStereo(const World2D& world, const CameraPose& pose,
                            const CameraIntrinsics& intr, std::uint64_t seed) {
  intr.validate();
  const Eigen::Vector2d right = rightVec(pose.yaw_rad);
  const Eigen::Vector2d left_origin =
      pose.position_m - 0.5 * intr.baseline_m * right;
  const Eigen::Vector2d right_origin =
      pose.position_m + 0.5 * intr.baseline_m * right;

  RenderedStereo out;
  out.frame.timestamp_s = 0.0;
  out.frame.gyro_z_rad_s = pose.yaw_rate_rad_s;
  out.frame.left = renderEye(world, left_origin, pose.yaw_rad, intr, seed);
  out.frame.right = renderEye(world, right_origin, pose.yaw_rad, intr, seed);

  // Ground truth: optical-axis depth of the left camera's column-center ray.
  out.true_depth_m = Eigen::ArrayXd::Zero(intr.width_px);
  out.depth_valid = ColumnMask::Constant(intr.width_px, false);
  for (int u = 0; u < intr.width_px; ++u) {
    const double x_norm = columnCenterX(intr, u);
    const double bearing = std::atan(x_norm);
    const std::optional<RayHit> hit =
        castRay(world, left_origin, pose.yaw_rad - bearing);
    if (!hit) continue;
    out.true_depth_m[u] = hit->range_m * std::cos(bearing);
    out.depth_valid[u] = true;
  }
  return out;
}

std::vector<CameraPose> integrateTrajectory(const CameraPose& start,
                                            const MotionScript& script) {
  if (!(script.rate_hz > 0.0) || !(script.duration_s > 0.0))
    fail(ErrorCode::BadConfig, "trajectory needs positive rate and duration");
  const double dt = 1.0 / script.rate_hz;
  const int frames =
      static_cast<int>(std::lround(script.duration_s * script.rate_hz));

  std::vector<CameraPose> poses;
  poses.reserve(static_cast<std::size_t>(frames));
  CameraPose pose = start;
  for (int k = 0; k < frames; ++k) {
    const double t = k * dt;
    const double scale =
        script.ramp_s > 0.0 ? std::min(t / script.ramp_s, 1.0) : 1.0;
    pose.velocity_body_m_s = scale * script.velocity_body_m_s;
    pose.yaw_rate_rad_s = scale * script.yaw_rate_rad_s;
    poses.push_back(pose);
    pose.position_m += bodyToWorld(pose.yaw_rad, pose.velocity_body_m_s) * dt;
    pose.yaw_rad += pose.yaw_rate_rad_s * dt;
  }
  return poses;
}

SequenceManifest generateSequence(const World2D& world,
                                  const std::vector<CameraPose>& poses,
                                  double rate_hz, const CameraIntrinsics& intr,
                                  std::uint64_t seed,
                                  const std::filesystem::path& out_dir) {
  if (poses.empty()) fail(ErrorCode::EmptyInput, "no poses to render");
  if (!(rate_hz > 0.0)) fail(ErrorCode::BadConfig, "frame rate must be positive");
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "frames", ec);
  if (ec)
    fail(ErrorCode::WriteFailure, "cannot create " + (out_dir / "frames").string());

  SequenceManifest manifest;
  manifest.intrinsics = intr;
  manifest.base_dir = out_dir;

  char name[64];
  for (std::size_t k = 0; k < poses.size(); ++k) {
    const CameraPose& pose = poses[k];
    const RenderedStereo rendered = renderStereo(world, pose, intr, seed);

    FrameRecord rec;
    rec.timestamp_s = static_cast<double>(k) / rate_hz;
    std::snprintf(name, sizeof(name), "frames/%06zu_l.pgm", k);
    rec.left_path = name;
    std::snprintf(name, sizeof(name), "frames/%06zu_r.pgm", k);
    rec.right_path = name;
    rec.gyro_z_rad_s = pose.yaw_rate_rad_s;
    rec.ground_truth =
        GroundTruth{pose.velocity_body_m_s.x(), pose.velocity_body_m_s.y(),
                    pose.yaw_rad, pose.position_m.x(), pose.position_m.y()};

    savePgm(rendered.frame.left, out_dir / rec.left_path);
    savePgm(rendered.frame.right, out_dir / rec.right_path);
    manifest.frames.push_back(std::move(rec));
  }
  saveManifest(manifest);
  return manifest;
}

}  // namespace edgefs
