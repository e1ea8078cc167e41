#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <vector>

#include "edgefs/pipeline.hpp"
#include "edgefs/scene_sim.hpp"

namespace edgefs {

enum class NavMode { Check, Forward, Hover, Turn };

const char* toString(NavMode mode);

struct NavConfig {
  double obstacle_threshold_m = 1.0;
  double cruise_speed_m_s = 0.3;
  double hover_duration_s = 1.0;
  double turn_angle_rad = degToRad(60.0);
  double turn_rate_rad_s = 1.0;
  double ff_distance_m = 0.8;  // force field engages inside this distance
  double ff_gain = 0.5;        // (m/s) per meter of incursion
  double tracking_tau_s = 0.3;
  double collision_radius_m = 0.05;
  double rate_hz = 30.0;
  bool randomize_turn_direction = true;
};

struct NavCommand {
  Eigen::Vector2d velocity_ref_body = Eigen::Vector2d::Zero();
  double yaw_rate_ref = 0.0;
};

/// Four-state avoidance logic.  All decisions consume only the perceived
/// nearest-obstacle distance, never world geometry:
///   Check   -> Forward when the way ahead is clear, else Hover
///   Forward -> Hover when an obstacle comes inside obstacle_threshold_m
///   Hover   -> Turn after exactly hover_duration_s at zero reference
///   Turn    -> Check after exactly turn_angle_rad at turn_rate_rad_s
///              (final tick's rate clamped so the angle is hit, not crossed)
class NavFsm {
 public:
  NavFsm(const NavConfig& config, std::uint64_t seed);

  NavCommand step(std::optional<double> nearest_m, double t_s, double dt_s);

  NavMode mode() const { return mode_; }
  int turnDirection() const { return turn_direction_; }

 private:
  NavConfig config_;
  NavMode mode_ = NavMode::Check;
  double mode_entry_t_s_ = 0.0;
  double turn_accumulated_rad_ = 0.0;
  int turn_direction_ = 1;  // +1 turns left (counter-clockwise)
  std::mt19937_64 rng_;
};

/// Repulsive forward-velocity correction: 0 beyond ff_distance_m, then
/// -ff_gain * (ff_distance_m - nearest), pushing backwards the deeper the
/// incursion.  An undetected obstacle (empty optional) contributes nothing.
double forceFieldForward(std::optional<double> nearest_m, const NavConfig& config);

/// First-order velocity tracking v += (dt/tau)(ref - v); yaw follows the
/// commanded rate directly; position integrates the updated velocity.
void stepDynamics(CameraPose& pose, const Eigen::Vector2d& velocity_ref_body,
                  double yaw_rate_ref, double dt_s, double tau_s);

bool inCollision(const World2D& world, const Eigen::Vector2d& position_m,
                 double radius_m);

struct EpisodeTick {
  double t_s = 0.0;
  NavMode mode = NavMode::Check;
  Eigen::Vector2d position_m = Eigen::Vector2d::Zero();
  double yaw_rad = 0.0;
  Eigen::Vector2d velocity_body_m_s = Eigen::Vector2d::Zero();  // true
  std::optional<double> nearest_m;  // perceived
  VelocityEstimate velocity_filtered;
};

struct EpisodeLog {
  std::uint64_t seed = 0;
  std::vector<EpisodeTick> ticks;
  bool collision = false;
  double duration_s = 0.0;
  std::array<int, 4> mode_tick_counts{};  // indexed by NavMode

  int modeTicks(NavMode m) const {
    return mode_tick_counts[static_cast<int>(m)];
  }
};

/// Closed loop at rate_hz: render -> pipeline -> FSM + force field ->
/// dynamics, until max_duration_s or a collision.  The controller sees only
/// pipeline outputs; world geometry is used for rendering and collision
/// checking alone.  Deterministic for a given (world, start, configs, seed).
EpisodeLog runEpisode(const World2D& world, const CameraPose& start,
                      const CameraIntrinsics& intr, const NavConfig& nav_config,
                      const PipelineConfig& pipeline_config, std::uint64_t seed,
                      double max_duration_s);

/// Start pose for a room4x4 episode: room center, heading seeded uniformly.
CameraPose room4x4StartPose(std::uint64_t seed);

void writeEpisodeCsv(const EpisodeLog& log, const std::filesystem::path& path);
void writeEpisodeSummary(const EpisodeLog& log, const std::filesystem::path& path);

}  // namespace edgefs
