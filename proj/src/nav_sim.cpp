#include "edgefs/nav_sim.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>

#include <nlohmann/json.hpp>

#include "edgefs/error.hpp"

namespace edgefs {

const char* toString(NavMode mode) {
  switch (mode) {
    case NavMode::Check:
      return "check";
    case NavMode::Forward:
      return "forward";
    case NavMode::Hover:
      return "hover";
    case NavMode::Turn:
      return "turn";
  }
  return "?";
}

NavFsm::NavFsm(const NavConfig& config, std::uint64_t seed)
    : config_(config), rng_(seed) {}

NavCommand NavFsm::step(std::optional<double> nearest_m, double t_s, double dt_s) {
  NavCommand cmd;
  switch (mode_) {
    case NavMode::Check: {
      const bool clear =
          !nearest_m || *nearest_m > config_.obstacle_threshold_m;
      mode_ = clear ? NavMode::Forward : NavMode::Hover;
      mode_entry_t_s_ = t_s;
      // The new mode acts on this very tick.
      return step(nearest_m, t_s, dt_s);
    }
    case NavMode::Forward: {
      if (nearest_m && *nearest_m < config_.obstacle_threshold_m) {
        mode_ = NavMode::Hover;
        mode_entry_t_s_ = t_s;
        return step(nearest_m, t_s, dt_s);
      }
      cmd.velocity_ref_body = {config_.cruise_speed_m_s, 0.0};
      return cmd;
    }
    case NavMode::Hover: {
      if (t_s - mode_entry_t_s_ >= config_.hover_duration_s - 1e-9) {
        mode_ = NavMode::Turn;
        mode_entry_t_s_ = t_s;
        turn_accumulated_rad_ = 0.0;
        turn_direction_ =
            config_.randomize_turn_direction
                ? (std::uniform_int_distribution<int>(0, 1)(rng_) * 2 - 1)
                : 1;
        return step(nearest_m, t_s, dt_s);
      }
      return cmd;  // zero references: hold position
    }
    case NavMode::Turn: {
      const double remaining = config_.turn_angle_rad - turn_accumulated_rad_;
      const double full_step = config_.turn_rate_rad_s * dt_s;
      if (remaining <= full_step + 1e-12) {
        // Clamp the last tick so the heading change is the turn angle
        // exactly, then re-evaluate the scene from Check next tick.
        cmd.yaw_rate_ref = turn_direction_ * (remaining / dt_s);
        turn_accumulated_rad_ = config_.turn_angle_rad;
        mode_ = NavMode::Check;
        mode_entry_t_s_ = t_s + dt_s;
      } else {
        cmd.yaw_rate_ref = turn_direction_ * config_.turn_rate_rad_s;
        turn_accumulated_rad_ += full_step;
      }
      return cmd;
    }
  }
  return cmd;
}

double forceFieldForward(std::optional<double> nearest_m, const NavConfig& config) {
  if (!nearest_m || *nearest_m >= config.ff_distance_m) return 0.0;
  return -config.ff_gain * (config.ff_distance_m - *nearest_m);
}

void stepDynamics(CameraPose& pose, const Eigen::Vector2d& velocity_ref_body,
                  double yaw_rate_ref, double dt_s, double tau_s) {
  if (!(tau_s > 0.0)) fail(ErrorCode::BadConfig, "tracking tau must be positive");
  pose.velocity_body_m_s += (dt_s / tau_s) * (velocity_ref_body - pose.velocity_body_m_s);
  pose.yaw_rate_rad_s = yaw_rate_ref;
  pose.position_m += bodyToWorld(pose.yaw_rad, pose.velocity_body_m_s) * dt_s;
  pose.yaw_rad += yaw_rate_ref * dt_s;
}

bool inCollision(const World2D& world, const Eigen::Vector2d& position_m,
                 double radius_m) {
  return distanceToWalls(world, position_m) < radius_m;
}

EpisodeLog runEpisode(const World2D& world, const CameraPose& start,
                      const CameraIntrinsics& intr, const NavConfig& nav_config,
                      const PipelineConfig& pipeline_config, std::uint64_t seed,
                      double max_duration_s) {
  EpisodeLog log;
  log.seed = seed;

  EdgeFsPipeline pipeline(intr, pipeline_config);
  NavFsm fsm(nav_config, seed);
  CameraPose pose = start;
  const double dt = 1.0 / nav_config.rate_hz;
  const int max_ticks =
      static_cast<int>(std::lround(max_duration_s * nav_config.rate_hz));
  double prev_yaw_rate = 0.0;

  for (int k = 0; k < max_ticks; ++k) {
    const double t = k * dt;

    RenderedStereo rendered = renderStereo(world, pose, intr, seed);
    StereoFrame frame = std::move(rendered.frame);
    frame.timestamp_s = t;
    // The gyro reports the rotation applied over the interval that ended at
    // this frame, which is what temporal matching must derotate.
    frame.gyro_z_rad_s = prev_yaw_rate;

    const FrameResult result = pipeline.process(frame);
    std::optional<double> nearest;
    if (result.nearest_obstacle) nearest = result.nearest_obstacle->distance_m;

    const NavCommand cmd = fsm.step(nearest, t, dt);
    Eigen::Vector2d velocity_ref = cmd.velocity_ref_body;
    velocity_ref.x() += forceFieldForward(nearest, nav_config);

    EpisodeTick tick;
    tick.t_s = t;
    tick.mode = fsm.mode();
    tick.position_m = pose.position_m;
    tick.yaw_rad = pose.yaw_rad;
    tick.velocity_body_m_s = pose.velocity_body_m_s;
    tick.nearest_m = nearest;
    tick.velocity_filtered = result.velocity_filtered;
    log.ticks.push_back(tick);
    log.mode_tick_counts[static_cast<int>(fsm.mode())]++;

    stepDynamics(pose, velocity_ref, cmd.yaw_rate_ref, dt,
                 nav_config.tracking_tau_s);
    prev_yaw_rate = cmd.yaw_rate_ref;
    log.duration_s = (k + 1) * dt;

    if (inCollision(world, pose.position_m, nav_config.collision_radius_m)) {
      log.collision = true;
      break;
    }
  }
  return log;
}

CameraPose room4x4StartPose(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CameraPose pose;
  pose.position_m = {2.0, 2.0};
  pose.yaw_rad =
      std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
  return pose;
}

void writeEpisodeCsv(const EpisodeLog& log, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(ErrorCode::WriteFailure, "cannot create " + path.string());
  out << "t,mode,x,y,yaw,vx_true,vy_true,nearest_m,vx_est,vy_est,est_valid,"
         "n_points,residual_rms\n";
  char line[512];
  for (const EpisodeTick& tick : log.ticks) {
    const VelocityEstimate& est = tick.velocity_filtered;
    std::snprintf(line, sizeof(line),
                  "%.6f,%s,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%d,%d,%.6f\n",
                  tick.t_s, toString(tick.mode), tick.position_m.x(),
                  tick.position_m.y(), tick.yaw_rad,
                  tick.velocity_body_m_s.x(), tick.velocity_body_m_s.y(),
                  tick.nearest_m ? *tick.nearest_m
                                 : std::numeric_limits<double>::quiet_NaN(),
                  est.valid ? est.vx_m_s : std::numeric_limits<double>::quiet_NaN(),
                  est.valid ? est.vy_m_s : std::numeric_limits<double>::quiet_NaN(),
                  est.valid ? 1 : 0, est.n_points, est.residual_rms);
    out << line;
  }
  if (!out) fail(ErrorCode::WriteFailure, "short write to " + path.string());
}

void writeEpisodeSummary(const EpisodeLog& log, const std::filesystem::path& path) {
  nlohmann::json summary;
  summary["seed"] = log.seed;
  summary["duration_s"] = log.duration_s;
  summary["collision"] = log.collision;
  summary["ticks"] = log.ticks.size();
  summary["mode_ticks"] = {{"check", log.modeTicks(NavMode::Check)},
                           {"forward", log.modeTicks(NavMode::Forward)},
                           {"hover", log.modeTicks(NavMode::Hover)},
                           {"turn", log.modeTicks(NavMode::Turn)}};
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(ErrorCode::WriteFailure, "cannot create " + path.string());
  out << summary.dump(2) << "\n";
  if (!out) fail(ErrorCode::WriteFailure, "short write to " + path.string());
}

}  // namespace edgefs
