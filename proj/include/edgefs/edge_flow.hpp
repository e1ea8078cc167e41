#pragma once

#include <Eigen/Core>
#include <deque>
#include <optional>

#include "edgefs/block_matcher.hpp"
#include "edgefs/camera.hpp"
#include "edgefs/edge_distribution.hpp"

namespace edgefs {

/// Ring buffer of recent edge distributions, newest last.  Pushes must carry
/// strictly increasing timestamps (throws NonMonotonicTimestamps).
class DistributionHistory {
 public:
  explicit DistributionHistory(int capacity = 10);

  void push(EdgeDistribution distribution);

  int size() const { return static_cast<int>(buffer_.size()); }
  int capacity() const { return capacity_; }

  /// n = 0 is the newest entry, n = size()-1 the oldest retained.
  const EdgeDistribution& fromLatest(int n) const;

  /// Time between the newest entry and the one n steps back (positive).
  double elapsedSeconds(int n) const;

 private:
  int capacity_;
  std::deque<EdgeDistribution> buffer_;
};

/// Rotational (yaw-induced) image flow in px/s: gyro_z * width / fov_h.
/// Constant across columns under the linear pixel-angle mapping.
inline double derotationFlowPxS(double gyro_z_rad_s, const CameraIntrinsics& intr) {
  return gyro_z_rad_s * intr.width_px / intr.fov_h_rad;
}

/// Adaptive comparison horizon: picks how many frames back to match so the
/// expected displacement lands near target_px (default 3 px), clamped to the
/// available history.  prev_flow is the previous frame's mean absolute flow
/// in px/frame; floor_px guards the division when the scene barely moves.
/// Throws InsufficientHistory when fewer than two entries exist.
int selectHorizon(double prev_flow_px_per_frame, const DistributionHistory& history,
                  double target_px = 3.0, double floor_px = 0.05);

/// Temporal matching output, all in px/s over the measured interval.
/// Invariant: flow == translational + rotational wherever valid.
struct FlowProfile {
  Eigen::ArrayXd flow_px_s;
  Eigen::ArrayXd translational_px_s;
  double rotational_px_s = 0.0;
  ColumnMask valid;
  int horizon_frames = 0;
  double elapsed_s = 0.0;
  double timestamp_s = 0.0;

  Eigen::Index size() const { return flow_px_s.size(); }
};

/// One temporal-matching pass against the history: selects the horizon,
/// pre-shifts the search by the rounded rotational displacement, matches,
/// and splits the measured flow into rotational and translational parts.
FlowProfile computeFlow(const DistributionHistory& history,
                        double prev_flow_px_per_frame, double gyro_z_rad_s,
                        const CameraIntrinsics& intr, const MatchConfig& config);

/// Stateful wrapper: owns the history and the previous-flow estimate that
/// drives the horizon choice.  Returns nothing for the very first frame.
class EdgeFlow {
 public:
  EdgeFlow(const CameraIntrinsics& intr, const MatchConfig& config,
           int history_capacity = 10);

  std::optional<FlowProfile> push(EdgeDistribution distribution,
                                  double gyro_z_rad_s);

  double previousFlowPxPerFrame() const { return prev_flow_px_per_frame_; }
  const DistributionHistory& history() const { return history_; }

 private:
  CameraIntrinsics intr_;
  MatchConfig config_;
  DistributionHistory history_;
  double prev_flow_px_per_frame_ = 0.0;
};

}  // namespace edgefs
