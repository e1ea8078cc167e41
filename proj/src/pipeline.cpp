#include "edgefs/pipeline.hpp"

#include "edgefs/edge_distribution.hpp"

namespace edgefs {

EdgeFsPipeline::EdgeFsPipeline(const CameraIntrinsics& intr,
                               const PipelineConfig& config)
    : intr_(intr),
      config_(config),
      flow_(intr, config.match, config.history_capacity),
      filter_(config.median_window) {
  intr_.validate();
}

FrameResult EdgeFsPipeline::process(const StereoFrame& frame) {
  FrameResult result;
  result.timestamp_s = frame.timestamp_s;

  const EdgeDistribution left = edgeDistribution(frame.left, frame.timestamp_s);
  const EdgeDistribution right = edgeDistribution(frame.right, frame.timestamp_s);

  const MatchProfile disparity = computeDisparity(left, right, config_.match);
  result.depth = disparityToDepth(disparity, intr_, config_.min_disparity_px);
  result.nearest_obstacle =
      nearestObstacle(result.depth, config_.obstacle_window_columns);

  result.flow = flow_.push(left, frame.gyro_z_rad_s);

  if (result.flow) {
    const std::vector<FitPoint> points = scaleFlow(*result.flow, result.depth, intr_);
    result.velocity_raw =
        fitVelocity(points, config_.min_fit_points, frame.timestamp_s);
  } else {
    result.velocity_raw.timestamp_s = frame.timestamp_s;  // warming up, invalid
  }
  result.velocity_filtered = filter_.push(result.velocity_raw);
  return result;
}

}  // namespace edgefs
