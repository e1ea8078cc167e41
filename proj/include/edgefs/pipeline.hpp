#pragma once

#include <optional>

#include "edgefs/edge_flow.hpp"
#include "edgefs/edge_stereo.hpp"
#include "edgefs/frame_io.hpp"
#include "edgefs/velocity.hpp"

namespace edgefs {

struct PipelineConfig {
  MatchConfig match;  // shared window/range for temporal and stereo matching
  int history_capacity = 10;
  int min_fit_points = 20;
  double min_disparity_px = 0.25;
  int obstacle_window_columns = 11;
  int median_window = 5;
};

/// Everything the pipeline derives from one stereo frame.  flow is absent
/// for the very first frame; velocity estimates carry their own valid flag.
struct FrameResult {
  double timestamp_s = 0.0;
  DepthProfile depth;
  std::optional<ObstacleHit> nearest_obstacle;
  std::optional<FlowProfile> flow;
  VelocityEstimate velocity_raw;
  VelocityEstimate velocity_filtered;
};

/// Full per-frame chain: edge distributions -> stereo depth + temporal flow
/// -> depth-scaled line fit -> median-filtered body velocity.
class EdgeFsPipeline {
 public:
  EdgeFsPipeline(const CameraIntrinsics& intr, const PipelineConfig& config);

  FrameResult process(const StereoFrame& frame);

  const CameraIntrinsics& intrinsics() const { return intr_; }
  const PipelineConfig& config() const { return config_; }

 private:
  CameraIntrinsics intr_;
  PipelineConfig config_;
  EdgeFlow flow_;
  MedianVelocityFilter filter_;
};

}  // namespace edgefs
