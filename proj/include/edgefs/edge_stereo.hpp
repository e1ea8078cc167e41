#pragma once

#include <Eigen/Core>
#include <optional>

#include "edgefs/block_matcher.hpp"
#include "edgefs/camera.hpp"
#include "edgefs/edge_distribution.hpp"

namespace edgefs {

/// Column-wise disparity between a simultaneous left/right distribution
/// pair.  Matching runs with the right distribution as reference and a
/// one-sided search [0, search_range_px]: left-image content sits to the
/// right of the corresponding right-image content, so the displacement is
/// the (non-negative) disparity directly.  Columns are indexed in the
/// reference (right) image.
MatchProfile computeDisparity(const EdgeDistribution& left,
                              const EdgeDistribution& right,
                              const MatchConfig& config);

/// Metric depth per column.  valid marks columns where depth is defined:
/// the match succeeded and disparity >= min_disparity_px (below that the
/// target is beyond the measurable range, not at some made-up distance).
struct DepthProfile {
  Eigen::ArrayXd disparity_px;
  Eigen::ArrayXd depth_m;
  ColumnMask valid;

  Eigen::Index size() const { return depth_m.size(); }
  int validCount() const { return static_cast<int>(valid.count()); }
};

/// depth = width * baseline / (fov_h * disparity), applied where defined.
DepthProfile disparityToDepth(const MatchProfile& disparity,
                              const CameraIntrinsics& intr,
                              double min_disparity_px = 0.25);

struct ObstacleHit {
  double distance_m = 0.0;
  int column = 0;  // center column of the minimizing window
};

/// Minimum over all windows of window_columns consecutive fully-valid
/// columns of the windowed mean depth; single-column dropouts therefore
/// cannot fake a near obstacle.  Empty optional when no such window exists.
std::optional<ObstacleHit> nearestObstacle(const DepthProfile& depth,
                                           int window_columns = 11);

}  // namespace edgefs
