#include "edgefs/edge_stereo.hpp"

#include <limits>

#include "edgefs/error.hpp"

namespace edgefs {

MatchProfile computeDisparity(const EdgeDistribution& left,
                              const EdgeDistribution& right,
                              const MatchConfig& config) {
  MatchConfig one_sided = config;
  one_sided.search_min_px = 0;
  one_sided.search_max_px = config.search_range_px;
  return matchProfiles(right, left, one_sided);
}

DepthProfile disparityToDepth(const MatchProfile& disparity,
                              const CameraIntrinsics& intr,
                              double min_disparity_px) {
  if (!(min_disparity_px > 0.0))
    fail(ErrorCode::BadConfig, "minimum disparity must be positive");
  intr.validate();
  const Eigen::Index w = disparity.displacement_px.size();

  DepthProfile depth;
  depth.disparity_px = Eigen::ArrayXd::Zero(w);
  depth.depth_m = Eigen::ArrayXd::Zero(w);
  depth.valid = ColumnMask::Constant(w, false);

  const double scale = intr.depthScalePxM();
  for (Eigen::Index i = 0; i < w; ++i) {
    if (!disparity.valid[i]) continue;
    const double s = disparity.displacement_px[i];
    depth.disparity_px[i] = s;
    // Below the floor the column is beyond measurable range, not at some
    // enormous depth; it stays invalid rather than reporting a number.
    if (s < min_disparity_px) continue;
    depth.depth_m[i] = scale / s;
    depth.valid[i] = true;
  }
  return depth;
}

std::optional<ObstacleHit> nearestObstacle(const DepthProfile& depth,
                                           int window_columns) {
  if (window_columns < 1 || window_columns % 2 == 0)
    fail(ErrorCode::BadConfig, "obstacle window must be odd and >= 1");
  const int w = static_cast<int>(depth.size());
  const int hw = (window_columns - 1) / 2;

  std::optional<ObstacleHit> best;
  for (int center = hw; center < w - hw; ++center) {
    double sum = 0.0;
    bool all_valid = true;
    for (int j = -hw; j <= hw; ++j) {
      if (!depth.valid[center + j]) {
        all_valid = false;
        break;
      }
      sum += depth.depth_m[center + j];
    }
    if (!all_valid) continue;
    const double mean = sum / window_columns;
    if (!best || mean < best->distance_m) best = ObstacleHit{mean, center};
  }
  return best;
}

}  // namespace edgefs
