#pragma once

#include <Eigen/Core>

#include "edgefs/block_matcher.hpp"
#include "edgefs/camera.hpp"
#include "edgefs/image.hpp"

namespace edgefs {
namespace oracles {

/// Reference implementation of the 1-D block search, written directly from
/// the documented contract with no code shared with the production matcher.
/// Deliberately naive (full scan, no early exit) so it can referee.
MatchProfile exhaustiveMatch1d(const EdgeDistribution& reference,
                               const EdgeDistribution& target,
                               const MatchConfig& config,
                               const Eigen::ArrayXi& shift_px);

MatchProfile exhaustiveMatch1d(const EdgeDistribution& reference,
                               const EdgeDistribution& target,
                               const MatchConfig& config);

/// Dense 2-D block-matching flow on a coarse pixel grid: the cost baseline
/// the column-compressed pipeline is benchmarked against, and a sanity
/// cross-check for planted rigid shifts.
struct DenseFlowField {
  int grid_step_px = 0;
  int origin_px = 0;  // row/col of the first grid sample
  Eigen::ArrayXXd du_px;  // one row per grid row, one col per grid column
  Eigen::ArrayXXd dv_px;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> valid;
};

/// Exhaustive window_px^2 SAD over displacements within +-search_range_px on
/// both axes, sampled every grid_step_px.  Ties go to the displacement of
/// smallest squared magnitude, then smaller dv, then smaller du.
DenseFlowField denseBlockFlow(const GrayImage& from, const GrayImage& to,
                              const MatchConfig& config, int grid_step_px = 4);

/// Closed-form per-column flow prediction for a rigid camera motion
/// (vx forward, vy right, yaw rate omega) against per-column depths:
///
///   flow(x) = (-vy + x * vx) / depth(x) + omega      [normalized units/s]
///
/// Multiply by focalPx() for px/s.  Columns with depth <= 0 are left at 0.
Eigen::ArrayXd analyticFlow(const CameraIntrinsics& intr, double vx_m_s,
                            double vy_m_s, double omega_rad_s,
                            const Eigen::ArrayXd& depth_m);

}  // namespace oracles
}  // namespace edgefs
