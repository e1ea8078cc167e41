#pragma once

#include <Eigen/Core>
#include <deque>
#include <span>
#include <vector>

#include "edgefs/camera.hpp"
#include "edgefs/edge_flow.hpp"
#include "edgefs/edge_stereo.hpp"

namespace edgefs {

/// One column's contribution to the velocity fit: normalized image
/// coordinate x and depth-scaled translational flow in m/s.
struct FitPoint {
  double x_norm = 0.0;
  double y_scaled_m_s = 0.0;
};

/// Body-frame velocity estimate (x forward, y right).  valid is false while
/// warming up or when too few columns survive the masks.
struct VelocityEstimate {
  double vx_m_s = 0.0;
  double vy_m_s = 0.0;
  int n_points = 0;
  double residual_rms = 0.0;
  double timestamp_s = 0.0;
  bool valid = false;
};

/// Converts a flow/depth profile pair into fit points on the columns where
/// both are valid: y = depth * translational_flow / focal.  The depth-scaled
/// flow obeys y(x) = -vy + x * vx, which the fit inverts.
std::vector<FitPoint> scaleFlow(const FlowProfile& flow, const DepthProfile& depth,
                                const CameraIntrinsics& intr);

/// Ordinary least squares line through the fit points: slope -> vx,
/// negated intercept -> vy.  Invalid (not an error) below min_points.
VelocityEstimate fitVelocity(const std::vector<FitPoint>& points,
                             int min_points = 20, double timestamp_s = 0.0);

/// Component-wise median over the valid estimates in the window; an
/// even count averages the two middle values.  Diagnostics (n_points,
/// residual, timestamp) are carried over from the newest entry.  Returns an
/// invalid estimate when nothing in the window is valid.
VelocityEstimate medianVelocity(std::span<const VelocityEstimate> window);

/// Keeps the last window_size estimates (valid or not) and reports the
/// running median of the valid ones.
class MedianVelocityFilter {
 public:
  explicit MedianVelocityFilter(int window_size = 5);

  VelocityEstimate push(const VelocityEstimate& estimate);
  int fill() const { return static_cast<int>(window_.size()); }

 private:
  int window_size_;
  std::deque<VelocityEstimate> window_;
};

/// Agreement metrics between an estimate series and ground truth.
/// nmxm is the lag-0 normalized cross-correlation of the mean-removed
/// series; it is undefined (flagged, value NaN) when either side has zero
/// variance.
struct MetricsReport {
  double mse = 0.0;
  double var = 0.0;  // variance of the error about its own mean
  double nmxm = 0.0;
  bool nmxm_defined = false;
};

MetricsReport computeMetrics(const Eigen::ArrayXd& estimates,
                             const Eigen::ArrayXd& truth);

}  // namespace edgefs
