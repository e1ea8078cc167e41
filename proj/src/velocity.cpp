#include "edgefs/velocity.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>

#include "edgefs/error.hpp"

namespace edgefs {

std::vector<FitPoint> scaleFlow(const FlowProfile& flow, const DepthProfile& depth,
                                const CameraIntrinsics& intr) {
  if (flow.size() != depth.size())
    fail(ErrorCode::LengthMismatch, "flow and depth profiles differ in length");
  const double focal = intr.focalPx();
  std::vector<FitPoint> points;
  points.reserve(static_cast<std::size_t>(flow.size()));
  for (Eigen::Index u = 0; u < flow.size(); ++u) {
    if (!flow.valid[u] || !depth.valid[u]) continue;
    const double omega_hat = flow.translational_px_s[u] / focal;  // 1/s
    points.push_back(
        {columnCenterX(intr, static_cast<double>(u)), depth.depth_m[u] * omega_hat});
  }
  return points;
}

VelocityEstimate fitVelocity(const std::vector<FitPoint>& points, int min_points,
                             double timestamp_s) {
  if (min_points < 2)
    fail(ErrorCode::BadConfig, "line fit requires min_points >= 2");
  VelocityEstimate estimate;
  estimate.timestamp_s = timestamp_s;
  estimate.n_points = static_cast<int>(points.size());
  if (estimate.n_points < min_points) return estimate;  // valid stays false

  const Eigen::Index n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixX2d design(n, 2);
  Eigen::VectorXd observed(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = points[static_cast<std::size_t>(i)].x_norm;
    design(i, 1) = 1.0;
    observed(i) = points[static_cast<std::size_t>(i)].y_scaled_m_s;
  }
  const Eigen::Vector2d beta = design.colPivHouseholderQr().solve(observed);
  // The depth-scaled flow line is y(x) = -vy + x * vx.
  estimate.vx_m_s = beta(0);
  estimate.vy_m_s = -beta(1);
  estimate.residual_rms =
      std::sqrt((design * beta - observed).squaredNorm() / static_cast<double>(n));
  estimate.valid = true;
  return estimate;
}

namespace {

double medianOf(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

VelocityEstimate medianVelocity(std::span<const VelocityEstimate> window) {
  std::vector<double> vx;
  std::vector<double> vy;
  const VelocityEstimate* newest_valid = nullptr;
  for (const VelocityEstimate& e : window) {
    if (!e.valid) continue;
    vx.push_back(e.vx_m_s);
    vy.push_back(e.vy_m_s);
    newest_valid = &e;
  }
  VelocityEstimate out;
  if (!window.empty()) out.timestamp_s = window.back().timestamp_s;
  if (vx.empty()) return out;  // nothing valid in the window
  out.vx_m_s = medianOf(vx);
  out.vy_m_s = medianOf(vy);
  out.n_points = newest_valid->n_points;
  out.residual_rms = newest_valid->residual_rms;
  out.valid = true;
  return out;
}

MedianVelocityFilter::MedianVelocityFilter(int window_size)
    : window_size_(window_size) {
  if (window_size < 1) fail(ErrorCode::BadConfig, "median window must be >= 1");
}

VelocityEstimate MedianVelocityFilter::push(const VelocityEstimate& estimate) {
  if (static_cast<int>(window_.size()) == window_size_) window_.pop_front();
  window_.push_back(estimate);
  // deque storage is not contiguous; snapshot the (tiny) window for the span
  const std::vector<VelocityEstimate> snapshot(window_.begin(), window_.end());
  return medianVelocity(snapshot);
}

MetricsReport computeMetrics(const Eigen::ArrayXd& estimates,
                             const Eigen::ArrayXd& truth) {
  if (estimates.size() != truth.size())
    fail(ErrorCode::LengthMismatch, "metric series differ in length");
  if (estimates.size() == 0)
    fail(ErrorCode::EmptyInput, "metrics need at least one sample");

  MetricsReport report;
  const Eigen::ArrayXd error = estimates - truth;
  report.mse = error.square().mean();
  report.var = (error - error.mean()).square().mean();

  const Eigen::ArrayXd e0 = estimates - estimates.mean();
  const Eigen::ArrayXd t0 = truth - truth.mean();
  const double denom = std::sqrt(e0.square().sum() * t0.square().sum());
  if (denom > 0.0) {
    report.nmxm = (e0 * t0).sum() / denom;
    report.nmxm_defined = true;
  } else {
    report.nmxm = std::numeric_limits<double>::quiet_NaN();
    report.nmxm_defined = false;
  }
  return report;
}

}  // namespace edgefs
