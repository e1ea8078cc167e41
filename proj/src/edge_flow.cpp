#include "edgefs/edge_flow.hpp"

#include <cmath>
#include <utility>

#include "edgefs/error.hpp"

namespace edgefs {

DistributionHistory::DistributionHistory(int capacity) : capacity_(capacity) {
  if (capacity < 2)
    fail(ErrorCode::BadConfig, "history needs capacity >= 2 to ever match");
}

void DistributionHistory::push(EdgeDistribution distribution) {
  if (!buffer_.empty() &&
      !(distribution.source_timestamp_s > buffer_.back().source_timestamp_s))
    fail(ErrorCode::NonMonotonicTimestamps,
         "distribution timestamps must strictly increase");
  if (static_cast<int>(buffer_.size()) == capacity_) buffer_.pop_front();
  buffer_.push_back(std::move(distribution));
}

const EdgeDistribution& DistributionHistory::fromLatest(int n) const {
  if (n < 0 || n >= size())
    fail(ErrorCode::InsufficientHistory,
         "history holds " + std::to_string(size()) + " entries, asked for " +
             std::to_string(n) + " back");
  return buffer_[buffer_.size() - 1 - static_cast<std::size_t>(n)];
}

double DistributionHistory::elapsedSeconds(int n) const {
  return fromLatest(0).source_timestamp_s - fromLatest(n).source_timestamp_s;
}

int selectHorizon(double prev_flow_px_per_frame, const DistributionHistory& history,
                  double target_px, double floor_px) {
  if (history.size() < 2)
    fail(ErrorCode::InsufficientHistory, "horizon selection needs two frames");
  const double magnitude = std::max(std::abs(prev_flow_px_per_frame), floor_px);
  const int wanted = static_cast<int>(std::lround(target_px / magnitude));
  return std::clamp(wanted, 1, history.size() - 1);
}

FlowProfile computeFlow(const DistributionHistory& history,
                        double prev_flow_px_per_frame, double gyro_z_rad_s,
                        const CameraIntrinsics& intr, const MatchConfig& config) {
  const int n = selectHorizon(prev_flow_px_per_frame, history);
  const EdgeDistribution& older = history.fromLatest(n);
  const EdgeDistribution& current = history.fromLatest(0);
  const double elapsed = history.elapsedSeconds(n);

  const double rotational = derotationFlowPxS(gyro_z_rad_s, intr);
  // Center the search on where pure rotation would have moved the content.
  const int pre_shift = static_cast<int>(std::lround(rotational * elapsed));
  const Eigen::ArrayXi shifts =
      Eigen::ArrayXi::Constant(older.values.size(), pre_shift);

  const MatchProfile match = matchProfiles(older, current, config, shifts);

  FlowProfile flow;
  flow.flow_px_s = match.displacement_px / elapsed;
  flow.rotational_px_s = rotational;
  flow.translational_px_s = flow.flow_px_s - rotational;
  flow.valid = match.valid;
  flow.horizon_frames = n;
  flow.elapsed_s = elapsed;
  flow.timestamp_s = current.source_timestamp_s;
  return flow;
}

EdgeFlow::EdgeFlow(const CameraIntrinsics& intr, const MatchConfig& config,
                   int history_capacity)
    : intr_(intr), config_(config), history_(history_capacity) {
  intr_.validate();
  config_.validate();
}

std::optional<FlowProfile> EdgeFlow::push(EdgeDistribution distribution,
                                          double gyro_z_rad_s) {
  history_.push(std::move(distribution));
  if (history_.size() < 2) return std::nullopt;

  FlowProfile flow =
      computeFlow(history_, prev_flow_px_per_frame_, gyro_z_rad_s, intr_, config_);

  // Mean absolute per-frame displacement over the valid columns feeds the
  // next horizon choice; with no valid column the previous value stands.
  // Total (not derotated) flow is the right driver: fast rotation must keep
  // the horizon short, because the uniform pre-shift models rotation well
  // only over small per-match angles.
  const double per_frame_scale = flow.elapsed_s / flow.horizon_frames;
  double sum = 0.0;
  int count = 0;
  for (Eigen::Index i = 0; i < flow.size(); ++i) {
    if (!flow.valid[i]) continue;
    sum += std::abs(flow.flow_px_s[i]) * per_frame_scale;
    ++count;
  }
  if (count > 0) prev_flow_px_per_frame_ = sum / count;
  return flow;
}

}  // namespace edgefs
