#include "edgefs/block_matcher.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

#include "edgefs/error.hpp"

namespace edgefs {

void MatchConfig::validate() const {
  if (window_px < 3 || window_px % 2 == 0)
    fail(ErrorCode::BadConfig, "match window must be odd and >= 3, got " +
                                   std::to_string(window_px));
  if (search_range_px < 1)
    fail(ErrorCode::BadConfig, "search range must be >= 1, got " +
                                   std::to_string(search_range_px));
  if (search_min_px > search_max_px)
    fail(ErrorCode::BadConfig, "search bounds reversed");
  if (search_min_px < -search_range_px || search_max_px > search_range_px)
    fail(ErrorCode::BadConfig, "search bounds exceed declared range");
  if (!(flat_cost_fraction >= 0.0))
    fail(ErrorCode::BadConfig, "flat-cost fraction must be non-negative");
}

SubpixelResult subpixelRefine(long cost_minus, long cost_center, long cost_plus) {
  // Vertex of the parabola through (-1, c-), (0, c0), (+1, c+); a flat or
  // concave triple has no usable minimum.
  const double denom = static_cast<double>(cost_minus) - 2.0 * cost_center +
                       static_cast<double>(cost_plus);
  if (!(denom > 0.0)) return {0.0, true};
  const double offset =
      0.5 * (static_cast<double>(cost_minus) - static_cast<double>(cost_plus)) / denom;
  return {std::clamp(offset, -0.5, 0.5), false};
}

namespace {

// Preference order for equal costs: smaller |k| wins, then the negative one.
bool tiePrefer(int k, int incumbent) {
  const int ak = std::abs(k);
  const int ai = std::abs(incumbent);
  return ak < ai || (ak == ai && k < incumbent);
}

}  // namespace

MatchProfile matchProfiles(const EdgeDistribution& reference,
                           const EdgeDistribution& target,
                           const MatchConfig& config,
                           const Eigen::ArrayXi& shift_px) {
  config.validate();
  const int w = static_cast<int>(reference.values.size());
  if (target.values.size() != w)
    fail(ErrorCode::LengthMismatch,
         "distribution lengths differ: " + std::to_string(w) + " vs " +
             std::to_string(target.values.size()));
  if (shift_px.size() != 0 && shift_px.size() != w)
    fail(ErrorCode::LengthMismatch, "pre-shift length does not match distributions");
  const int hw = config.halfWindow();
  const int border = config.borderColumns();
  if (2 * border >= w)
    fail(ErrorCode::BadConfig, "window/range leave no matchable columns for width " +
                                   std::to_string(w));

  MatchProfile out;
  out.displacement_px = Eigen::ArrayXd::Zero(w);
  out.valid = ColumnMask::Constant(w, false);
  out.cost = Eigen::ArrayXi::Zero(w);

  const double flat_threshold = config.flat_cost_fraction * config.window_px *
                                reference.values.cast<double>().mean();

  const std::int32_t* ref = reference.values.data();
  const std::int32_t* tgt = target.values.data();
  const int k_lo = config.search_min_px;
  const int k_hi = config.search_max_px;
  std::vector<long> cost(static_cast<std::size_t>(k_hi - k_lo + 1));
  std::vector<bool> usable(cost.size());

  for (int i = border; i < w - border; ++i) {
    const int shift = shift_px.size() ? shift_px[i] : 0;

    int best_k = 0;
    long best_cost = -1;
    long cost_min = std::numeric_limits<long>::max();
    long cost_max = std::numeric_limits<long>::min();
    for (int k = k_lo; k <= k_hi; ++k) {
      const std::size_t slot = static_cast<std::size_t>(k - k_lo);
      const int lo = i - hw + k + shift;
      const int hi = i + hw + k + shift;
      usable[slot] = lo >= 0 && hi < w;
      if (!usable[slot]) continue;
      long c = 0;
      for (int j = -hw; j <= hw; ++j)
        c += std::abs(static_cast<long>(ref[i + j]) - tgt[i + j + k + shift]);
      cost[slot] = c;
      cost_min = std::min(cost_min, c);
      cost_max = std::max(cost_max, c);
      if (best_cost < 0 || c < best_cost ||
          (c == best_cost && tiePrefer(k, best_k))) {
        best_cost = c;
        best_k = k;
      }
    }
    if (best_cost < 0) continue;  // every candidate window left the target

    double offset = 0.0;
    if (config.subpixel && best_k > k_lo && best_k < k_hi) {
      const std::size_t slot = static_cast<std::size_t>(best_k - k_lo);
      if (usable[slot - 1] && usable[slot + 1])
        offset = subpixelRefine(cost[slot - 1], best_cost, cost[slot + 1]).offset_px;
    }

    out.displacement_px[i] = best_k + shift + offset;
    out.cost[i] = static_cast<std::int32_t>(best_cost);
    // A spread at or below the threshold means the window saw essentially
    // the same cost everywhere: nothing to lock onto.
    out.valid[i] = static_cast<double>(cost_max - cost_min) > flat_threshold;
  }
  return out;
}

MatchProfile matchProfiles(const EdgeDistribution& reference,
                           const EdgeDistribution& target,
                           const MatchConfig& config) {
  return matchProfiles(reference, target, config, Eigen::ArrayXi());
}

}  // namespace edgefs
