#pragma once

#include <Eigen/Core>

#include "edgefs/edge_distribution.hpp"
#include "edgefs/image.hpp"

namespace edgefs {

/// Parameters of the 1-D sum-of-absolute-differences block search.
struct MatchConfig {
  int window_px = 11;        // odd, >= 3
  int search_range_px = 15;  // bounds the excluded border: range + (window-1)/2
  int search_min_px = -15;   // candidate displacements k in [min, max]
  int search_max_px = 15;
  bool subpixel = true;
  /// Low-confidence threshold as a fraction of window_px * mean(reference):
  /// a column whose SAD spread (max - min over candidates) does not exceed
  /// the threshold is flagged invalid.
  double flat_cost_fraction = 0.01;

  static MatchConfig symmetric(int window, int range) {
    MatchConfig c;
    c.window_px = window;
    c.search_range_px = range;
    c.search_min_px = -range;
    c.search_max_px = range;
    return c;
  }

  static MatchConfig oneSided(int window, int range) {
    MatchConfig c = symmetric(window, range);
    c.search_min_px = 0;
    return c;
  }

  int halfWindow() const { return (window_px - 1) / 2; }
  int borderColumns() const { return search_range_px + halfWindow(); }

  /// Throws BadConfig on malformed parameters.
  void validate() const;
};

/// Per-column match result.  displacement_px is meaningful only where valid;
/// invalid columns keep their tie-broken value purely for inspection.
struct MatchProfile {
  Eigen::ArrayXd displacement_px;
  ColumnMask valid;
  Eigen::ArrayXi cost;  // best SAD cost; 0 where no candidate was evaluated

  int validCount() const { return static_cast<int>(valid.count()); }
};

struct SubpixelResult {
  double offset_px = 0.0;
  bool degenerate = false;  // non-convex parabola: offset forced to 0
};

/// Fits a parabola through the SAD costs at the integer minimum and its two
/// neighbours and returns the vertex offset, clamped to [-0.5, 0.5].
SubpixelResult subpixelRefine(long cost_minus, long cost_center, long cost_plus);

/// Finds, for every non-border column i, the displacement k (plus the
/// per-column pre-shift) minimizing
///
///   cost(k) = sum_j |ref[i+j] - target[i+j+k+shift]|,   |j| <= halfWindow,
///
/// over k in [search_min_px, search_max_px].  Positive displacement means
/// the reference content appears further right in the target.  Candidates
/// whose window leaves the target are skipped; a column with no candidate
/// left is invalid.  Cost ties are broken toward the smallest |k|, and
/// between +-k toward the negative one.  shift_px may be empty (all zeros)
/// or one entry per column.
MatchProfile matchProfiles(const EdgeDistribution& reference,
                           const EdgeDistribution& target,
                           const MatchConfig& config,
                           const Eigen::ArrayXi& shift_px);

MatchProfile matchProfiles(const EdgeDistribution& reference,
                           const EdgeDistribution& target,
                           const MatchConfig& config);

}  // namespace edgefs
