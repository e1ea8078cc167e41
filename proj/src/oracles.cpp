#include "edgefs/oracles.hpp"

#include <cmath>
#include <cstdlib>

#include "edgefs/error.hpp"

namespace edgefs {
namespace oracles {

MatchProfile exhaustiveMatch1d(const EdgeDistribution& reference,
                               const EdgeDistribution& target,
                               const MatchConfig& config,
                               const Eigen::ArrayXi& shift_px) {
  config.validate();
  const int w = static_cast<int>(reference.values.size());
  if (target.values.size() != w)
    fail(ErrorCode::LengthMismatch, "oracle: distribution lengths differ");
  if (shift_px.size() != 0 && shift_px.size() != w)
    fail(ErrorCode::LengthMismatch, "oracle: pre-shift length mismatch");
  const int half = (config.window_px - 1) / 2;
  const int border = config.search_range_px + half;
  if (2 * border >= w) fail(ErrorCode::BadConfig, "oracle: nothing to match");

  MatchProfile out;
  out.displacement_px = Eigen::ArrayXd::Zero(w);
  out.valid = ColumnMask::Constant(w, false);
  out.cost = Eigen::ArrayXi::Zero(w);

  double ref_mean = 0.0;
  for (int i = 0; i < w; ++i) ref_mean += reference.values[i];
  ref_mean /= w;
  const double flat_threshold =
      config.flat_cost_fraction * config.window_px * ref_mean;

  for (int i = border; i < w - border; ++i) {
    const int shift = shift_px.size() ? shift_px[i] : 0;

    // Pass 1: evaluate every in-bounds candidate.
    bool any = false;
    long best = 0;
    long lo_cost = 0, hi_cost = 0;
    for (int k = config.search_min_px; k <= config.search_max_px; ++k) {
      if (i - half + k + shift < 0 || i + half + k + shift >= w) continue;
      long c = 0;
      for (int j = -half; j <= half; ++j) {
        const long d = static_cast<long>(reference.values[i + j]) -
                       static_cast<long>(target.values[i + j + k + shift]);
        c += d < 0 ? -d : d;
      }
      if (!any) {
        any = true;
        best = lo_cost = hi_cost = c;
      } else {
        if (c < best) best = c;
        if (c < lo_cost) lo_cost = c;
        if (c > hi_cost) hi_cost = c;
      }
    }
    if (!any) continue;

    // Pass 2: among minimum-cost candidates pick smallest |k|, negative
    // before positive.  Scanning 0, -1, +1, -2, +2, ... realizes exactly
    // that preference, so the first hit wins.
    int best_k = 0;
    bool found = false;
    for (int m = 0; m <= config.search_range_px && !found; ++m) {
      for (const int k : {-m, m}) {
        if (k < config.search_min_px || k > config.search_max_px) continue;
        if (i - half + k + shift < 0 || i + half + k + shift >= w) continue;
        long c = 0;
        for (int j = -half; j <= half; ++j) {
          const long d = static_cast<long>(reference.values[i + j]) -
                         static_cast<long>(target.values[i + j + k + shift]);
          c += d < 0 ? -d : d;
        }
        if (c == best) {
          best_k = k;
          found = true;
          break;
        }
        if (k == 0) break;  // -0 == +0, evaluate once
      }
    }

    // Sub-pixel refinement by the same parabola rule the contract states.
    double offset = 0.0;
    if (config.subpixel && best_k > config.search_min_px &&
        best_k < config.search_max_px && i - half + best_k - 1 + shift >= 0 &&
        i + half + best_k + 1 + shift < w) {
      long c_minus = 0, c_plus = 0;
      for (int j = -half; j <= half; ++j) {
        const long dm = static_cast<long>(reference.values[i + j]) -
                        static_cast<long>(target.values[i + j + best_k - 1 + shift]);
        const long dp = static_cast<long>(reference.values[i + j]) -
                        static_cast<long>(target.values[i + j + best_k + 1 + shift]);
        c_minus += dm < 0 ? -dm : dm;
        c_plus += dp < 0 ? -dp : dp;
      }
      const double curvature = static_cast<double>(c_minus) - 2.0 * best +
                               static_cast<double>(c_plus);
      if (curvature > 0.0) {
        offset = 0.5 * (static_cast<double>(c_minus) - static_cast<double>(c_plus)) /
                 curvature;
        if (offset > 0.5) offset = 0.5;
        if (offset < -0.5) offset = -0.5;
      }
    }

    out.displacement_px[i] = best_k + shift + offset;
    out.cost[i] = static_cast<std::int32_t>(best);
    out.valid[i] = static_cast<double>(hi_cost - lo_cost) > flat_threshold;
  }
  return out;
}

MatchProfile exhaustiveMatch1d(const EdgeDistribution& reference,
                               const EdgeDistribution& target,
                               const MatchConfig& config) {
  return exhaustiveMatch1d(reference, target, config, Eigen::ArrayXi());
}

DenseFlowField denseBlockFlow(const GrayImage& from, const GrayImage& to,
                              const MatchConfig& config, int grid_step_px) {
  config.validate();
  if (grid_step_px < 1) fail(ErrorCode::BadConfig, "grid step must be >= 1");
  if (from.rows() != to.rows() || from.cols() != to.cols())
    fail(ErrorCode::LengthMismatch, "dense flow needs equally sized images");

  const int h = static_cast<int>(from.rows());
  const int w = static_cast<int>(from.cols());
  const int half = (config.window_px - 1) / 2;
  const int range = config.search_range_px;
  const int border = range + half;
  if (2 * border >= w || 2 * border >= h)
    fail(ErrorCode::BadConfig, "dense flow: window/range exceed image size");

  DenseFlowField field;
  field.grid_step_px = grid_step_px;
  field.origin_px = border;
  const int rows = (h - 2 * border - 1) / grid_step_px + 1;
  const int cols = (w - 2 * border - 1) / grid_step_px + 1;
  field.du_px = Eigen::ArrayXXd::Zero(rows, cols);
  field.dv_px = Eigen::ArrayXXd::Zero(rows, cols);
  field.valid = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(
      rows, cols, false);

  for (int gr = 0; gr < rows; ++gr) {
    const int v = border + gr * grid_step_px;
    for (int gc = 0; gc < cols; ++gc) {
      const int u = border + gc * grid_step_px;
      long best = -1;
      int best_du = 0, best_dv = 0;
      for (int dv = -range; dv <= range; ++dv) {
        for (int du = -range; du <= range; ++du) {
          long c = 0;
          for (int y = -half; y <= half; ++y) {
            const std::uint8_t* a = from.data() + (v + y) * w + (u - half);
            const std::uint8_t* b = to.data() + (v + y + dv) * w + (u + du - half);
            for (int x = 0; x < config.window_px; ++x) {
              const int d = static_cast<int>(a[x]) - static_cast<int>(b[x]);
              c += d < 0 ? -d : d;
            }
          }
          const long mag = static_cast<long>(du) * du + static_cast<long>(dv) * dv;
          const long best_mag = static_cast<long>(best_du) * best_du +
                                static_cast<long>(best_dv) * best_dv;
          if (best < 0 || c < best ||
              (c == best && (mag < best_mag ||
                             (mag == best_mag &&
                              (dv < best_dv || (dv == best_dv && du < best_du)))))) {
            best = c;
            best_du = du;
            best_dv = dv;
          }
        }
      }
      field.du_px(gr, gc) = best_du;
      field.dv_px(gr, gc) = best_dv;
      field.valid(gr, gc) = true;
    }
  }
  return field;
}

Eigen::ArrayXd analyticFlow(const CameraIntrinsics& intr, double vx_m_s,
                            double vy_m_s, double omega_rad_s,
                            const Eigen::ArrayXd& depth_m) {
  intr.validate();
  Eigen::ArrayXd flow = Eigen::ArrayXd::Zero(depth_m.size());
  for (Eigen::Index u = 0; u < depth_m.size(); ++u) {
    if (!(depth_m[u] > 0.0)) continue;
    const double x = columnCenterX(intr, static_cast<double>(u));
    flow[u] = (-vy_m_s + x * vx_m_s) / depth_m[u] + omega_rad_s;
  }
  return flow;
}

}  // namespace oracles
}  // namespace edgefs
