#pragma once

#include <Eigen/Core>

#include "edgefs/image.hpp"

namespace edgefs {

/// Per-column sum of absolute horizontal-gradient responses: the 1-D "edge
/// distribution" every later matching stage operates on.  Values are exact
/// integers; the 32-bit type bounds them by height * 1020.
struct EdgeDistribution {
  Eigen::ArrayXi values;
  double source_timestamp_s = 0.0;

  Eigen::Index size() const { return values.size(); }
};

/// Horizontal Sobel response with kernel [[-1,0,1],[-2,0,2],[-1,0,1]].
/// The one-pixel border is left at zero rather than fed replicated samples.
/// Throws ImageTooSmall below 3x3.
GradientImage sobelHorizontal(const GrayImage& image);

/// Collapses a gradient image into the per-column absolute-response sums.
EdgeDistribution compress(const GradientImage& gradient, double timestamp_s = 0.0);

/// Convenience composition: compress(sobelHorizontal(image)).
EdgeDistribution edgeDistribution(const GrayImage& image, double timestamp_s = 0.0);

}  // namespace edgefs
