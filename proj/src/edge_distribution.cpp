#include "edgefs/edge_distribution.hpp"

#include "edgefs/error.hpp"

namespace edgefs {

GradientImage sobelHorizontal(const GrayImage& image) {
  const Eigen::Index h = image.rows();
  const Eigen::Index w = image.cols();
  if (h < 3 || w < 3)
    fail(ErrorCode::ImageTooSmall, "horizontal Sobel needs at least 3x3, got " +
                                       std::to_string(w) + "x" + std::to_string(h));
  const GradientImage b = image.cast<std::int32_t>();
  GradientImage g = GradientImage::Zero(h, w);
  const Eigen::Index ih = h - 2;
  const Eigen::Index iw = w - 2;
  g.block(1, 1, ih, iw) =
      (b.block(0, 2, ih, iw) + 2 * b.block(1, 2, ih, iw) + b.block(2, 2, ih, iw)) -
      (b.block(0, 0, ih, iw) + 2 * b.block(1, 0, ih, iw) + b.block(2, 0, ih, iw));
  return g;
}

EdgeDistribution compress(const GradientImage& gradient, double timestamp_s) {
  EdgeDistribution dist;
  dist.values = gradient.cwiseAbs().colwise().sum().transpose().array();
  dist.source_timestamp_s = timestamp_s;
  return dist;
}

EdgeDistribution edgeDistribution(const GrayImage& image, double timestamp_s) {
  return compress(sobelHorizontal(image), timestamp_s);
}

}  // namespace edgefs
