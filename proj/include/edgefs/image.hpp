#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace edgefs {

/// Dense image storage.  Row-major so that the in-memory layout matches the
/// row-by-row byte stream of the on-disk image format.
template <typename Scalar>
using ImageMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// 8-bit grayscale frame as it comes off the sensor / out of the renderer.
using GrayImage = ImageMatrix<std::uint8_t>;

/// Signed gradient response; 32-bit so an 8-bit input can never overflow
/// (|response| <= 4 * 255 per pixel).
using GradientImage = ImageMatrix<std::int32_t>;

/// Per-column validity mask shared by all 1-D profile types.
using ColumnMask = Eigen::Array<bool, Eigen::Dynamic, 1>;

}  // namespace edgefs
