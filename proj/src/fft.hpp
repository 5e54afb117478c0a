#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace fuselet::detail {

/// Real 2-D DFT of a fixed height x width, half-spectrum layout
/// height x (width/2 + 1). Plans are built with FFTW_ESTIMATE under a global
/// lock; execution is reentrant across instances.
class RealFft2d {
 public:
  RealFft2d(std::size_t height, std::size_t width);
  ~RealFft2d();
  RealFft2d(const RealFft2d&) = delete;
  RealFft2d& operator=(const RealFft2d&) = delete;

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t spectrum_width() const noexcept { return width_ / 2 + 1; }

  /// Unnormalized forward transform of a row-major real raster.
  std::vector<std::complex<double>> forward(std::span<const double> samples);

  /// Inverse transform including the 1/(height*width) normalization.
  std::vector<double> inverse(std::span<const std::complex<double>> spectrum);

 private:
  struct Plans;
  std::size_t height_;
  std::size_t width_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace fuselet::detail
