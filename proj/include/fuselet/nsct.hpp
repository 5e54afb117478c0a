#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "fuselet/image.hpp"

namespace fuselet {

/// Separable B3-spline lowpass used by the nonsubsampled pyramid. At scale j
/// the taps are spread 2^(j-1) samples apart (zeros in between).
struct AtrousKernel {
  static constexpr std::array<double, 5> taps{1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
  static constexpr std::size_t dilation(int scale) noexcept {
    return std::size_t{1} << (scale - 1);
  }
};

inline constexpr int kMaxDirectionExponent = 5;
inline constexpr double kDefaultTransitionWidth = 0.3;

struct NsctOptions {
  /// Angular width (radians) of the raised-cosine taper between neighbouring
  /// direction wedges. Clamped to the wedge width for fine direction splits.
  double transition_width = kDefaultTransitionWidth;
};

/// Nonsubsampled contourlet decomposition. `bands[s]` holds the
/// 2^levels[s] directional subbands of scale s, finest scale first; every
/// subband and `low` share the source image's dimensions.
struct NsctPyramid {
  Image low;
  std::vector<std::vector<Image>> bands;
  std::vector<int> levels;

  std::size_t band_count() const noexcept;
};

/// Circular convolution with the dilated AtrousKernel along rows then columns.
Image atrous_lowpass(const Image& image, std::size_t dilation);

/// `levels` gives the direction exponent per scale, finest first; each must be
/// in [1, 5]. The image must be at least 8x8 with even dimensions.
NsctPyramid nsct_forward(const Image& image, std::span<const int> levels,
                         const NsctOptions& options = {});

Image nsct_inverse(const NsctPyramid& pyramid);

/// Splits `band` into 2^l directional subbands with FFT-domain angular
/// wedges that sum to one at every frequency. Subbands are real and sum back
/// to `band`.
std::vector<Image> nsdfb_split(const Image& band, int l,
                               double transition_width = kDefaultTransitionWidth);

/// Elementwise sum of the subbands, accumulated in list order.
Image nsdfb_merge(std::span<const Image> subbands);

namespace detail {

/// Wedge masks on the r2c half spectrum (height x (width/2+1), row-major),
/// one per direction. Exposed for tests.
std::vector<std::vector<double>> wedge_masks(std::size_t height, std::size_t width, int l,
                                             double transition_width);

}  // namespace detail

}  // namespace fuselet
