#pragma once

#include <array>
#include <vector>

#include "fuselet/image.hpp"

namespace fuselet {

/// Length-4 Daubechies analysis lowpass; the highpass is its quadrature
/// mirror g[k] = (-1)^k h[3-k].
std::array<double, 4> daubechies4_lowpass() noexcept;

/// Decimated separable DWT. Band names give the filter applied along x
/// (within rows) then along y (within columns): `lh` is lowpass in x and
/// highpass in y, so it responds to horizontal edges.
struct WaveletPyramid {
  struct Level {
    Image lh;
    Image hl;
    Image hh;
  };
  /// details[0] is the finest level (half the source size).
  std::vector<Level> details;
  Image ll;

  std::size_t levels() const noexcept { return details.size(); }
};

/// Periodic-extension orthogonal DWT. Both image dimensions must be
/// divisible by 2^levels.
WaveletPyramid dwt_forward(const Image& image, int levels);

Image dwt_inverse(const WaveletPyramid& pyramid);

}  // namespace fuselet
