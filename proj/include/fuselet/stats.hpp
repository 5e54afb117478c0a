#pragma once

#include <array>

#include "fuselet/image.hpp"

namespace fuselet {

enum class Statistic { entropy, mean, sd };

const char* to_string(Statistic s) noexcept;

/// 5x5 centre-weighted window used for regional energy and the WAMM match
/// measure. Entries are dyadic rationals, so sums are exact in double.
class WeightKernel {
 public:
  static constexpr int kRadius = 2;
  static constexpr int kSide = 2 * kRadius + 1;

  constexpr WeightKernel() {
    constexpr int raw[kSide][kSide] = {{4, 4, 4, 4, 4},
                                       {4, 16, 16, 16, 4},
                                       {4, 16, 64, 16, 4},
                                       {4, 16, 16, 16, 4},
                                       {4, 4, 4, 4, 4}};
    for (int r = 0; r < kSide; ++r)
      for (int c = 0; c < kSide; ++c) taps_[r][c] = raw[r][c] / 256.0;
  }

  /// Tap at offset (dr, dc), each in [-2, 2].
  constexpr double at(int dr, int dc) const noexcept { return taps_[dr + kRadius][dc + kRadius]; }

 private:
  double taps_[kSide][kSide]{};
};

constexpr WeightKernel weight_kernel() noexcept { return WeightKernel{}; }

/// Per-position statistic over a (2*radius+1)^2 window with periodic borders.
///
/// * mean: arithmetic mean of the window samples.
/// * sd: population standard deviation (divisor n).
/// * entropy: the whole band is first quantized to 256 uniform bins spanning
///   its global [min, max] (a constant band falls into one bin); the result is
///   the base-2 Shannon entropy of the window's bin histogram.
StatMap local_statistic_map(const Image& band, Statistic statistic, int radius = 1);

/// E(p) = sum over the 5x5 window of W(s,t) * C(p+(s,t))^2, periodic borders.
StatMap regional_energy_map(const Image& band);

/// Bin index in [0, 255] of every sample, uniform over the band's [min, max].
std::vector<int> quantize_to_bins(const Image& band);

}  // namespace fuselet
