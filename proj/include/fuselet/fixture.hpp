#pragma once

#include <cstddef>
#include <cstdint>

#include "fuselet/image.hpp"

namespace fuselet {

/// Deterministic uniform samples in [lo, hi) from a splitmix64 stream, so
/// fixtures are identical on every platform and standard library.
Image random_image(std::size_t width, std::size_t height, std::uint64_t seed, double lo = 0.0,
                   double hi = 255.0);

/// Separable Gaussian blur with periodic borders, taps out to ceil(4 sigma).
Image gaussian_blur(const Image& image, double sigma);

double rmse(const Image& a, const Image& b);

/// Ground-truth scene plus two registered multifocus views: `left_blurred`
/// has its left half defocused, `right_blurred` its right half.
struct MultifocusFixture {
  Image truth;
  Image left_blurred;
  Image right_blurred;
};

MultifocusFixture make_multifocus_fixture(std::size_t size = 128, double sigma = 2.0,
                                          std::uint64_t seed = 20121);

}  // namespace fuselet
