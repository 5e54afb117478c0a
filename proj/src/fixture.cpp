#include "fuselet/fixture.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fuselet {

namespace {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace

Image random_image(std::size_t width, std::size_t height, std::uint64_t seed, double lo,
                   double hi) {
  SplitMix64 rng(seed);
  Image out(width, height);
  for (double& v : out.samples()) v = lo + (hi - lo) * rng.unit();
  return out;
}

Image gaussian_blur(const Image& image, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_blur: sigma must be positive");
  const int rad = static_cast<int>(std::ceil(4.0 * sigma));
  std::vector<double> taps(static_cast<std::size_t>(2 * rad + 1));
  double sum = 0.0;
  for (int k = -rad; k <= rad; ++k) {
    taps[static_cast<std::size_t>(k + rad)] = std::exp(-0.5 * k * k / (sigma * sigma));
    sum += taps[static_cast<std::size_t>(k + rad)];
  }
  for (double& t : taps) t /= sum;
  Image rows(image.width(), image.height());
  for (std::size_t r = 0; r < image.height(); ++r) {
    for (std::size_t c = 0; c < image.width(); ++c) {
      double acc = 0.0;
      for (int k = -rad; k <= rad; ++k) {
        acc += taps[static_cast<std::size_t>(k + rad)] *
               image.wrapped(static_cast<std::ptrdiff_t>(r), static_cast<std::ptrdiff_t>(c) + k);
      }
      rows(r, c) = acc;
    }
  }
  Image out(image.width(), image.height());
  for (std::size_t r = 0; r < image.height(); ++r) {
    for (std::size_t c = 0; c < image.width(); ++c) {
      double acc = 0.0;
      for (int k = -rad; k <= rad; ++k) {
        acc += taps[static_cast<std::size_t>(k + rad)] *
               rows.wrapped(static_cast<std::ptrdiff_t>(r) + k, static_cast<std::ptrdiff_t>(c));
      }
      out(r, c) = acc;
    }
  }
  return out;
}

double rmse(const Image& a, const Image& b) {
  require_same_shape(a, b, "rmse");
  double ss = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.samples()[i] - b.samples()[i];
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(a.size()));
}

MultifocusFixture make_multifocus_fixture(std::size_t size, double sigma, std::uint64_t seed) {
  if (size < 16 || size % 8 != 0) {
    throw std::invalid_argument("multifocus fixture size must be a multiple of 8, >= 16");
  }
  SplitMix64 rng(seed);
  const double n = static_cast<double>(size);
  Image truth(size, size);
  // Shapes: a few discs and boxes with random placement and intensity.
  struct Blob {
    double cy, cx, radius, level;
    bool disc;
  };
  std::vector<Blob> blobs;
  for (int i = 0; i < 10; ++i) {
    blobs.push_back({rng.unit() * n, rng.unit() * n, (0.05 + 0.1 * rng.unit()) * n,
                     -60.0 + 120.0 * rng.unit(), i % 2 == 0});
  }
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t c = 0; c < size; ++c) {
      const double y = static_cast<double>(r);
      const double x = static_cast<double>(c);
      double v = 110.0 + 30.0 * std::sin(2.0 * std::numbers::pi * (x + 0.5 * y) / n);
      // Oriented gratings at a few frequencies.
      v += 18.0 * std::sin(2.0 * std::numbers::pi * (x * 0.11 + y * 0.03));
      v += 14.0 * std::sin(2.0 * std::numbers::pi * (x * -0.05 + y * 0.13));
      v += 10.0 * std::sin(2.0 * std::numbers::pi * (x * 0.19 + y * 0.17));
      for (const Blob& b : blobs) {
        const double dy = y - b.cy;
        const double dx = x - b.cx;
        const bool inside = b.disc ? dy * dy + dx * dx <= b.radius * b.radius
                                   : std::abs(dy) <= b.radius && std::abs(dx) <= b.radius;
        if (inside) v += b.level;
      }
      v += 8.0 * (rng.unit() - 0.5);
      truth(r, c) = std::clamp(v, 0.0, 255.0);
    }
  }
  const Image blurred = gaussian_blur(truth, sigma);
  MultifocusFixture fx{truth, truth, truth};
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t c = 0; c < size; ++c) {
      if (c < size / 2) {
        fx.left_blurred(r, c) = blurred(r, c);
      } else {
        fx.right_blurred(r, c) = blurred(r, c);
      }
    }
  }
  return fx;
}

}  // namespace fuselet
