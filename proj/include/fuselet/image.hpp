#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fuselet {

/// Raised when two rasters that must share a shape do not.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::size_t wrap_index(std::ptrdiff_t i, std::size_t n) {
  const auto m = static_cast<std::ptrdiff_t>(n);
  std::ptrdiff_t r = i % m;
  return static_cast<std::size_t>(r < 0 ? r + m : r);
}

void require_finite(std::span<const double> samples);

}  // namespace detail

/// Row-major 2-D grid of doubles. `Tag` separates pixel images from
/// per-position statistic maps so one cannot be passed where the other is
/// expected by accident; `to<Other>()` converts explicitly.
template <class Tag>
class Raster {
 public:
  Raster() = default;

  Raster(std::size_t width, std::size_t height, double fill = 0.0)
      : width_(width), height_(height), samples_(width * height, fill) {
    check_dims();
    detail::require_finite(std::span<const double>(&fill, 1));
  }

  Raster(std::size_t width, std::size_t height, std::vector<double> samples)
      : width_(width), height_(height), samples_(std::move(samples)) {
    check_dims();
    if (samples_.size() != width_ * height_) {
      throw std::invalid_argument("sample count " + std::to_string(samples_.size()) +
                                  " does not match " + std::to_string(width_) + "x" +
                                  std::to_string(height_));
    }
    detail::require_finite(samples_);
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }

  double& operator()(std::size_t row, std::size_t col) noexcept {
    return samples_[row * width_ + col];
  }
  double operator()(std::size_t row, std::size_t col) const noexcept {
    return samples_[row * width_ + col];
  }

  /// Periodic-extension read: indices wrap modulo the raster size.
  double wrapped(std::ptrdiff_t row, std::ptrdiff_t col) const noexcept {
    return samples_[detail::wrap_index(row, height_) * width_ + detail::wrap_index(col, width_)];
  }

  std::span<double> samples() noexcept { return samples_; }
  std::span<const double> samples() const noexcept { return samples_; }

  template <class Other>
  bool same_shape(const Raster<Other>& other) const noexcept {
    return width_ == other.width() && height_ == other.height();
  }

  template <class OtherTag>
  Raster<OtherTag> to() const {
    return Raster<OtherTag>(width_, height_, samples_);
  }

 private:
  void check_dims() const {
    if (width_ == 0 || height_ == 0) {
      throw std::invalid_argument("raster dimensions must be positive");
    }
  }

  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> samples_;
};

struct ImageTag;
struct StatTag;

/// Grayscale image, nominal display range [0, 255].
using Image = Raster<ImageTag>;
/// One statistic value per position of the band it was computed from.
using StatMap = Raster<StatTag>;

template <class A, class B>
void require_same_shape(const Raster<A>& a, const Raster<B>& b, const char* what) {
  if (!a.same_shape(b)) {
    throw DimensionMismatch(std::string(what) + ": " + std::to_string(a.width()) + "x" +
                            std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                            "x" + std::to_string(b.height()));
  }
}

/// out(r, c) = in(r - dr, c - dc) with wrap-around.
Image circshift(const Image& image, std::ptrdiff_t dr, std::ptrdiff_t dc);

double max_abs_diff(const Image& a, const Image& b);

/// Elementwise a + b.
Image add(const Image& a, const Image& b);
Image scaled(const Image& image, double factor);

}  // namespace fuselet
