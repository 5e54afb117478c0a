#include "fuselet/image.hpp"

#include <algorithm>
#include <cmath>

namespace fuselet {

void detail::require_finite(std::span<const double> samples) {
  if (!std::all_of(samples.begin(), samples.end(), [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument("raster samples must be finite");
  }
}

Image circshift(const Image& image, std::ptrdiff_t dr, std::ptrdiff_t dc) {
  Image out(image.width(), image.height());
  const auto h = static_cast<std::ptrdiff_t>(image.height());
  const auto w = static_cast<std::ptrdiff_t>(image.width());
  for (std::ptrdiff_t r = 0; r < h; ++r) {
    for (std::ptrdiff_t c = 0; c < w; ++c) {
      out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = image.wrapped(r - dr, c - dc);
    }
  }
  return out;
}

double max_abs_diff(const Image& a, const Image& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  const auto sa = a.samples();
  const auto sb = b.samples();
  for (std::size_t i = 0; i < sa.size(); ++i) {
    worst = std::max(worst, std::abs(sa[i] - sb[i]));
  }
  return worst;
}

Image add(const Image& a, const Image& b) {
  require_same_shape(a, b, "add");
  Image out = a;
  auto so = out.samples();
  const auto sb = b.samples();
  for (std::size_t i = 0; i < so.size(); ++i) so[i] += sb[i];
  return out;
}

Image scaled(const Image& image, double factor) {
  Image out = image;
  for (double& v : out.samples()) v *= factor;
  return out;
}

}  // namespace fuselet
