#include "fuselet/nsct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fft.hpp"
#include "fuselet/parallel.hpp"

namespace fuselet {

namespace {

void check_direction_exponent(int l) {
  if (l < 1 || l > kMaxDirectionExponent) {
    throw std::invalid_argument("direction exponent " + std::to_string(l) + " outside [1, " +
                                std::to_string(kMaxDirectionExponent) + "]");
  }
}

// 0 below -delta/2, 1 above +delta/2, raised-cosine in between.
double smooth_step(double t, double delta) {
  if (t <= -0.5 * delta) return 0.0;
  if (t >= 0.5 * delta) return 1.0;
  return 0.5 * (1.0 + std::sin(std::numbers::pi * t / delta));
}

// Orientation of a frequency modulo pi, in [0, pi).
double orientation(double fy, double fx) {
  double theta = std::atan2(fy, fx);
  if (theta < 0.0) theta += std::numbers::pi;
  if (theta >= std::numbers::pi) theta -= std::numbers::pi;
  return theta;
}

// Wedge centred on `centre` of angular width `width`, wrapped modulo pi.
double wedge_gain(double theta, double centre, double width, double delta) {
  double t = theta - centre;
  t -= std::numbers::pi * std::floor(t / std::numbers::pi + 0.5);
  return smooth_step(t + 0.5 * width, delta) - smooth_step(t - 0.5 * width, delta);
}

double signed_frequency(std::size_t k, std::size_t n) {
  return k <= n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
}

}  // namespace

std::size_t NsctPyramid::band_count() const noexcept {
  std::size_t n = 0;
  for (const auto& scale : bands) n += scale.size();
  return n;
}

Image atrous_lowpass(const Image& image, std::size_t dilation) {
  const auto& taps = AtrousKernel::taps;
  const auto d = static_cast<std::ptrdiff_t>(dilation);
  const std::size_t w = image.width();
  const std::size_t h = image.height();
  Image rows(w, h);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      double acc = 0.0;
      for (std::ptrdiff_t k = -2; k <= 2; ++k) {
        acc += taps[static_cast<std::size_t>(k + 2)] *
               image.wrapped(static_cast<std::ptrdiff_t>(r), static_cast<std::ptrdiff_t>(c) + k * d);
      }
      rows(r, c) = acc;
    }
  }
  Image out(w, h);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      double acc = 0.0;
      for (std::ptrdiff_t k = -2; k <= 2; ++k) {
        acc += taps[static_cast<std::size_t>(k + 2)] *
               rows.wrapped(static_cast<std::ptrdiff_t>(r) + k * d, static_cast<std::ptrdiff_t>(c));
      }
      out(r, c) = acc;
    }
  }
  return out;
}

std::vector<std::vector<double>> detail::wedge_masks(std::size_t height, std::size_t width, int l,
                                                     double transition_width) {
  check_direction_exponent(l);
  if (!(transition_width > 0.0)) throw std::invalid_argument("transition width must be positive");
  const std::size_t count = std::size_t{1} << l;
  const double wedge = std::numbers::pi / static_cast<double>(count);
  const double delta = std::min(transition_width, wedge);
  const std::size_t spec_w = width / 2 + 1;

  std::vector<std::vector<double>> masks(count, std::vector<double>(height * spec_w, 0.0));
  for (std::size_t ky = 0; ky < height; ++ky) {
    for (std::size_t kx = 0; kx < spec_w; ++kx) {
      const std::size_t idx = ky * spec_w + kx;
      if (ky == 0 && kx == 0) {
        masks[0][idx] = 1.0;
        continue;
      }
      const double fx = static_cast<double>(kx) / static_cast<double>(width);
      const double fy = signed_frequency(ky, height) / static_cast<double>(height);
      const double theta = orientation(fy, fx);
      // The Nyquist column stores its own conjugate partners; average the two
      // orientations so the mask stays Hermitian there.
      const bool self_conjugate_column = kx == width / 2;
      const double fy_conj = signed_frequency((height - ky) % height, height) /
                             static_cast<double>(height);
      const double theta_conj = orientation(fy_conj, fx);
      for (std::size_t d = 0; d < count; ++d) {
        const double centre = static_cast<double>(d) * wedge;
        double g = wedge_gain(theta, centre, wedge, delta);
        if (self_conjugate_column) {
          g = 0.5 * (g + wedge_gain(theta_conj, centre, wedge, delta));
        }
        masks[d][idx] = g;
      }
    }
  }
  return masks;
}

std::vector<Image> nsdfb_split(const Image& band, int l, double transition_width) {
  check_direction_exponent(l);
  if (band.width() % 2 != 0 || band.height() % 2 != 0) {
    throw std::invalid_argument("nsdfb_split: band dimensions must be even");
  }
  const auto masks = detail::wedge_masks(band.height(), band.width(), l, transition_width);
  detail::RealFft2d fft(band.height(), band.width());
  const auto spectrum = fft.forward(band.samples());
  std::vector<Image> out;
  out.reserve(masks.size());
  std::vector<std::complex<double>> filtered(spectrum.size());
  for (const auto& mask : masks) {
    for (std::size_t i = 0; i < spectrum.size(); ++i) filtered[i] = spectrum[i] * mask[i];
    out.emplace_back(band.width(), band.height(), fft.inverse(filtered));
  }
  return out;
}

Image nsdfb_merge(std::span<const Image> subbands) {
  if (subbands.empty()) throw std::invalid_argument("nsdfb_merge: no subbands");
  Image out(subbands.front().width(), subbands.front().height());
  for (const Image& sb : subbands) {
    require_same_shape(out, sb, "nsdfb_merge");
    auto so = out.samples();
    const auto ss = sb.samples();
    for (std::size_t i = 0; i < so.size(); ++i) so[i] += ss[i];
  }
  return out;
}

NsctPyramid nsct_forward(const Image& image, std::span<const int> levels,
                         const NsctOptions& options) {
  if (levels.empty()) throw std::invalid_argument("nsct_forward: levels must be non-empty");
  for (int l : levels) check_direction_exponent(l);
  if (image.width() < 8 || image.height() < 8) {
    throw std::invalid_argument("nsct_forward: image must be at least 8x8");
  }
  if (image.width() % 2 != 0 || image.height() % 2 != 0) {
    throw std::invalid_argument("nsct_forward: image dimensions must be even");
  }

  const std::size_t scales = levels.size();
  std::vector<Image> bandpass;
  bandpass.reserve(scales);
  Image low = image;
  for (std::size_t j = 1; j <= scales; ++j) {
    Image next = atrous_lowpass(low, AtrousKernel::dilation(static_cast<int>(j)));
    Image bp = low;
    auto sb = bp.samples();
    const auto sn = next.samples();
    for (std::size_t i = 0; i < sb.size(); ++i) sb[i] -= sn[i];
    bandpass.push_back(std::move(bp));
    low = std::move(next);
  }

  NsctPyramid pyr;
  pyr.low = std::move(low);
  pyr.levels.assign(levels.begin(), levels.end());
  pyr.bands.resize(scales);
  parallel_for(scales, [&](std::size_t s) {
    pyr.bands[s] = nsdfb_split(bandpass[s], levels[s], options.transition_width);
  });
  return pyr;
}

Image nsct_inverse(const NsctPyramid& pyramid) {
  if (pyramid.bands.size() != pyramid.levels.size()) {
    throw DimensionMismatch("nsct_inverse: scale count does not match levels");
  }
  Image out = pyramid.low;
  // Coarse to fine, a fixed order so the result does not depend on scheduling.
  for (std::size_t s = pyramid.bands.size(); s-- > 0;) {
    const auto& scale = pyramid.bands[s];
    if (scale.size() != (std::size_t{1} << pyramid.levels[s])) {
      throw DimensionMismatch("nsct_inverse: scale " + std::to_string(s + 1) + " has " +
                              std::to_string(scale.size()) + " subbands, expected " +
                              std::to_string(std::size_t{1} << pyramid.levels[s]));
    }
    for (const Image& b : scale) require_same_shape(out, b, "nsct_inverse");
    const Image merged = nsdfb_merge(scale);
    auto so = out.samples();
    const auto sm = merged.samples();
    for (std::size_t i = 0; i < so.size(); ++i) so[i] += sm[i];
  }
  return out;
}

}  // namespace fuselet
