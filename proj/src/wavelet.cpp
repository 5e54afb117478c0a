#include "fuselet/wavelet.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fuselet {

std::array<double, 4> daubechies4_lowpass() noexcept {
  const double s3 = std::sqrt(3.0);
  const double norm = 4.0 * std::sqrt(2.0);
  return {(1.0 + s3) / norm, (3.0 + s3) / norm, (3.0 - s3) / norm, (1.0 - s3) / norm};
}

namespace {

struct Filters {
  std::array<double, 4> low = daubechies4_lowpass();
  std::array<double, 4> high{};
  Filters() {
    for (std::size_t k = 0; k < 4; ++k) high[k] = (k % 2 == 0 ? 1.0 : -1.0) * low[3 - k];
  }
};

const Filters& filters() {
  static const Filters f;
  return f;
}

// One analysis step on a strided line of length n (even); writes n/2
// approximation then n/2 detail values into out.
void analyze_line(const double* in, std::size_t stride, std::size_t n, double* lo, double* hi,
                  std::size_t out_stride) {
  const Filters& f = filters();
  for (std::size_t i = 0; i < n / 2; ++i) {
    double a = 0.0;
    double d = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      const double x = in[((2 * i + k) % n) * stride];
      a += f.low[k] * x;
      d += f.high[k] * x;
    }
    lo[i * out_stride] = a;
    hi[i * out_stride] = d;
  }
}

void synthesize_line(const double* lo, const double* hi, std::size_t in_stride, std::size_t n,
                     double* out, std::size_t stride) {
  const Filters& f = filters();
  for (std::size_t m = 0; m < n; ++m) out[m * stride] = 0.0;
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double a = lo[i * in_stride];
    const double d = hi[i * in_stride];
    for (std::size_t k = 0; k < 4; ++k) {
      out[((2 * i + k) % n) * stride] += f.low[k] * a + f.high[k] * d;
    }
  }
}

}  // namespace

WaveletPyramid dwt_forward(const Image& image, int levels) {
  if (levels < 1) throw std::invalid_argument("dwt_forward: levels must be >= 1");
  const std::size_t div = std::size_t{1} << levels;
  if (image.width() % div != 0 || image.height() % div != 0) {
    throw std::invalid_argument("dwt_forward: dimensions " + std::to_string(image.width()) + "x" +
                                std::to_string(image.height()) + " not divisible by " +
                                std::to_string(div));
  }
  WaveletPyramid pyr;
  Image cur = image;
  for (int j = 0; j < levels; ++j) {
    const std::size_t w = cur.width();
    const std::size_t h = cur.height();
    const std::size_t hw = w / 2;
    const std::size_t hh = h / 2;
    // Rows: left half lowpass in x, right half highpass in x.
    Image rows(w, h);
    for (std::size_t r = 0; r < h; ++r) {
      const double* in = &cur.samples()[r * w];
      double* out = &rows.samples()[r * w];
      analyze_line(in, 1, w, out, out + hw, 1);
    }
    Image both(w, h);
    for (std::size_t c = 0; c < w; ++c) {
      const double* in = &rows.samples()[c];
      double* out = &both.samples()[c];
      analyze_line(in, w, h, out, out + hh * w, w);
    }
    WaveletPyramid::Level lvl{Image(hw, hh), Image(hw, hh), Image(hw, hh)};
    Image ll(hw, hh);
    for (std::size_t r = 0; r < hh; ++r) {
      for (std::size_t c = 0; c < hw; ++c) {
        ll(r, c) = both(r, c);
        lvl.hl(r, c) = both(r, c + hw);
        lvl.lh(r, c) = both(r + hh, c);
        lvl.hh(r, c) = both(r + hh, c + hw);
      }
    }
    pyr.details.push_back(std::move(lvl));
    cur = std::move(ll);
  }
  pyr.ll = std::move(cur);
  return pyr;
}

Image dwt_inverse(const WaveletPyramid& pyramid) {
  if (pyramid.details.empty()) throw std::invalid_argument("dwt_inverse: no levels");
  Image cur = pyramid.ll;
  for (std::size_t j = pyramid.details.size(); j-- > 0;) {
    const auto& lvl = pyramid.details[j];
    require_same_shape(cur, lvl.lh, "dwt_inverse");
    require_same_shape(cur, lvl.hl, "dwt_inverse");
    require_same_shape(cur, lvl.hh, "dwt_inverse");
    const std::size_t hw = cur.width();
    const std::size_t hh = cur.height();
    const std::size_t w = 2 * hw;
    const std::size_t h = 2 * hh;
    Image both(w, h);
    for (std::size_t r = 0; r < hh; ++r) {
      for (std::size_t c = 0; c < hw; ++c) {
        both(r, c) = cur(r, c);
        both(r, c + hw) = lvl.hl(r, c);
        both(r + hh, c) = lvl.lh(r, c);
        both(r + hh, c + hw) = lvl.hh(r, c);
      }
    }
    Image rows(w, h);
    for (std::size_t c = 0; c < w; ++c) {
      const double* in = &both.samples()[c];
      synthesize_line(in, in + hh * w, w, h, &rows.samples()[c], w);
    }
    Image out(w, h);
    for (std::size_t r = 0; r < h; ++r) {
      const double* in = &rows.samples()[r * w];
      synthesize_line(in, in + hw, 1, w, &out.samples()[r * w], 1);
    }
    cur = std::move(out);
  }
  return cur;
}

}  // namespace fuselet
