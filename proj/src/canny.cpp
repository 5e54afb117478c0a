#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fuselet/metrics.hpp"

namespace fuselet {

namespace {

// Replicated-border read.
double clamped(const Image& img, std::ptrdiff_t r, std::ptrdiff_t c) {
  const auto h = static_cast<std::ptrdiff_t>(img.height());
  const auto w = static_cast<std::ptrdiff_t>(img.width());
  return img(static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(r, 0, h - 1)),
             static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(c, 0, w - 1)));
}

Image gaussian_smooth(const Image& img, double sigma) {
  const int rad = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> taps(static_cast<std::size_t>(2 * rad + 1));
  double sum = 0.0;
  for (int k = -rad; k <= rad; ++k) {
    const double v = std::exp(-0.5 * k * k / (sigma * sigma));
    taps[static_cast<std::size_t>(k + rad)] = v;
    sum += v;
  }
  for (double& t : taps) t /= sum;

  Image rows(img.width(), img.height());
  for (std::size_t r = 0; r < img.height(); ++r) {
    for (std::size_t c = 0; c < img.width(); ++c) {
      double acc = 0.0;
      for (int k = -rad; k <= rad; ++k) {
        acc += taps[static_cast<std::size_t>(k + rad)] *
               clamped(img, static_cast<std::ptrdiff_t>(r), static_cast<std::ptrdiff_t>(c) + k);
      }
      rows(r, c) = acc;
    }
  }
  Image out(img.width(), img.height());
  for (std::size_t r = 0; r < img.height(); ++r) {
    for (std::size_t c = 0; c < img.width(); ++c) {
      double acc = 0.0;
      for (int k = -rad; k <= rad; ++k) {
        acc += taps[static_cast<std::size_t>(k + rad)] *
               clamped(rows, static_cast<std::ptrdiff_t>(r) + k, static_cast<std::ptrdiff_t>(c));
      }
      out(r, c) = acc;
    }
  }
  return out;
}

}  // namespace

Image canny_edges(const Image& image, const CannyConfig& config) {
  if (!(config.sigma > 0.0)) throw std::invalid_argument("canny_edges: sigma must be positive");
  const std::size_t h = image.height();
  const std::size_t w = image.width();
  const Image s = gaussian_smooth(image, config.sigma);

  std::vector<double> mag(h * w);
  std::vector<unsigned char> sector(h * w);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      const auto pr = static_cast<std::ptrdiff_t>(r);
      const auto pc = static_cast<std::ptrdiff_t>(c);
      auto at = [&](int dr, int dc) { return clamped(s, pr + dr, pc + dc); };
      const double gx = (at(-1, 1) + 2 * at(0, 1) + at(1, 1)) - (at(-1, -1) + 2 * at(0, -1) + at(1, -1));
      const double gy = (at(1, -1) + 2 * at(1, 0) + at(1, 1)) - (at(-1, -1) + 2 * at(-1, 0) + at(-1, 1));
      mag[r * w + c] = std::hypot(gx, gy);
      double deg = std::atan2(gy, gx) * 180.0 / std::numbers::pi;
      if (deg < 0.0) deg += 180.0;
      // 0: along x, 1: down-right diagonal, 2: along y, 3: down-left diagonal.
      sector[r * w + c] = deg < 22.5 || deg >= 157.5 ? 0 : deg < 67.5 ? 1 : deg < 112.5 ? 2 : 3;
    }
  }

  std::vector<double> nonzero;
  for (double m : mag) {
    if (m > 0.0) nonzero.push_back(m);
  }
  Image edges(w, h, 0.0);
  if (nonzero.empty()) return edges;
  const auto q_idx = static_cast<std::size_t>(
      std::floor(config.high_quantile * static_cast<double>(nonzero.size() - 1)));
  std::nth_element(nonzero.begin(), nonzero.begin() + static_cast<std::ptrdiff_t>(q_idx),
                   nonzero.end());
  const double high = nonzero[q_idx];
  const double low = config.low_ratio * high;

  static constexpr int kStep[4][2] = {{0, 1}, {1, 1}, {1, 0}, {1, -1}};
  auto mag_at = [&](std::ptrdiff_t r, std::ptrdiff_t c) {
    r = std::clamp<std::ptrdiff_t>(r, 0, static_cast<std::ptrdiff_t>(h) - 1);
    c = std::clamp<std::ptrdiff_t>(c, 0, static_cast<std::ptrdiff_t>(w) - 1);
    return mag[static_cast<std::size_t>(r) * w + static_cast<std::size_t>(c)];
  };
  std::vector<double> thin(h * w, 0.0);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      const double m = mag[r * w + c];
      if (m <= 0.0) continue;
      const auto& st = kStep[sector[r * w + c]];
      const auto pr = static_cast<std::ptrdiff_t>(r);
      const auto pc = static_cast<std::ptrdiff_t>(c);
      // Strict against the backward neighbour, non-strict forward, so a
      // plateau of two equal maxima keeps exactly one pixel.
      if (m > mag_at(pr - st[0], pc - st[1]) && m >= mag_at(pr + st[0], pc + st[1])) {
        thin[r * w + c] = m;
      }
    }
  }

  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < thin.size(); ++i) {
    if (thin[i] >= high && edges.samples()[i] == 0.0) {
      edges.samples()[i] = 255.0;
      stack.push_back(i);
    }
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      const auto pr = static_cast<std::ptrdiff_t>(p / w);
      const auto pc = static_cast<std::ptrdiff_t>(p % w);
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          const auto nr = pr + dr;
          const auto nc = pc + dc;
          if (nr < 0 || nc < 0 || nr >= static_cast<std::ptrdiff_t>(h) ||
              nc >= static_cast<std::ptrdiff_t>(w)) {
            continue;
          }
          const std::size_t q = static_cast<std::size_t>(nr) * w + static_cast<std::size_t>(nc);
          if (edges.samples()[q] == 0.0 && thin[q] > 0.0 && thin[q] >= low) {
            edges.samples()[q] = 255.0;
            stack.push_back(q);
          }
        }
      }
    }
  }
  return edges;
}

}  // namespace fuselet
