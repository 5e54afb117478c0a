#include "fuselet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fuselet {

const char* to_string(Statistic s) noexcept {
  switch (s) {
    case Statistic::entropy: return "entropy";
    case Statistic::mean: return "mean";
    case Statistic::sd: return "sd";
  }
  return "unknown";
}

std::vector<int> quantize_to_bins(const Image& band) {
  const auto s = band.samples();
  const auto [lo_it, hi_it] = std::minmax_element(s.begin(), s.end());
  const double lo = *lo_it;
  const double span = *hi_it - lo;
  std::vector<int> bins(s.size(), 0);
  if (span > 0.0) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      const int b = static_cast<int>(std::floor((s[i] - lo) / span * 256.0));
      bins[i] = std::clamp(b, 0, 255);
    }
  }
  return bins;
}

namespace {

double window_entropy(std::vector<int>& ids) {
  std::sort(ids.begin(), ids.end());
  const double n = static_cast<double>(ids.size());
  double h = 0.0;
  for (std::size_t i = 0; i < ids.size();) {
    std::size_t j = i;
    while (j < ids.size() && ids[j] == ids[i]) ++j;
    const double p = static_cast<double>(j - i) / n;
    h -= p * std::log2(p);
    i = j;
  }
  return h;
}

}  // namespace

StatMap local_statistic_map(const Image& band, Statistic statistic, int radius) {
  if (band.empty()) throw std::invalid_argument("local_statistic_map: empty band");
  if (radius < 0) throw std::invalid_argument("local_statistic_map: negative radius");
  const std::size_t w = band.width();
  const std::size_t h = band.height();
  const auto side = static_cast<std::size_t>(2 * radius + 1);
  const double n = static_cast<double>(side * side);
  StatMap out(w, h);

  Raster<struct BinTag> bin_band;
  if (statistic == Statistic::entropy) {
    const std::vector<int> q = quantize_to_bins(band);
    bin_band = Raster<BinTag>(w, h, std::vector<double>(q.begin(), q.end()));
  }

  std::vector<double> window(side * side);
  std::vector<int> ids(side * side);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      const auto pr = static_cast<std::ptrdiff_t>(r);
      const auto pc = static_cast<std::ptrdiff_t>(c);
      std::size_t k = 0;
      for (int dr = -radius; dr <= radius; ++dr) {
        for (int dc = -radius; dc <= radius; ++dc, ++k) {
          if (statistic == Statistic::entropy) {
            ids[k] = static_cast<int>(bin_band.wrapped(pr + dr, pc + dc));
          } else {
            window[k] = band.wrapped(pr + dr, pc + dc);
          }
        }
      }
      double value = 0.0;
      switch (statistic) {
        case Statistic::entropy:
          value = window_entropy(ids);
          break;
        case Statistic::mean: {
          double sum = 0.0;
          for (double v : window) sum += v;
          value = sum / n;
          break;
        }
        case Statistic::sd: {
          double sum = 0.0;
          for (double v : window) sum += v;
          const double mean = sum / n;
          double ss = 0.0;
          for (double v : window) ss += (v - mean) * (v - mean);
          value = std::sqrt(ss / n);
          break;
        }
      }
      out(r, c) = value;
    }
  }
  return out;
}

StatMap regional_energy_map(const Image& band) {
  constexpr WeightKernel kernel = weight_kernel();
  constexpr int rad = WeightKernel::kRadius;
  StatMap out(band.width(), band.height());
  for (std::size_t r = 0; r < band.height(); ++r) {
    for (std::size_t c = 0; c < band.width(); ++c) {
      const auto pr = static_cast<std::ptrdiff_t>(r);
      const auto pc = static_cast<std::ptrdiff_t>(c);
      double e = 0.0;
      for (int dr = -rad; dr <= rad; ++dr) {
        for (int dc = -rad; dc <= rad; ++dc) {
          const double v = band.wrapped(pr + dr, pc + dc);
          e += kernel.at(dr, dc) * (v * v);
        }
      }
      out(r, c) = e;
    }
  }
  return out;
}

}  // namespace fuselet
