#include "fuselet/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fuselet/image_io.hpp"

namespace fuselet {

void QConfig::validate() const {
  if (window_size < 3 || window_size % 2 == 0) {
    throw std::invalid_argument("quality window size must be odd and >= 3");
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be a finite value >= 0");
  }
  if (!(canny.sigma > 0.0)) throw std::invalid_argument("canny sigma must be positive");
  if (!(canny.high_quantile > 0.0 && canny.high_quantile < 1.0)) {
    throw std::invalid_argument("canny high quantile must lie in (0, 1)");
  }
  if (!(canny.low_ratio > 0.0 && canny.low_ratio <= 1.0)) {
    throw std::invalid_argument("canny low ratio must lie in (0, 1]");
  }
}

double entropy(const Image& image) {
  std::array<std::size_t, 256> hist{};
  for (double v : image.samples()) ++hist[quantize_sample(v)];
  const double n = static_cast<double>(image.size());
  double h = 0.0;
  for (std::size_t count : hist) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / n;
    h -= p * std::log2(p);
  }
  return h;
}

StatMap gradient_magnitude(const Image& image) {
  if (image.width() < 2 || image.height() < 2) {
    throw std::invalid_argument("gradient_magnitude: image must be at least 2x2");
  }
  StatMap g(image.width() - 1, image.height() - 1);
  for (std::size_t m = 0; m + 1 < image.height(); ++m) {
    for (std::size_t n = 0; n + 1 < image.width(); ++n) {
      const double f = image(m, n);
      g(m, n) = 0.5 * (std::abs(f - image(m + 1, n + 1)) + std::abs(f - image(m + 1, n)));
    }
  }
  return g;
}

double similarity(const Image& inputA, const Image& inputB, const Image& fused) {
  require_same_shape(inputA, inputB, "similarity");
  require_same_shape(inputA, fused, "similarity");
  const StatMap g1 = gradient_magnitude(inputA);
  const StatMap g2 = gradient_magnitude(inputB);
  const StatMap g = gradient_magnitude(fused);
  double diff = 0.0;
  double norm_g = 0.0;
  double norm_ideal = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double ideal = std::max(g1.samples()[i], g2.samples()[i]);
    const double actual = g.samples()[i];
    diff += (actual - ideal) * (actual - ideal);
    norm_g += actual * actual;
    norm_ideal += ideal * ideal;
  }
  const double den = std::sqrt(norm_g) + std::sqrt(norm_ideal);
  if (den == 0.0) return 1.0;
  return 1.0 - std::sqrt(diff) / den;
}

double uiqi(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("uiqi: length mismatch");
  if (x.size() < 2) throw std::invalid_argument("uiqi: need at least two samples");
  const double n = static_cast<double>(x.size());
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double vx = 0.0;
  double vy = 0.0;
  double cxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    vx += dx * dx;
    vy += dy * dy;
    cxy += dx * dy;
  }
  vx /= n - 1.0;
  vy /= n - 1.0;
  cxy /= n - 1.0;
  const double var_sum = vx + vy;
  const double lum_sum = mx * mx + my * my;
  if (var_sum == 0.0) return mx == my ? 1.0 : 0.0;
  if (lum_sum == 0.0) return 0.0;
  return 4.0 * cxy * mx * my / (var_sum * lum_sum);
}

double weighted_fusion_quality(const Image& a, const Image& b, const Image& f,
                               const QConfig& config) {
  config.validate();
  require_same_shape(a, b, "weighted_fusion_quality");
  require_same_shape(a, f, "weighted_fusion_quality");
  const auto side = static_cast<std::size_t>(config.window_size);
  if (a.width() < side || a.height() < side) {
    throw std::invalid_argument("weighted_fusion_quality: image smaller than window");
  }
  const int rad = config.window_size / 2;
  const std::size_t n = side * side;
  std::vector<double> wa(n), wb(n), wf(n);
  double weighted = 0.0;
  double total_saliency = 0.0;
  for (std::size_t r = 0; r < a.height(); ++r) {
    for (std::size_t c = 0; c < a.width(); ++c) {
      std::size_t k = 0;
      double ea = 0.0;
      double eb = 0.0;
      for (int dr = -rad; dr <= rad; ++dr) {
        for (int dc = -rad; dc <= rad; ++dc, ++k) {
          const auto pr = static_cast<std::ptrdiff_t>(r) + dr;
          const auto pc = static_cast<std::ptrdiff_t>(c) + dc;
          wa[k] = a.wrapped(pr, pc);
          wb[k] = b.wrapped(pr, pc);
          wf[k] = f.wrapped(pr, pc);
          ea += wa[k] * wa[k];
          eb += wb[k] * wb[k];
        }
      }
      const double sal_a = ea / static_cast<double>(n);
      const double sal_b = eb / static_cast<double>(n);
      const double lambda = sal_a + sal_b > 0.0 ? sal_a / (sal_a + sal_b) : 0.5;
      const double overall = std::max(sal_a, sal_b);
      if (overall == 0.0) continue;
      weighted += overall * (lambda * uiqi(wa, wf) + (1.0 - lambda) * uiqi(wb, wf));
      total_saliency += overall;
    }
  }
  if (total_saliency == 0.0) {
    // Both sources are identically zero.
    const auto s = f.samples();
    return std::all_of(s.begin(), s.end(), [](double v) { return v == 0.0; }) ? 1.0 : 0.0;
  }
  return weighted / total_saliency;
}

double piella_metric(const Image& a, const Image& b, const Image& f, const QConfig& config) {
  config.validate();
  const double q = weighted_fusion_quality(a, b, f, config);
  if (config.alpha == 0.0) return q;
  const double q_edge = weighted_fusion_quality(canny_edges(a, config.canny),
                                                canny_edges(b, config.canny),
                                                canny_edges(f, config.canny), config);
  if (q_edge < 0.0 && std::trunc(config.alpha) != config.alpha) {
    throw std::domain_error("piella_metric: negative edge quality raised to non-integer alpha");
  }
  return q * std::pow(q_edge, config.alpha);
}

MetricsReport evaluate_fusion(const Image& a, const Image& b, const Image& fused,
                              const QConfig& config) {
  MetricsReport rep;
  rep.en1 = entropy(a);
  rep.en2 = entropy(b);
  rep.en3 = entropy(fused);
  rep.s = similarity(a, b, fused);
  rep.pm = piella_metric(a, b, fused, config);
  return rep;
}

}  // namespace fuselet
