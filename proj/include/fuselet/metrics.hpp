#pragma once

#include <optional>
#include <span>
#include <string>

#include "fuselet/image.hpp"

namespace fuselet {

/// Automatic Canny thresholds: the high threshold is the `high_quantile`
/// quantile of all nonzero gradient magnitudes, the low one `low_ratio`
/// times that.
struct CannyConfig {
  double sigma = 1.0;
  double high_quantile = 0.7;
  double low_ratio = 0.4;
};

struct QConfig {
  int window_size = 3;
  double alpha = 1.0;
  CannyConfig canny{};

  /// Throws std::invalid_argument for an even or too small window, negative
  /// alpha or out-of-range Canny settings.
  void validate() const;
};

/// One row of a fusion benchmark: source entropies, fused entropy,
/// gradient similarity and the edge-weighted Piella index.
struct MetricsReport {
  double en1 = 0.0;
  double en2 = 0.0;
  double en3 = 0.0;
  double s = 0.0;
  double pm = 0.0;
  std::string domain;
  std::string rule;
  std::optional<double> threshold;
};

/// Shannon entropy (bits) of the 256-bin histogram of the image's samples
/// after clamping to [0, 255] and rounding.
double entropy(const Image& image);

/// G(m, n) = (|F(m,n) - F(m+1,n+1)| + |F(m,n) - F(m+1,n)|) / 2 on the
/// (height-1) x (width-1) grid; m is the row index.
StatMap gradient_magnitude(const Image& image);

/// Gradient similarity between the fused image and the pointwise-maximum
/// gradient of the two inputs. 1 when both gradient fields vanish.
double similarity(const Image& inputA, const Image& inputB, const Image& fused);

/// Universal image quality index with N-1 sample statistics.
///
/// Degenerate cases: if both signals are constant the result is 1 when their
/// means agree and 0 otherwise; if only the luminance term vanishes it is 0.
double uiqi(std::span<const double> x, std::span<const double> y);

/// Saliency-weighted mean of windowed UIQI against both sources. Windows
/// are window_size x window_size, one centred on every pixel with periodic
/// borders; saliency is the window mean of squared samples.
double weighted_fusion_quality(const Image& a, const Image& b, const Image& f,
                               const QConfig& config = {});

/// Binary edge map (0 or 255): Gaussian smoothing, Sobel gradients,
/// non-maximum suppression, hysteresis. Borders replicate the edge samples.
Image canny_edges(const Image& image, const CannyConfig& config = {});

/// Q_w(a, b, f) * Q_w(a', b', f')^alpha with primes denoting Canny edge maps.
/// Throws std::domain_error for a negative edge term and non-integer alpha.
double piella_metric(const Image& a, const Image& b, const Image& f, const QConfig& config = {});

/// All five table metrics for one fused result.
MetricsReport evaluate_fusion(const Image& a, const Image& b, const Image& fused,
                              const QConfig& config = {});

}  // namespace fuselet
