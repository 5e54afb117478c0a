#include "fuselet/fusion.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "fuselet/parallel.hpp"

namespace fuselet {

const char* to_string(Domain d) noexcept {
  return d == Domain::nsct ? "nsct" : "wavelet";
}

const char* to_string(Rule r) noexcept {
  switch (r) {
    case Rule::entropy: return "entropy";
    case Rule::mean: return "mean";
    case Rule::sd: return "sd";
    case Rule::wamm: return "wamm";
  }
  return "unknown";
}

std::optional<Domain> parse_domain(std::string_view name) noexcept {
  if (name == "nsct") return Domain::nsct;
  if (name == "wavelet") return Domain::wavelet;
  return std::nullopt;
}

std::optional<Rule> parse_rule(std::string_view name) noexcept {
  if (name == "entropy") return Rule::entropy;
  if (name == "mean") return Rule::mean;
  if (name == "sd") return Rule::sd;
  if (name == "wamm") return Rule::wamm;
  return std::nullopt;
}

Statistic lowband_statistic(Rule rule) noexcept {
  switch (rule) {
    case Rule::entropy: return Statistic::entropy;
    case Rule::mean: return Statistic::mean;
    case Rule::sd:
    case Rule::wamm: return Statistic::sd;
  }
  return Statistic::sd;
}

WammThreshold::WammThreshold(double value) : value_(value) {
  if (!(value > 0.0 && value < 0.5)) {
    throw std::invalid_argument("WAMM threshold " + std::to_string(value) +
                                " must lie in the open interval (0, 0.5)");
  }
}

WammWeights wamm_weights(double match, WammThreshold threshold) noexcept {
  const double t = threshold.value();
  if (match < t) return {0.0, 1.0};
  const double w_min = 0.5 - 0.5 * ((1.0 - match) / (1.0 - t));
  return {w_min, 1.0 - w_min};
}

void FusionConfig::validate() const {
  if (nsct_levels.empty()) throw std::invalid_argument("nsct levels must be non-empty");
  for (int l : nsct_levels) {
    if (l < 1 || l > kMaxDirectionExponent) {
      throw std::invalid_argument("nsct direction exponent " + std::to_string(l) +
                                  " outside [1, " + std::to_string(kMaxDirectionExponent) + "]");
    }
  }
  if (wavelet_levels < 1) throw std::invalid_argument("wavelet levels must be >= 1");
  if (stat_window_radius < 1) throw std::invalid_argument("statistic window radius must be >= 1");
  if (!(nsct_options.transition_width > 0.0)) {
    throw std::invalid_argument("wedge transition width must be positive");
  }
}

Image fuse_lowband_select(const Image& lowA, const Image& lowB, Statistic statistic, int radius) {
  require_same_shape(lowA, lowB, "fuse_lowband_select");
  const StatMap sa = local_statistic_map(lowA, statistic, radius);
  const StatMap sb = local_statistic_map(lowB, statistic, radius);
  Image out(lowA.width(), lowA.height());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.samples()[i] = sa.samples()[i] >= sb.samples()[i] ? lowA.samples()[i] : lowB.samples()[i];
  }
  return out;
}

Image fuse_highband_energy(const Image& bandA, const Image& bandB) {
  require_same_shape(bandA, bandB, "fuse_highband_energy");
  const StatMap ea = regional_energy_map(bandA);
  const StatMap eb = regional_energy_map(bandB);
  Image out(bandA.width(), bandA.height());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.samples()[i] = ea.samples()[i] >= eb.samples()[i] ? bandA.samples()[i] : bandB.samples()[i];
  }
  return out;
}

namespace {

StatMap weighted_cross_energy(const Image& a, const Image& b) {
  constexpr WeightKernel kernel = weight_kernel();
  constexpr int rad = WeightKernel::kRadius;
  StatMap out(a.width(), a.height());
  for (std::size_t r = 0; r < a.height(); ++r) {
    for (std::size_t c = 0; c < a.width(); ++c) {
      const auto pr = static_cast<std::ptrdiff_t>(r);
      const auto pc = static_cast<std::ptrdiff_t>(c);
      double acc = 0.0;
      for (int dr = -rad; dr <= rad; ++dr) {
        for (int dc = -rad; dc <= rad; ++dc) {
          acc += kernel.at(dr, dc) * (a.wrapped(pr + dr, pc + dc) * b.wrapped(pr + dr, pc + dc));
        }
      }
      out(r, c) = acc;
    }
  }
  return out;
}

double match_value(double cross, double energy_a, double energy_b) {
  const double den = energy_a + energy_b;
  if (den < kSilentEnergy) return 1.0;
  return std::clamp(2.0 * cross / den, -1.0, 1.0);
}

}  // namespace

StatMap match_measure_map(const Image& bandA, const Image& bandB) {
  require_same_shape(bandA, bandB, "match_measure_map");
  const StatMap ea = regional_energy_map(bandA);
  const StatMap eb = regional_energy_map(bandB);
  StatMap m = weighted_cross_energy(bandA, bandB);
  for (std::size_t i = 0; i < m.size(); ++i) {
    m.samples()[i] = match_value(m.samples()[i], ea.samples()[i], eb.samples()[i]);
  }
  return m;
}

Image fuse_highband_wamm(const Image& bandA, const Image& bandB, const WammParams& params) {
  require_same_shape(bandA, bandB, "fuse_highband_wamm");
  const StatMap ea = regional_energy_map(bandA);
  const StatMap eb = regional_energy_map(bandB);
  const StatMap cross = weighted_cross_energy(bandA, bandB);
  Image out(bandA.width(), bandA.height());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double e_a = ea.samples()[i];
    const double e_b = eb.samples()[i];
    const WammWeights wt = wamm_weights(match_value(cross.samples()[i], e_a, e_b), params.threshold);
    const double ca = bandA.samples()[i];
    const double cb = bandB.samples()[i];
    out.samples()[i] = e_a >= e_b ? wt.w_max * ca + wt.w_min * cb : wt.w_min * ca + wt.w_max * cb;
  }
  return out;
}

namespace {

Image fuse_detail(const Image& a, const Image& b, const FusionConfig& config) {
  if (config.rule == Rule::wamm) return fuse_highband_wamm(a, b, WammParams{config.threshold});
  return fuse_highband_energy(a, b);
}

}  // namespace

NsctPyramid fuse_pyramids(const NsctPyramid& a, const NsctPyramid& b, const FusionConfig& config) {
  if (a.levels != b.levels) throw DimensionMismatch("fuse_pyramids: level layouts differ");
  NsctPyramid out;
  out.levels = a.levels;
  out.low = fuse_lowband_select(a.low, b.low, lowband_statistic(config.rule),
                                config.stat_window_radius);
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  out.bands.resize(a.bands.size());
  for (std::size_t s = 0; s < a.bands.size(); ++s) {
    if (a.bands[s].size() != b.bands[s].size()) {
      throw DimensionMismatch("fuse_pyramids: subband counts differ");
    }
    out.bands[s].resize(a.bands[s].size());
    for (std::size_t d = 0; d < a.bands[s].size(); ++d) jobs.emplace_back(s, d);
  }
  parallel_for(jobs.size(), [&](std::size_t j) {
    const auto [s, d] = jobs[j];
    out.bands[s][d] = fuse_detail(a.bands[s][d], b.bands[s][d], config);
  });
  return out;
}

WaveletPyramid fuse_pyramids(const WaveletPyramid& a, const WaveletPyramid& b,
                             const FusionConfig& config) {
  if (a.levels() != b.levels()) throw DimensionMismatch("fuse_pyramids: level counts differ");
  WaveletPyramid out;
  out.ll = fuse_lowband_select(a.ll, b.ll, lowband_statistic(config.rule),
                               config.stat_window_radius);
  out.details.resize(a.levels());
  parallel_for(3 * a.levels(), [&](std::size_t j) {
    const std::size_t lvl = j / 3;
    Image WaveletPyramid::Level::*band = j % 3 == 0   ? &WaveletPyramid::Level::lh
                                         : j % 3 == 1 ? &WaveletPyramid::Level::hl
                                                      : &WaveletPyramid::Level::hh;
    out.details[lvl].*band = fuse_detail(a.details[lvl].*band, b.details[lvl].*band, config);
  });
  return out;
}

Image fuse(const Image& imageA, const Image& imageB, const FusionConfig& config) {
  config.validate();
  require_same_shape(imageA, imageB, "fuse");
  if (config.domain == Domain::nsct) {
    const NsctPyramid pa = nsct_forward(imageA, config.nsct_levels, config.nsct_options);
    const NsctPyramid pb = nsct_forward(imageB, config.nsct_levels, config.nsct_options);
    return nsct_inverse(fuse_pyramids(pa, pb, config));
  }
  const WaveletPyramid pa = dwt_forward(imageA, config.wavelet_levels);
  const WaveletPyramid pb = dwt_forward(imageB, config.wavelet_levels);
  return dwt_inverse(fuse_pyramids(pa, pb, config));
}

}  // namespace fuselet
