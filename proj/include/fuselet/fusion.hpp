#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "fuselet/image.hpp"
#include "fuselet/nsct.hpp"
#include "fuselet/stats.hpp"
#include "fuselet/wavelet.hpp"

namespace fuselet {

enum class Domain { nsct, wavelet };
enum class Rule { entropy, mean, sd, wamm };

const char* to_string(Domain d) noexcept;
const char* to_string(Rule r) noexcept;
std::optional<Domain> parse_domain(std::string_view name) noexcept;
std::optional<Rule> parse_rule(std::string_view name) noexcept;

/// Statistic used to pick low-band coefficients for a rule. WAMM pairs its
/// weighted high-band merge with standard-deviation selection.
Statistic lowband_statistic(Rule rule) noexcept;

/// WAMM match threshold, restricted to the open interval (0, 0.5).
class WammThreshold {
 public:
  static constexpr double kDefault = 0.25;

  explicit WammThreshold(double value = kDefault);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// The 5x5 weight kernel of regional energy doubles as the match-measure
/// window, so only the threshold varies.
struct WammParams {
  WammThreshold threshold;
};

struct WammWeights {
  double w_min;
  double w_max;
};

/// Below the threshold the stronger coefficient wins outright; above it the
/// weights move linearly towards an even split at m = 1.
WammWeights wamm_weights(double match, WammThreshold threshold) noexcept;

/// Denominators below this count as silent windows with a perfect match.
inline constexpr double kSilentEnergy = 1e-12;

struct FusionConfig {
  Domain domain = Domain::nsct;
  Rule rule = Rule::wamm;
  std::vector<int> nsct_levels{2, 3};
  int wavelet_levels = 3;
  WammThreshold threshold{};
  int stat_window_radius = 1;
  NsctOptions nsct_options{};

  /// Throws std::invalid_argument on unusable decomposition settings.
  void validate() const;
};

/// Per position, the coefficient of whichever band has the larger local
/// statistic; ties keep `lowA`.
Image fuse_lowband_select(const Image& lowA, const Image& lowB, Statistic statistic,
                          int radius = 1);

/// Per position, the coefficient with the larger regional energy; ties keep
/// `bandA`.
Image fuse_highband_energy(const Image& bandA, const Image& bandB);

/// Normalized weighted cross-correlation over the 5x5 energy window, clamped
/// to [-1, 1]. Silent windows (E_A + E_B < kSilentEnergy) are a match of 1.
StatMap match_measure_map(const Image& bandA, const Image& bandB);

Image fuse_highband_wamm(const Image& bandA, const Image& bandB, const WammParams& params);

/// Fuses matching coefficients of two decompositions with `config.rule`.
NsctPyramid fuse_pyramids(const NsctPyramid& a, const NsctPyramid& b, const FusionConfig& config);
WaveletPyramid fuse_pyramids(const WaveletPyramid& a, const WaveletPyramid& b,
                             const FusionConfig& config);

/// Decompose, fuse and reconstruct. The result is not clamped.
Image fuse(const Image& imageA, const Image& imageB, const FusionConfig& config);

}  // namespace fuselet
