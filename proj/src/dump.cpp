#include "fuselet/dump.hpp"

#include <algorithm>

#include "fuselet/image_io.hpp"

namespace fuselet {

Image normalized_for_display(const Image& band) {
  const auto s = band.samples();
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  Image out(band.width(), band.height(), 0.0);
  const double span = *hi - *lo;
  if (span <= 0.0) return out;
  for (std::size_t i = 0; i < s.size(); ++i) out.samples()[i] = (s[i] - *lo) / span * 255.0;
  return out;
}

namespace {

std::filesystem::path write_band(const Image& band, const std::filesystem::path& dir,
                                 const std::string& name) {
  const std::filesystem::path path = dir / (name + ".pgm");
  save_image(normalized_for_display(band), path);
  return path;
}

}  // namespace

std::vector<std::filesystem::path> dump_pyramid(const NsctPyramid& pyramid,
                                                const std::filesystem::path& dir,
                                                const std::string& prefix) {
  std::vector<std::filesystem::path> written;
  written.push_back(write_band(pyramid.low, dir, prefix + "_low"));
  for (std::size_t s = 0; s < pyramid.bands.size(); ++s) {
    for (std::size_t d = 0; d < pyramid.bands[s].size(); ++d) {
      written.push_back(write_band(pyramid.bands[s][d], dir,
                                   prefix + "_s" + std::to_string(s + 1) + "_d" +
                                       std::to_string(d + 1)));
    }
  }
  return written;
}

std::vector<std::filesystem::path> dump_pyramid(const WaveletPyramid& pyramid,
                                                const std::filesystem::path& dir,
                                                const std::string& prefix) {
  std::vector<std::filesystem::path> written;
  written.push_back(write_band(pyramid.ll, dir, prefix + "_ll"));
  for (std::size_t j = 0; j < pyramid.details.size(); ++j) {
    const std::string base = prefix + "_l" + std::to_string(j + 1);
    written.push_back(write_band(pyramid.details[j].lh, dir, base + "_lh"));
    written.push_back(write_band(pyramid.details[j].hl, dir, base + "_hl"));
    written.push_back(write_band(pyramid.details[j].hh, dir, base + "_hh"));
  }
  return written;
}

}  // namespace fuselet
