#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fuselet/image.hpp"
#include "fuselet/nsct.hpp"
#include "fuselet/wavelet.hpp"

namespace fuselet {

/// Affine map of the band's [min, max] onto [0, 255]; constant bands map to 0.
/// For viewing only.
Image normalized_for_display(const Image& band);

/// Writes `<prefix>_low.pgm` and `<prefix>_s<scale>_d<direction>.pgm` (1-based)
/// into `dir`, returning the paths written.
std::vector<std::filesystem::path> dump_pyramid(const NsctPyramid& pyramid,
                                                const std::filesystem::path& dir,
                                                const std::string& prefix);

/// Writes `<prefix>_ll.pgm` and `<prefix>_l<level>_{lh,hl,hh}.pgm`.
std::vector<std::filesystem::path> dump_pyramid(const WaveletPyramid& pyramid,
                                                const std::filesystem::path& dir,
                                                const std::string& prefix);

}  // namespace fuselet
