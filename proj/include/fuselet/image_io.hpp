#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "fuselet/image.hpp"

namespace fuselet {

enum class IoErrorKind {
  unreadable,          // file missing or cannot be opened
  unsupported_format,  // not PGM P2/P5 or grayscale PNG
  unsupported_depth,   // maxval / bit depth outside 8 or 16 bits
  malformed_header,
  dimension_overflow,  // width*height too large or unparsable dimension
  payload_truncated,
  write_failed,
};

const char* to_string(IoErrorKind kind) noexcept;

class ImageIoError : public std::runtime_error {
 public:
  ImageIoError(IoErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  IoErrorKind kind() const noexcept { return kind_; }

 private:
  IoErrorKind kind_;
};

/// Reads PGM (P2 or P5, maxval up to 65535) or 8-bit grayscale PNG. The
/// format is detected from the file's magic bytes. PGM data with maxval above
/// 255 is rescaled by 255/maxval.
Image load_image(const std::filesystem::path& path);

/// Clamps to [0, 255], rounds half away from zero and writes 8 bits per
/// sample. `.png` paths produce PNG, anything else binary PGM (P5). The file
/// is written to a sibling temporary and renamed into place, so a failed
/// write never leaves a partial file at `path`.
void save_image(const Image& image, const std::filesystem::path& path);

/// The 8-bit sample save_image would emit for `value`.
unsigned char quantize_sample(double value) noexcept;

/// Image with every sample replaced by quantize_sample(sample).
Image quantized(const Image& image);

}  // namespace fuselet
