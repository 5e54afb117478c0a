#include "fuselet/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <limits>
#include <system_error>
#include <vector>

namespace fuselet {

namespace {

constexpr std::size_t kMaxPixels = std::size_t{1} << 28;

[[noreturn]] void fail(IoErrorKind kind, const std::filesystem::path& path, const std::string& what) {
  throw ImageIoError(kind, path.string() + ": " + what);
}

std::vector<unsigned char> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(IoErrorKind::unreadable, path, "cannot open file");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) fail(IoErrorKind::unreadable, path, "read error");
  return bytes;
}

// Cursor over a PGM header: whitespace-separated tokens, '#' comments.
class PgmCursor {
 public:
  PgmCursor(const std::vector<unsigned char>& bytes, const std::filesystem::path& path)
      : bytes_(bytes), path_(path) {}

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

  void skip_space() {
    while (pos_ < bytes_.size()) {
      const unsigned char ch = bytes_[pos_];
      if (ch == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(ch)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  // Parses a non-negative decimal integer. Returns false at end of input.
  bool next_uint(std::uint64_t& value, IoErrorKind overflow_kind) {
    skip_space();
    if (pos_ >= bytes_.size()) return false;
    if (!std::isdigit(bytes_[pos_])) fail(IoErrorKind::malformed_header, path_, "expected integer");
    value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + static_cast<std::uint64_t>(bytes_[pos_] - '0');
      if (value > std::numeric_limits<std::uint32_t>::max()) {
        fail(overflow_kind, path_, "integer out of range");
      }
      ++pos_;
    }
    return true;
  }

  std::uint64_t header_uint() {
    std::uint64_t v = 0;
    if (!next_uint(v, IoErrorKind::dimension_overflow)) {
      fail(IoErrorKind::malformed_header, path_, "header ends prematurely");
    }
    return v;
  }

 private:
  const std::vector<unsigned char>& bytes_;
  const std::filesystem::path& path_;
  std::size_t pos_ = 0;
};

Image decode_pgm(const std::vector<unsigned char>& bytes, const std::filesystem::path& path) {
  const bool binary = bytes[1] == '5';
  PgmCursor cur(bytes, path);
  cur.advance(2);
  const std::uint64_t width = cur.header_uint();
  const std::uint64_t height = cur.header_uint();
  const std::uint64_t maxval = cur.header_uint();
  if (width == 0 || height == 0) fail(IoErrorKind::malformed_header, path, "zero dimension");
  if (width * height > kMaxPixels) fail(IoErrorKind::dimension_overflow, path, "image too large");
  if (maxval == 0 || maxval > 65535) {
    fail(IoErrorKind::unsupported_depth, path, "maxval " + std::to_string(maxval));
  }
  const std::size_t count = width * height;
  const double scale = maxval > 255 ? 255.0 / static_cast<double>(maxval) : 1.0;
  std::vector<double> samples(count);

  if (binary) {
    // Exactly one whitespace byte separates maxval from the raster.
    if (cur.pos() >= bytes.size() || !std::isspace(bytes[cur.pos()])) {
      fail(IoErrorKind::payload_truncated, path, "missing raster");
    }
    cur.advance(1);
    const std::size_t bytes_per = maxval > 255 ? 2 : 1;
    if (bytes.size() - cur.pos() < count * bytes_per) {
      fail(IoErrorKind::payload_truncated, path,
           "expected " + std::to_string(count * bytes_per) + " payload bytes, found " +
               std::to_string(bytes.size() - cur.pos()));
    }
    const unsigned char* p = bytes.data() + cur.pos();
    for (std::size_t i = 0; i < count; ++i) {
      const unsigned v = bytes_per == 2 ? (unsigned{p[2 * i]} << 8) | p[2 * i + 1] : p[i];
      samples[i] = std::min<double>(v, static_cast<double>(maxval)) * scale;
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      std::uint64_t v = 0;
      if (!cur.next_uint(v, IoErrorKind::unsupported_depth)) {
        fail(IoErrorKind::payload_truncated, path,
             "expected " + std::to_string(count) + " samples, found " + std::to_string(i));
      }
      samples[i] = static_cast<double>(std::min<std::uint64_t>(v, maxval)) * scale;
    }
  }
  return Image(width, height, std::move(samples));
}

Image decode_png(const std::filesystem::path& path) {
  png_image img{};
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&img, path.c_str())) {
    fail(IoErrorKind::malformed_header, path, img.message);
  }
  if (img.format & (PNG_FORMAT_FLAG_COLOR | PNG_FORMAT_FLAG_ALPHA)) {
    png_image_free(&img);
    fail(IoErrorKind::unsupported_format, path, "PNG is not single-channel grayscale");
  }
  if (img.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&img);
    fail(IoErrorKind::unsupported_depth, path, "only 8-bit grayscale PNG is supported");
  }
  if (std::size_t{img.width} * img.height > kMaxPixels) {
    png_image_free(&img);
    fail(IoErrorKind::dimension_overflow, path, "image too large");
  }
  img.format = PNG_FORMAT_GRAY;
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(img));
  if (!png_image_finish_read(&img, nullptr, buffer.data(), 0, nullptr)) {
    fail(IoErrorKind::payload_truncated, path, img.message);
  }
  std::vector<double> samples(buffer.begin(), buffer.end());
  return Image(img.width, img.height, std::move(samples));
}

bool is_png_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png";
}

}  // namespace

const char* to_string(IoErrorKind kind) noexcept {
  switch (kind) {
    case IoErrorKind::unreadable: return "unreadable";
    case IoErrorKind::unsupported_format: return "unsupported format";
    case IoErrorKind::unsupported_depth: return "unsupported bit depth";
    case IoErrorKind::malformed_header: return "malformed header";
    case IoErrorKind::dimension_overflow: return "dimension overflow";
    case IoErrorKind::payload_truncated: return "payload truncated";
    case IoErrorKind::write_failed: return "write failed";
  }
  return "unknown";
}

unsigned char quantize_sample(double value) noexcept {
  return static_cast<unsigned char>(std::round(std::clamp(value, 0.0, 255.0)));
}

Image quantized(const Image& image) {
  Image out = image;
  for (double& v : out.samples()) v = quantize_sample(v);
  return out;
}

Image load_image(const std::filesystem::path& path) {
  const std::vector<unsigned char> bytes = read_all(path);
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '2' || bytes[1] == '5')) {
    return decode_pgm(bytes, path);
  }
  static constexpr unsigned char kPngMagic[] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= 8 && std::equal(std::begin(kPngMagic), std::end(kPngMagic), bytes.begin())) {
    return decode_png(path);
  }
  fail(IoErrorKind::unsupported_format, path, "not a PGM (P2/P5) or PNG file");
}

void save_image(const Image& image, const std::filesystem::path& path) {
  std::vector<unsigned char> pixels(image.size());
  std::transform(image.samples().begin(), image.samples().end(), pixels.begin(), quantize_sample);

  std::filesystem::path tmp = path;
  tmp += ".partial";
  bool ok = false;
  if (is_png_path(path)) {
    png_image img{};
    img.version = PNG_IMAGE_VERSION;
    img.width = static_cast<png_uint_32>(image.width());
    img.height = static_cast<png_uint_32>(image.height());
    img.format = PNG_FORMAT_GRAY;
    ok = png_image_write_to_file(&img, tmp.c_str(), 0, pixels.data(), 0, nullptr) != 0;
  } else {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (out) {
      out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
      out.write(reinterpret_cast<const char*>(pixels.data()),
                static_cast<std::streamsize>(pixels.size()));
      out.close();
      ok = static_cast<bool>(out);
    }
  }
  std::error_code ec;
  if (ok) {
    std::filesystem::rename(tmp, path, ec);
    if (!ec) return;
  }
  std::filesystem::remove(tmp, ec);
  fail(IoErrorKind::write_failed, path, "cannot write image");
}

}  // namespace fuselet
