#pragma once

// Color images and videos, their pure-quaternion encodings, and file I/O.
//
// Pixel values travel through the pipeline as doubles in [0, 255]; they are
// clamped when leaving quaternion space and quantized (round-half-even, then
// clamped) only when written to an image file.  Images come and go as 8-bit
// RGB PNG or 24-bit uncompressed BMP; a video is a directory of numbered PNG
// frames (frame_0001.png, frame_0002.png, ...).

#include <png.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qtc/detail/binary_io.hpp"
#include "qtc/errors.hpp"
#include "qtc/quaternion_matrix.hpp"
#include "qtc/quaternion_tensor.hpp"

namespace qtc {

struct ColorImage {
  Eigen::MatrixXd r, g, b;

  ColorImage() = default;

  ColorImage(Eigen::Index height, Eigen::Index width) : r(checked_zero(height, width)), g(r), b(r) {}

  ColorImage(Eigen::MatrixXd red, Eigen::MatrixXd green, Eigen::MatrixXd blue)
      : r(std::move(red)), g(std::move(green)), b(std::move(blue)) {
    if (r.rows() < 1 || r.cols() < 1) throw std::invalid_argument("image dimensions must be positive");
    if (g.rows() != r.rows() || g.cols() != r.cols() || b.rows() != r.rows() || b.cols() != r.cols())
      throw std::invalid_argument("image channel planes must share one shape");
  }

  Eigen::Index height() const { return r.rows(); }
  Eigen::Index width() const { return r.cols(); }

 private:
  static Eigen::MatrixXd checked_zero(Eigen::Index height, Eigen::Index width) {
    if (height < 1 || width < 1) throw std::invalid_argument("image dimensions must be positive");
    return Eigen::MatrixXd::Zero(height, width);
  }
};

struct ColorVideo {
  std::vector<ColorImage> frames;

  Eigen::Index height() const { return frames.empty() ? 0 : frames.front().height(); }
  Eigen::Index width() const { return frames.empty() ? 0 : frames.front().width(); }
  Eigen::Index num_frames() const { return static_cast<Eigen::Index>(frames.size()); }

  void validate() const {
    if (frames.empty()) throw std::invalid_argument("video has no frames");
    for (const ColorImage& f : frames)
      if (f.height() != height() || f.width() != width())
        throw std::invalid_argument("video frames must share one shape");
  }
};

// Rounds to the nearest integer (ties to even, the default FP environment)
// and clamps to the 8-bit range.  Applied only when writing image files.
inline std::uint8_t quantize_pixel(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::nearbyint(v), 0.0, 255.0));
}

// --- quaternion encodings ----------------------------------------------------

// A color pixel becomes the pure quaternion r*i + g*j + b*k.
inline QuaternionMatrix image_to_qmatrix(const ColorImage& img) {
  QuaternionMatrix q(img.height(), img.width());
  q.component(1) = img.r;
  q.component(2) = img.g;
  q.component(3) = img.b;
  return q;
}

// Inverse encoding: the three imaginary planes become the channels, clamped
// to [0, 255]; the real part is discarded.
inline ColorImage qmatrix_to_image(const QuaternionMatrix& q) {
  ColorImage img(q.rows(), q.cols());
  img.r = q.component(1).cwiseMax(0.0).cwiseMin(255.0);
  img.g = q.component(2).cwiseMax(0.0).cwiseMin(255.0);
  img.b = q.component(3).cwiseMax(0.0).cwiseMin(255.0);
  return img;
}

// A video is an order-3 pure tensor: height x width x frames.  Each frame
// slice matches the matrix encoding of that frame (column-major planes lie
// contiguously in the flat buffer).
inline QuaternionTensor video_to_qtensor(const ColorVideo& v) {
  v.validate();
  const Eigen::Index m = v.height(), n = v.width(), frames = v.num_frames();
  QuaternionTensor t({m, n, frames});
  for (Eigen::Index f = 0; f < frames; ++f) {
    const ColorImage& img = v.frames[static_cast<std::size_t>(f)];
    const Eigen::MatrixXd* planes[3] = {&img.r, &img.g, &img.b};
    for (int c = 0; c < 3; ++c)
      t.component(c + 1).segment(m * n * f, m * n) =
          Eigen::Map<const Eigen::ArrayXd>(planes[c]->data(), m * n);
  }
  return t;
}

inline ColorVideo qtensor_to_video(const QuaternionTensor& t) {
  if (t.order() != 3) throw std::invalid_argument("a video tensor must have order 3");
  const Eigen::Index m = t.dim(0), n = t.dim(1), frames = t.dim(2);
  ColorVideo v;
  for (Eigen::Index f = 0; f < frames; ++f) {
    ColorImage img(m, n);
    Eigen::MatrixXd* planes[3] = {&img.r, &img.g, &img.b};
    for (int c = 0; c < 3; ++c) {
      Eigen::Map<Eigen::ArrayXd>(planes[c]->data(), m * n) =
          t.component(c + 1).segment(m * n * f, m * n).max(0.0).min(255.0);
    }
    v.frames.push_back(std::move(img));
  }
  return v;
}

// --- PNG ----------------------------------------------------------------------

namespace detail {

struct PngCloser {
  std::FILE* f = nullptr;
  ~PngCloser() {
    if (f) std::fclose(f);
  }
};

}  // namespace detail

// Decodes an 8-bit PNG of any color layout to RGB (palette and grayscale are
// expanded, alpha is stripped).  16-bit files are rejected up front.
inline ColorImage load_png(const std::string& path) {
  detail::PngCloser file;
  file.f = std::fopen(path.c_str(), "rb");
  if (!file.f) throw io_error("cannot open for reading: " + path);

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    throw io_error("png decoder initialization failed");
  }

  // Buffers live outside the setjmp region; libpng errors long-jump back
  // here, where the only remaining work is cleanup and a C++ throw.
  std::vector<png_byte> pixels;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw io_error("png decode failed: " + path);
  }

  png_init_io(png, file.f);
  png_read_info(png, info);
  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int depth = png_get_bit_depth(png, info);
  const int color = png_get_color_type(png, info);
  if (depth == 16) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw io_error("unsupported png bit depth 16 (only 8-bit images are handled): " + path);
  }

  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
  png_set_strip_alpha(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  if (png_get_channels(png, info) != 3 || png_get_bit_depth(png, info) != 8) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw io_error("png did not decode to 8-bit rgb: " + path);
  }

  const std::size_t rowbytes = png_get_rowbytes(png, info);
  pixels.resize(rowbytes * height);
  rows.resize(height);
  for (png_uint_32 i = 0; i < height; ++i) rows[i] = pixels.data() + i * rowbytes;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  ColorImage img(static_cast<Eigen::Index>(height), static_cast<Eigen::Index>(width));
  for (png_uint_32 i = 0; i < height; ++i)
    for (png_uint_32 j = 0; j < width; ++j) {
      const png_byte* px = pixels.data() + i * rowbytes + 3 * j;
      img.r(i, j) = px[0];
      img.g(i, j) = px[1];
      img.b(i, j) = px[2];
    }
  return img;
}

inline void save_png(const std::string& path, const ColorImage& img) {
  detail::PngCloser file;
  file.f = std::fopen(path.c_str(), "wb");
  if (!file.f) throw io_error("cannot open for writing: " + path);

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    throw io_error("png encoder initialization failed");
  }

  const Eigen::Index height = img.height(), width = img.width();
  std::vector<png_byte> pixels(static_cast<std::size_t>(height) * static_cast<std::size_t>(width) * 3);
  std::vector<png_bytep> rows(static_cast<std::size_t>(height));
  for (Eigen::Index i = 0; i < height; ++i) {
    png_bytep row = pixels.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(width) * 3;
    rows[static_cast<std::size_t>(i)] = row;
    for (Eigen::Index j = 0; j < width; ++j) {
      row[3 * j + 0] = quantize_pixel(img.r(i, j));
      row[3 * j + 1] = quantize_pixel(img.g(i, j));
      row[3 * j + 2] = quantize_pixel(img.b(i, j));
    }
  }

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw io_error("png encode failed: " + path);
  }
  png_init_io(png, file.f);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

// --- BMP ----------------------------------------------------------------------
//
// Uncompressed 24-bit BI_RGB only.  Rows are stored bottom-up and padded to
// four bytes; a negative height in the header means top-down, which is
// honored on read.

inline void save_bmp(const std::string& path, const ColorImage& img) {
  const Eigen::Index height = img.height(), width = img.width();
  const std::uint32_t stride = (static_cast<std::uint32_t>(width) * 3 + 3) / 4 * 4;
  const std::uint32_t data_size = stride * static_cast<std::uint32_t>(height);

  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open for writing: " + path);
  detail::write_bytes(os, "BM", 2);
  detail::write_u32(os, 54 + data_size);
  detail::write_u16(os, 0);
  detail::write_u16(os, 0);
  detail::write_u32(os, 54);  // pixel data offset
  detail::write_u32(os, 40);  // info header size
  detail::write_u32(os, static_cast<std::uint32_t>(width));
  detail::write_u32(os, static_cast<std::uint32_t>(height));  // positive: bottom-up
  detail::write_u16(os, 1);                                   // planes
  detail::write_u16(os, 24);                                  // bits per pixel
  detail::write_u32(os, 0);                                   // BI_RGB
  detail::write_u32(os, data_size);
  detail::write_u32(os, 2835);  // 72 dpi in pixels per meter
  detail::write_u32(os, 2835);
  detail::write_u32(os, 0);
  detail::write_u32(os, 0);

  std::vector<std::uint8_t> row(stride, 0);
  for (Eigen::Index i = height - 1; i >= 0; --i) {
    for (Eigen::Index j = 0; j < width; ++j) {
      row[static_cast<std::size_t>(3 * j) + 0] = quantize_pixel(img.b(i, j));
      row[static_cast<std::size_t>(3 * j) + 1] = quantize_pixel(img.g(i, j));
      row[static_cast<std::size_t>(3 * j) + 2] = quantize_pixel(img.r(i, j));
    }
    detail::write_bytes(os, row.data(), row.size());
  }
  if (!os) throw io_error("failed writing bmp pixel data: " + path);
}

inline ColorImage load_bmp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open for reading: " + path);
  detail::expect_magic(is, "BM", "bmp");
  detail::read_u32(is, "bmp file size");
  detail::read_u16(is, "bmp reserved");
  detail::read_u16(is, "bmp reserved");
  const std::uint32_t data_offset = detail::read_u32(is, "bmp data offset");

  const std::uint32_t header_size = detail::read_u32(is, "bmp header size");
  if (header_size < 40) throw io_error("unsupported bmp header variant: " + path);
  const auto width = static_cast<std::int32_t>(detail::read_u32(is, "bmp width"));
  const auto raw_height = static_cast<std::int32_t>(detail::read_u32(is, "bmp height"));
  const std::uint16_t planes = detail::read_u16(is, "bmp planes");
  const std::uint16_t bpp = detail::read_u16(is, "bmp bits per pixel");
  const std::uint32_t compression = detail::read_u32(is, "bmp compression");
  if (planes != 1) throw io_error("bmp plane count must be 1: " + path);
  if (bpp != 24) throw io_error("unsupported bmp bit depth (only 24-bit is handled): " + path);
  if (compression != 0) throw io_error("unsupported bmp compression (only BI_RGB is handled): " + path);
  if (width <= 0 || raw_height == 0) throw io_error("bmp dimensions out of range: " + path);

  const bool top_down = raw_height < 0;
  const std::int64_t height = top_down ? -static_cast<std::int64_t>(raw_height) : raw_height;
  is.seekg(data_offset, std::ios::beg);
  if (!is) throw io_error("bmp pixel data offset out of range: " + path);

  const std::size_t stride = (static_cast<std::size_t>(width) * 3 + 3) / 4 * 4;
  std::vector<std::uint8_t> row(stride);
  ColorImage img(static_cast<Eigen::Index>(height), width);
  for (std::int64_t k = 0; k < height; ++k) {
    detail::read_bytes(is, row.data(), stride, "bmp pixel rows");
    const Eigen::Index i = top_down ? k : height - 1 - k;
    for (Eigen::Index j = 0; j < width; ++j) {
      img.b(i, j) = row[static_cast<std::size_t>(3 * j) + 0];
      img.g(i, j) = row[static_cast<std::size_t>(3 * j) + 1];
      img.r(i, j) = row[static_cast<std::size_t>(3 * j) + 2];
    }
  }
  return img;
}

// --- format dispatch ------------------------------------------------------------

// Loads by content: the file's magic bytes pick the decoder, regardless of
// the file name.
inline ColorImage load_image(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw io_error("cannot open for reading: " + path);
  unsigned char sig[8] = {};
  probe.read(reinterpret_cast<char*>(sig), 8);
  const std::streamsize got = probe.gcount();
  static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
  probe.close();
  if (got >= 8 && std::equal(sig, sig + 8, png_sig)) return load_png(path);
  if (got >= 2 && sig[0] == 'B' && sig[1] == 'M') return load_bmp(path);
  throw io_error("unsupported image format (expected png or bmp): " + path);
}

// Saves by extension (.png or .bmp, case-insensitive).
inline void save_image(const std::string& path, const ColorImage& img) {
  std::string ext = std::filesystem::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".png") return save_png(path, img);
  if (ext == ".bmp") return save_bmp(path, img);
  throw std::invalid_argument("unsupported image extension (use .png or .bmp): " + path);
}

// --- frame directories ----------------------------------------------------------

namespace detail {

// Parses "frame_<digits>.png" to its frame number; -1 when the name does not
// follow the convention (such files are ignored by the video loader).
inline std::int64_t parse_frame_number(const std::string& name) {
  constexpr const char* kPrefix = "frame_";
  constexpr const char* kSuffix = ".png";
  if (name.size() < 6 + 1 + 4) return -1;
  if (name.compare(0, 6, kPrefix) != 0) return -1;
  if (name.compare(name.size() - 4, 4, kSuffix) != 0) return -1;
  const std::string digits = name.substr(6, name.size() - 10);
  if (digits.empty() || digits.size() > 9) return -1;
  for (const char c : digits)
    if (c < '0' || c > '9') return -1;
  return std::stoll(digits);
}

}  // namespace detail

inline void save_video(const std::string& dir, const ColorVideo& video) {
  video.validate();
  std::filesystem::create_directories(dir);
  for (Eigen::Index f = 0; f < video.num_frames(); ++f) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%04lld.png", static_cast<long long>(f + 1));
    save_png((std::filesystem::path(dir) / name).string(), video.frames[static_cast<std::size_t>(f)]);
  }
}

// Loads frame_0001.png, frame_0002.png, ... from a directory.  The numbering
// must be exactly 1..T with no gaps or duplicates (any digit padding is
// accepted); other file names are ignored.
inline ColorVideo load_video(const std::string& dir) {
  if (!std::filesystem::is_directory(dir)) throw io_error("not a directory: " + dir);
  std::map<std::int64_t, std::filesystem::path> found;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    const std::int64_t index = detail::parse_frame_number(name);
    if (index < 0) continue;
    const auto [it, inserted] = found.emplace(index, entry.path());
    if (!inserted)
      throw io_error("duplicate frame number in " + dir + ": " + it->second.filename().string() +
                     " vs " + name);
  }
  if (found.empty()) throw io_error("no frame_NNNN.png frames found in: " + dir);

  std::int64_t expected = 1;
  for (const auto& [index, path] : found) {
    if (index != expected)
      throw io_error("frame numbering has a gap in " + dir + ": expected frame " +
                     std::to_string(expected) + ", found " + path.filename().string());
    ++expected;
  }

  ColorVideo video;
  for (const auto& [index, path] : found) {
    ColorImage frame = load_image(path.string());
    if (!video.frames.empty() &&
        (frame.height() != video.height() || frame.width() != video.width()))
      throw io_error("frame sizes differ in " + dir + ": " + path.filename().string());
    video.frames.push_back(std::move(frame));
  }
  return video;
}

// --- combined entry points -------------------------------------------------------

using Media = std::variant<ColorImage, ColorVideo>;

// A directory is a video; a file is an image.
inline Media load_media(const std::string& path) {
  if (std::filesystem::is_directory(path)) return load_video(path);
  return load_image(path);
}

inline void save_media(const std::string& path, const Media& media) {
  if (std::holds_alternative<ColorVideo>(media)) return save_video(path, std::get<ColorVideo>(media));
  save_image(path, std::get<ColorImage>(media));
}

}  // namespace qtc
