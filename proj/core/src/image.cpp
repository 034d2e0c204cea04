#include "simulatar/image.hpp"

#include <png.h>
#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <fstream>

#include "simulatar/error.hpp"

namespace simulatar {
namespace {

// zlib level 3 keeps 2.7K frames fast to write; output stays deterministic.
constexpr int kCompressionLevel = 1;

struct ReadImage {
  png_image image;

  ReadImage() {
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
  }
  ~ReadImage() { png_image_free(&image); }
  ReadImage(const ReadImage&) = delete;
  ReadImage& operator=(const ReadImage&) = delete;
};

template <typename Image>
Image decode(std::span<const std::uint8_t> bytes, png_uint_32 format, const std::string& what) {
  ReadImage r;
  if (!png_image_begin_read_from_memory(&r.image, bytes.data(), bytes.size())) {
    throw IoError("cannot decode PNG " + what + ": " + r.image.message);
  }
  r.image.format = format;
  Image out(static_cast<int>(r.image.width), static_cast<int>(r.image.height));
  auto& buffer = [&]() -> std::vector<std::uint8_t>& {
    if constexpr (std::is_same_v<Image, FrameBuffer>) {
      return out.rgb;
    } else {
      return out.rgba;
    }
  }();
  if (buffer.size() != PNG_IMAGE_SIZE(r.image)) throw IoError("unexpected PNG layout " + what);
  // Composite any alpha onto black when the caller asked for RGB.
  png_color background{0, 0, 0};
  if (!png_image_finish_read(&r.image, &background, buffer.data(), 0, nullptr)) {
    throw IoError("cannot decode PNG " + what + ": " + r.image.message);
  }
  return out;
}

struct WriteState {
  png_structp png = nullptr;
  png_infop info = nullptr;

  WriteState() {
    png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (png) info = png_create_info_struct(png);
    if (!png || !info) throw IoError("libpng: out of memory");
  }
  ~WriteState() { png_destroy_write_struct(&png, &info); }
  WriteState(const WriteState&) = delete;
  WriteState& operator=(const WriteState&) = delete;
};

void append_bytes(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

std::vector<std::uint8_t> encode(const std::uint8_t* pixels, int width, int height, int channels) {
  if (width <= 0 || height <= 0) throw IoError("cannot encode an empty image");
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(width) * height * channels / 2 + 1024);

  WriteState s;
  std::vector<png_const_bytep> rows(static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) {
    rows[static_cast<std::size_t>(y)] = pixels + static_cast<std::size_t>(y) * width * channels;
  }

  if (setjmp(png_jmpbuf(s.png))) {
    throw IoError("libpng failed while encoding");
  }
  png_set_write_fn(s.png, &out, append_bytes, nullptr);
  png_set_compression_level(s.png, kCompressionLevel);
  png_set_filter(s.png, PNG_FILTER_TYPE_BASE, PNG_FILTER_SUB);
  png_set_compression_strategy(s.png, Z_RLE);
  png_set_IHDR(s.png, s.info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
               channels == 4 ? PNG_COLOR_TYPE_RGB_ALPHA : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_set_sRGB(s.png, s.info, PNG_sRGB_INTENT_PERCEPTUAL);
  png_write_info(s.png, s.info);
  png_write_image(s.png, const_cast<png_bytepp>(rows.data()));
  png_write_end(s.png, nullptr);
  return out;
}

}  // namespace

bool looks_like_png(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  in.seekg(0, std::ios::end);
  const auto size = static_cast<std::size_t>(in.tellg());
  in.seekg(0);
  std::vector<std::uint8_t> bytes(size);
  if (size > 0 &&
      !in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(size)))
    throw IoError("cannot read '" + path.string() + "'");
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("cannot write '" + path.string() + "'");
}

Resolution read_png_size(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  // Signature (8) + IHDR length/type (8) + width/height (8).
  std::uint8_t head[24] = {};
  in.read(reinterpret_cast<char*>(head), sizeof head);
  if (in.gcount() != static_cast<std::streamsize>(sizeof head) ||
      !looks_like_png({head, sizeof head}) || std::memcmp(head + 12, "IHDR", 4) != 0) {
    throw IoError("'" + path.string() + "' is not a PNG file");
  }
  const auto be32 = [](const std::uint8_t* p) {
    return static_cast<int>((std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
                            (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]});
  };
  return {be32(head + 16), be32(head + 20)};
}

FrameBuffer decode_png_rgb(std::span<const std::uint8_t> bytes) {
  return decode<FrameBuffer>(bytes, PNG_FORMAT_RGB, "data");
}

RgbaImage decode_png_rgba(std::span<const std::uint8_t> bytes) {
  return decode<RgbaImage>(bytes, PNG_FORMAT_RGBA, "data");
}

FrameBuffer read_png_rgb(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return decode<FrameBuffer>(bytes, PNG_FORMAT_RGB, "'" + path.string() + "'");
}

RgbaImage read_png_rgba(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return decode<RgbaImage>(bytes, PNG_FORMAT_RGBA, "'" + path.string() + "'");
}

std::vector<std::uint8_t> encode_png(const FrameBuffer& frame) {
  return encode(frame.rgb.data(), frame.width, frame.height, 3);
}

std::vector<std::uint8_t> encode_png(const RgbaImage& image) {
  return encode(image.rgba.data(), image.width, image.height, 4);
}

void write_png(const std::filesystem::path& path, const FrameBuffer& frame) {
  write_file(path, encode_png(frame));
}

void write_png(const std::filesystem::path& path, const RgbaImage& image) {
  write_file(path, encode_png(image));
}

FrameBuffer make_thumbnail(const FrameBuffer& frame, int max_width) {
  if (frame.width <= max_width || max_width <= 0) return frame;
  const int factor = (frame.width + max_width - 1) / max_width;
  FrameBuffer out(std::max(1, frame.width / factor), std::max(1, frame.height / factor));
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      int sum[3] = {0, 0, 0};
      int count = 0;
      for (int dy = 0; dy < factor && y * factor + dy < frame.height; ++dy) {
        for (int dx = 0; dx < factor && x * factor + dx < frame.width; ++dx) {
          const auto* p = frame.pixel(x * factor + dx, y * factor + dy);
          for (int c = 0; c < 3; ++c) sum[c] += p[c];
          ++count;
        }
      }
      auto* q = out.pixel(x, y);
      for (int c = 0; c < 3; ++c) q[c] = static_cast<std::uint8_t>((sum[c] + count / 2) / count);
    }
  }
  return out;
}

}  // namespace simulatar
