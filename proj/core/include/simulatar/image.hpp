#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "simulatar/profiles.hpp"

namespace simulatar {

/// 8-bit sRGB RGB image, rows packed without padding.
struct FrameBuffer {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  FrameBuffer() = default;
  FrameBuffer(int w, int h) : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3) {}

  [[nodiscard]] Resolution size() const { return {width, height}; }
  [[nodiscard]] std::uint8_t* pixel(int x, int y) {
    return rgb.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }
  [[nodiscard]] const std::uint8_t* pixel(int x, int y) const {
    return rgb.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }
  friend bool operator==(const FrameBuffer&, const FrameBuffer&) = default;
};

/// 8-bit sRGB colour with straight (linear) alpha.
struct RgbaImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgba;

  RgbaImage() = default;
  RgbaImage(int w, int h) : width(w), height(h), rgba(static_cast<std::size_t>(w) * h * 4) {}

  [[nodiscard]] Resolution size() const { return {width, height}; }
  [[nodiscard]] std::uint8_t* pixel(int x, int y) {
    return rgba.data() + (static_cast<std::size_t>(y) * width + x) * 4;
  }
  [[nodiscard]] const std::uint8_t* pixel(int x, int y) const {
    return rgba.data() + (static_cast<std::size_t>(y) * width + x) * 4;
  }
  friend bool operator==(const RgbaImage&, const RgbaImage&) = default;
};

/// True when the bytes start with the PNG signature.
bool looks_like_png(std::span<const std::uint8_t> bytes);

/// Reads only the IHDR; throws IoError on failure.
Resolution read_png_size(const std::filesystem::path& path);

FrameBuffer read_png_rgb(const std::filesystem::path& path);
RgbaImage read_png_rgba(const std::filesystem::path& path);
FrameBuffer decode_png_rgb(std::span<const std::uint8_t> bytes);
RgbaImage decode_png_rgba(std::span<const std::uint8_t> bytes);

/// Deterministic encoder: identical pixels always give identical bytes.
std::vector<std::uint8_t> encode_png(const FrameBuffer& frame);
std::vector<std::uint8_t> encode_png(const RgbaImage& image);

void write_png(const std::filesystem::path& path, const FrameBuffer& frame);
void write_png(const std::filesystem::path& path, const RgbaImage& image);

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

/// Box-filtered downscale so that width <= max_width (never upscales).
FrameBuffer make_thumbnail(const FrameBuffer& frame, int max_width);

}  // namespace simulatar
