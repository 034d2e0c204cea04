#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "simulatar/image.hpp"

namespace simulatar {

/// A UI design canvas. `background_mask` (one byte per pixel, non-zero =
/// solid background) restricts the lighting opacity correction to those
/// pixels when present.
struct DesignAsset {
  std::string id;
  RgbaImage pixels;
  std::optional<std::vector<std::uint8_t>> background_mask;

  [[nodiscard]] Resolution canvas_resolution() const { return pixels.size(); }
};

/// Mask size must match the canvas; throws ValidationError otherwise.
void validate(const DesignAsset& design);

/// Loads an RGBA PNG and an optional mask PNG (any channel layout; a pixel
/// is background when its first channel is >= 128).
DesignAsset load_design(const std::filesystem::path& png,
                        const std::optional<std::filesystem::path>& mask_png = std::nullopt,
                        std::string id = {});

}  // namespace simulatar
