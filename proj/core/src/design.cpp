#include "simulatar/design.hpp"

#include "simulatar/error.hpp"

namespace simulatar {

void validate(const DesignAsset& design) {
  if (design.pixels.width <= 0 || design.pixels.height <= 0)
    throw ValidationError("design '" + design.id + "' has an empty canvas");
  if (design.background_mask &&
      design.background_mask->size() !=
          static_cast<std::size_t>(design.pixels.width) * design.pixels.height) {
    throw ValidationError("design '" + design.id +
                          "': background mask does not match the canvas resolution");
  }
}

DesignAsset load_design(const std::filesystem::path& png,
                        const std::optional<std::filesystem::path>& mask_png, std::string id) {
  DesignAsset design;
  design.id = id.empty() ? png.stem().string() : std::move(id);
  design.pixels = read_png_rgba(png);
  if (mask_png) {
    const FrameBuffer mask = read_png_rgb(*mask_png);
    if (mask.size() != design.pixels.size()) {
      throw ValidationError("design '" + design.id + "': mask " + mask_png->string() + " is " +
                            std::to_string(mask.width) + "x" + std::to_string(mask.height) +
                            ", canvas is " + std::to_string(design.pixels.width) + "x" +
                            std::to_string(design.pixels.height));
    }
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(mask.width) * mask.height);
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = mask.rgb[i * 3] >= 128 ? 1 : 0;
    design.background_mask = std::move(bits);
  }
  validate(design);
  return design;
}

}  // namespace simulatar
