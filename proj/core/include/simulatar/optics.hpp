#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace simulatar {

/// Linear-light RGB triple.
struct LinearColor {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
  friend bool operator==(const LinearColor&, const LinearColor&) = default;
};

enum class BlendMode { Additive, AlphaOver };

/// Where the combiner tint darkens the background.
enum class TintExtent { FullFrame, OverlayRectOnly };

std::string_view to_string(BlendMode mode);
std::string_view to_string(TintExtent extent);
/// Accepts "additive", "alpha-over"/"alpha_over". Throws ValidationError.
BlendMode parse_blend_mode(std::string_view s);
/// Accepts "full"/"full_frame", "rect"/"overlay_rect_only". Throws ValidationError.
TintExtent parse_tint_extent(std::string_view s);

struct BlendParams {
  double transmittance = 1.0;
  double alpha_scale = 1.0;
  double contrast_retention = 1.0;
  BlendMode mode = BlendMode::Additive;
  TintExtent tint_extent = TintExtent::FullFrame;
};

/// Throws ValidationError if any fraction is out of range.
void validate(const BlendParams& params);

/// Standard sRGB EOTF. Throws DomainError outside [0,1].
double srgb_decode(double code);
/// Standard sRGB OETF. Throws DomainError outside [0,1].
double srgb_encode(double linear);

/// Decoded value of each 8-bit sRGB code.
const std::array<double, 256>& srgb_decode_table();

/// Linear value -> 8-bit sRGB code (clamped, round to nearest).
std::uint8_t encode_srgb8(double linear);

/// Black overlay of opacity (1 - T): multiply each channel by T.
LinearColor apply_tint(LinearColor bg, double transmittance);

/// Compress toward mid-gray: 0.5 + (d - 0.5) * retention, clamped.
LinearColor wash_out(LinearColor design, double retention);

/// Composite one design pixel over an (already tinted) background pixel.
///
///   a_eff = design_alpha * alpha_scale, d' = wash_out(design, retention)
///   additive:   out = clamp(bg + d' * a_eff)
///   alpha_over: out = clamp(d' * a_eff + bg * (1 - a_eff))
LinearColor composite_pixel(LinearColor bg, LinearColor design, double design_alpha,
                            const BlendParams& params);

}  // namespace simulatar
