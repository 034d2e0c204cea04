#include "simulatar/optics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "simulatar/error.hpp"

namespace simulatar {
namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void require_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0))
    throw DomainError(std::string(what) + " must be in [0,1], got " + std::to_string(v));
}

double decode_unchecked(double c) {
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double encode_unchecked(double l) {
  return l <= 0.0031308 ? l * 12.92 : 1.055 * std::pow(l, 1.0 / 2.4) - 0.055;
}

}  // namespace

std::string_view to_string(BlendMode mode) {
  return mode == BlendMode::Additive ? "additive" : "alpha-over";
}

std::string_view to_string(TintExtent extent) {
  return extent == TintExtent::FullFrame ? "full" : "rect";
}

BlendMode parse_blend_mode(std::string_view s) {
  if (s == "additive") return BlendMode::Additive;
  if (s == "alpha-over" || s == "alpha_over") return BlendMode::AlphaOver;
  throw ValidationError("unknown blend mode '" + std::string(s) +
                        "' (expected additive or alpha-over)");
}

TintExtent parse_tint_extent(std::string_view s) {
  if (s == "full" || s == "full_frame") return TintExtent::FullFrame;
  if (s == "rect" || s == "overlay_rect_only") return TintExtent::OverlayRectOnly;
  throw ValidationError("unknown tint extent '" + std::string(s) + "' (expected full or rect)");
}

void validate(const BlendParams& p) {
  if (!(p.transmittance > 0.0 && p.transmittance <= 1.0))
    throw ValidationError("transmittance must be in (0,1]");
  if (!(p.alpha_scale >= 0.0 && p.alpha_scale <= 1.0))
    throw ValidationError("alpha_scale must be in [0,1]");
  if (!(p.contrast_retention >= 0.0 && p.contrast_retention <= 1.0))
    throw ValidationError("contrast_retention must be in [0,1]");
}

double srgb_decode(double code) {
  require_unit(code, "sRGB code");
  return decode_unchecked(code);
}

double srgb_encode(double linear) {
  require_unit(linear, "linear value");
  return encode_unchecked(linear);
}

const std::array<double, 256>& srgb_decode_table() {
  static const std::array<double, 256> table = [] {
    std::array<double, 256> t{};
    for (int i = 0; i < 256; ++i) t[i] = decode_unchecked(i / 255.0);
    return t;
  }();
  return table;
}

std::uint8_t encode_srgb8(double linear) {
  const double code = encode_unchecked(clamp01(linear));
  return static_cast<std::uint8_t>(std::lround(code * 255.0));
}

LinearColor apply_tint(LinearColor bg, double transmittance) {
  return {bg.r * transmittance, bg.g * transmittance, bg.b * transmittance};
}

LinearColor wash_out(LinearColor d, double retention) {
  const auto squash = [retention](double c) { return clamp01(0.5 + (c - 0.5) * retention); };
  return {squash(d.r), squash(d.g), squash(d.b)};
}

LinearColor composite_pixel(LinearColor bg, LinearColor design, double design_alpha,
                            const BlendParams& params) {
  const double a = design_alpha * params.alpha_scale;
  const LinearColor d = wash_out(design, params.contrast_retention);
  if (params.mode == BlendMode::Additive) {
    return {clamp01(bg.r + d.r * a), clamp01(bg.g + d.g * a), clamp01(bg.b + d.b * a)};
  }
  const double keep = 1.0 - a;
  return {clamp01(d.r * a + bg.r * keep), clamp01(d.g * a + bg.g * keep),
          clamp01(d.b * a + bg.b * keep)};
}

}  // namespace simulatar
