#include "simulatar/render.hpp"

#include "simulatar/error.hpp"

namespace simulatar {

RenderPlan::RenderPlan(const DesignAsset& design, const HmdProfile& hmd,
                       const CameraProfile& camera, const RenderSettings& settings)
    : frame_(camera.frame_resolution), rect_(overlay_rect(camera, hmd)) {
  params_.transmittance = hmd.transmittance;
  params_.alpha_scale = eval_curve(hmd.opacity_curve, settings.lux);
  params_.contrast_retention = eval_curve(hmd.contrast_curve, settings.lux);
  params_.mode = settings.mode;
  params_.tint_extent = settings.tint_extent;
  validate(params_);

  design_ = resample_design(design, rect_);

  const auto& lut = srgb_decode_table();
  for (int c = 0; c < 256; ++c) {
    tinted_code_[static_cast<std::size_t>(c)] =
        encode_srgb8(lut[static_cast<std::size_t>(c)] * params_.transmittance);
  }
}

FrameBuffer RenderPlan::render(const FrameBuffer& bg) const {
  if (bg.size() != frame_) {
    throw IngestionError("background frame is " + std::to_string(bg.width) + "x" +
                         std::to_string(bg.height) + ", camera expects " +
                         std::to_string(frame_.width) + "x" + std::to_string(frame_.height));
  }
  FrameBuffer out = bg;

  if (params_.tint_extent == TintExtent::FullFrame) {
    for (auto& v : out.rgb) v = tinted_code_[v];
  }

  const auto& lut = srgb_decode_table();
  const bool masked = !design_.mask.empty();
  BlendParams px = params_;
  for (int y = 0; y < rect_.h; ++y) {
    for (int x = 0; x < rect_.w; ++x) {
      const std::uint8_t* src = bg.pixel(rect_.x + x, rect_.y + y);
      const LinearColor tinted =
          apply_tint({lut[src[0]], lut[src[1]], lut[src[2]]}, params_.transmittance);
      const double* d = design_.pixels.pixel(x, y);
      if (masked) {
        const double m = design_.mask[static_cast<std::size_t>(y) * rect_.w + x];
        px.alpha_scale = 1.0 - m + m * params_.alpha_scale;
      }
      const LinearColor c = composite_pixel(tinted, {d[0], d[1], d[2]}, d[3], px);
      std::uint8_t* dst = out.pixel(rect_.x + x, rect_.y + y);
      dst[0] = encode_srgb8(c.r);
      dst[1] = encode_srgb8(c.g);
      dst[2] = encode_srgb8(c.b);
    }
  }
  return out;
}

FrameBuffer render_frame(const FrameBuffer& bg, const DesignAsset& design, const HmdProfile& hmd,
                         const CameraProfile& camera, double lux, BlendMode mode,
                         TintExtent tint_extent) {
  const RenderPlan plan(design, hmd, camera, {lux, mode, tint_extent});
  return plan.render(bg);
}

}  // namespace simulatar
