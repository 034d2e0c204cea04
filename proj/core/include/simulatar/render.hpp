#pragma once

#include <array>
#include <cstdint>

#include "simulatar/design.hpp"
#include "simulatar/geometry.hpp"
#include "simulatar/image.hpp"
#include "simulatar/optics.hpp"
#include "simulatar/profiles.hpp"

namespace simulatar {

struct RenderSettings {
  double lux = 100.0;
  BlendMode mode = BlendMode::Additive;
  TintExtent tint_extent = TintExtent::FullFrame;
};

/// Everything about a (design, hmd, camera, lux) combination that does not
/// depend on the background frame, computed once and reused per frame.
///
/// render() runs the fixed per-frame order:
///   1. decode the background to linear light
///   2. apply the combiner tint (whole frame, or the overlay rect only)
///   3-4. the overlay rect and the resampled design come from the plan
///   5. composite each rect pixel with alpha_scale = opacity_curve(lux)
///      (only on background-mask pixels when the design has a mask) and
///      retention = contrast_curve(lux)
///   6. encode back to 8-bit sRGB
class RenderPlan {
 public:
  RenderPlan(const DesignAsset& design, const HmdProfile& hmd, const CameraProfile& camera,
             const RenderSettings& settings);

  [[nodiscard]] const OverlayRect& rect() const { return rect_; }
  [[nodiscard]] const BlendParams& params() const { return params_; }
  [[nodiscard]] Resolution frame_resolution() const { return frame_; }

  /// Throws IngestionError if bg does not match the camera resolution.
  [[nodiscard]] FrameBuffer render(const FrameBuffer& bg) const;

 private:
  Resolution frame_;
  OverlayRect rect_;
  BlendParams params_;
  ResampledDesign design_;
  // encode(decode(c) * T) for background pixels outside the rect.
  std::array<std::uint8_t, 256> tinted_code_{};
};

FrameBuffer render_frame(const FrameBuffer& bg, const DesignAsset& design, const HmdProfile& hmd,
                         const CameraProfile& camera, double lux, BlendMode mode,
                         TintExtent tint_extent);

}  // namespace simulatar
