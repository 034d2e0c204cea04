#pragma once

#include <optional>
#include <vector>

#include "simulatar/design.hpp"
#include "simulatar/image.hpp"
#include "simulatar/profiles.hpp"

namespace simulatar {

/// Angular extent of a rectilinear view. All angles in degrees.
struct FovSpec {
  double h_fov_deg = 0.0;
  double v_fov_deg = 0.0;
  double d_fov_deg = 0.0;
  double aspect = 0.0;
};

/// Pixel region of the camera frame covered by the HMD canvas.
struct OverlayRect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  [[nodiscard]] bool contains(int px, int py) const {
    return px >= x && px < x + w && py >= y && py < y + h;
  }
  friend bool operator==(const OverlayRect&, const OverlayRect&) = default;
};

/// Splits a diagonal FOV into horizontal/vertical parts in tan space:
/// tan(h/2) = tan(d/2) * a / sqrt(a^2 + 1), tan(v/2) = tan(d/2) / sqrt(a^2 + 1).
/// Throws DomainError unless 0 < d < 180 and aspect > 0.
FovSpec fov_from_diagonal(double d_fov_deg, double aspect);

FovSpec camera_fov(const CameraProfile& camera);
/// HMD canvas aspect is taken from display_resolution.
FovSpec hmd_fov(const HmdProfile& hmd);

/// Rect subtended by the HMD canvas inside the camera frame. Extents are
/// rounded half away from zero, the origin is floor((frame - extent) / 2).
/// Throws GeometryError if the HMD FOV exceeds the camera FOV on either axis.
OverlayRect overlay_rect(const CameraProfile& camera, const HmdProfile& hmd);

/// Seat distance (same unit as monitor_width) at which a monitor of that
/// width subtends the camera's horizontal FOV. Throws DomainError.
double viewing_distance(double monitor_width, double camera_h_fov_deg);

/// Floating-point RGBA block with linear-light colour and straight alpha.
struct LinearImage {
  int width = 0;
  int height = 0;
  std::vector<double> rgba;  // r, g, b, a per pixel

  LinearImage() = default;
  LinearImage(int w, int h) : width(w), height(h), rgba(static_cast<std::size_t>(w) * h * 4) {}

  [[nodiscard]] double* pixel(int x, int y) {
    return rgba.data() + (static_cast<std::size_t>(y) * width + x) * 4;
  }
  [[nodiscard]] const double* pixel(int x, int y) const {
    return rgba.data() + (static_cast<std::size_t>(y) * width + x) * 4;
  }
};

/// Decodes sRGB colour to linear; alpha passes through scaled to [0,1].
LinearImage to_linear(const RgbaImage& image);

/// Bilinear resample (pixel-centre aligned, edge-clamped) of every channel.
LinearImage resample_bilinear(const LinearImage& src, int width, int height);

/// Same for a single-channel coverage mask in [0,1].
std::vector<double> resample_mask(std::span<const double> mask, Resolution src, int width,
                                  int height);

/// Throws GeometryError when the canvas aspect differs from the rect
/// aspect by more than 2% (message carries both aspects).
void check_canvas_aspect(Resolution canvas, const OverlayRect& rect);

/// Design scaled onto the overlay rect. `mask` holds per-pixel coverage of
/// the solid-background mask and is empty when the design has none.
struct ResampledDesign {
  LinearImage pixels;
  std::vector<double> mask;
};

ResampledDesign resample_design(const DesignAsset& design, const OverlayRect& rect);

}  // namespace simulatar
