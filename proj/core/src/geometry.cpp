#include "simulatar/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "simulatar/error.hpp"
#include "simulatar/optics.hpp"

namespace simulatar {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;
// Allowed relative slack when HMD and camera FOV coincide.
constexpr double kFovSlack = 1e-12;

double half_tan(double fov_deg) { return std::tan(fov_deg * kDegToRad / 2.0); }

int round_half_away(double v) {
  return static_cast<int>(std::lround(v));  // lround rounds halves away from zero
}

std::string describe_fov(const FovSpec& f) {
  std::ostringstream os;
  os << f.h_fov_deg << "x" << f.v_fov_deg << " deg";
  return os.str();
}

// Source coordinate and blend weight for one destination index.
struct Tap {
  int i0;
  int i1;
  double w1;
};

std::vector<Tap> make_taps(int src, int dst) {
  std::vector<Tap> taps(static_cast<std::size_t>(dst));
  const double scale = static_cast<double>(src) / dst;
  for (int i = 0; i < dst; ++i) {
    double s = (i + 0.5) * scale - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(src - 1));
    const int i0 = static_cast<int>(std::floor(s));
    const int i1 = std::min(i0 + 1, src - 1);
    taps[static_cast<std::size_t>(i)] = {i0, i1, s - i0};
  }
  return taps;
}

}  // namespace

FovSpec fov_from_diagonal(double d_fov_deg, double aspect) {
  if (!(d_fov_deg > 0.0 && d_fov_deg < 180.0))
    throw DomainError("diagonal FOV must be in (0, 180) degrees, got " + std::to_string(d_fov_deg));
  if (!(std::isfinite(aspect) && aspect > 0.0))
    throw DomainError("aspect ratio must be positive, got " + std::to_string(aspect));

  const double t = half_tan(d_fov_deg);
  const double norm = std::hypot(aspect, 1.0);
  FovSpec f;
  f.h_fov_deg = 2.0 * std::atan(t * aspect / norm) * kRadToDeg;
  f.v_fov_deg = 2.0 * std::atan(t / norm) * kRadToDeg;
  f.d_fov_deg = d_fov_deg;
  f.aspect = aspect;
  return f;
}

FovSpec camera_fov(const CameraProfile& camera) {
  return fov_from_diagonal(camera.diagonal_fov_deg, camera.aspect);
}

FovSpec hmd_fov(const HmdProfile& hmd) {
  return fov_from_diagonal(hmd.diagonal_fov_deg, hmd.display_resolution.aspect());
}

OverlayRect overlay_rect(const CameraProfile& camera, const HmdProfile& hmd) {
  const FovSpec cam = camera_fov(camera);
  const FovSpec disp = hmd_fov(hmd);

  double fw = half_tan(disp.h_fov_deg) / half_tan(cam.h_fov_deg);
  double fh = half_tan(disp.v_fov_deg) / half_tan(cam.v_fov_deg);
  if (fw > 1.0 + kFovSlack || fh > 1.0 + kFovSlack) {
    throw GeometryError("hmd '" + hmd.id + "' FOV " + describe_fov(disp) + " exceeds camera '" +
                        camera.id + "' FOV " + describe_fov(cam));
  }
  fw = std::min(fw, 1.0);
  fh = std::min(fh, 1.0);

  const Resolution frame = camera.frame_resolution;
  OverlayRect r;
  r.w = std::max(1, round_half_away(fw * frame.width));
  r.h = std::max(1, round_half_away(fh * frame.height));
  r.x = (frame.width - r.w) / 2;  // non-negative, so truncation == floor
  r.y = (frame.height - r.h) / 2;
  return r;
}

double viewing_distance(double monitor_width, double camera_h_fov_deg) {
  if (!(std::isfinite(monitor_width) && monitor_width > 0.0))
    throw DomainError("monitor width must be positive, got " + std::to_string(monitor_width));
  if (!(camera_h_fov_deg > 0.0 && camera_h_fov_deg < 180.0))
    throw DomainError("horizontal FOV must be in (0, 180) degrees, got " +
                      std::to_string(camera_h_fov_deg));
  return (monitor_width / 2.0) / half_tan(camera_h_fov_deg);
}

LinearImage to_linear(const RgbaImage& image) {
  const auto& lut = srgb_decode_table();
  LinearImage out(image.width, image.height);
  const std::size_t n = static_cast<std::size_t>(image.width) * image.height;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t* p = image.rgba.data() + i * 4;
    double* q = out.rgba.data() + i * 4;
    q[0] = lut[p[0]];
    q[1] = lut[p[1]];
    q[2] = lut[p[2]];
    q[3] = p[3] / 255.0;
  }
  return out;
}

LinearImage resample_bilinear(const LinearImage& src, int width, int height) {
  if (width <= 0 || height <= 0 || src.width <= 0 || src.height <= 0)
    throw DomainError("resample needs non-empty source and target");
  const auto xs = make_taps(src.width, width);
  const auto ys = make_taps(src.height, height);
  LinearImage out(width, height);
  for (int y = 0; y < height; ++y) {
    const Tap& ty = ys[static_cast<std::size_t>(y)];
    for (int x = 0; x < width; ++x) {
      const Tap& tx = xs[static_cast<std::size_t>(x)];
      const double* p00 = src.pixel(tx.i0, ty.i0);
      const double* p10 = src.pixel(tx.i1, ty.i0);
      const double* p01 = src.pixel(tx.i0, ty.i1);
      const double* p11 = src.pixel(tx.i1, ty.i1);
      double* q = out.pixel(x, y);
      for (int c = 0; c < 4; ++c) {
        const double top = p00[c] + (p10[c] - p00[c]) * tx.w1;
        const double bottom = p01[c] + (p11[c] - p01[c]) * tx.w1;
        q[c] = top + (bottom - top) * ty.w1;
      }
    }
  }
  return out;
}

std::vector<double> resample_mask(std::span<const double> mask, Resolution src, int width,
                                  int height) {
  if (mask.size() != static_cast<std::size_t>(src.width) * src.height)
    throw ValidationError("mask size does not match its declared resolution");
  const auto xs = make_taps(src.width, width);
  const auto ys = make_taps(src.height, height);
  std::vector<double> out(static_cast<std::size_t>(width) * height);
  const auto at = [&](int x, int y) { return mask[static_cast<std::size_t>(y) * src.width + x]; };
  for (int y = 0; y < height; ++y) {
    const Tap& ty = ys[static_cast<std::size_t>(y)];
    for (int x = 0; x < width; ++x) {
      const Tap& tx = xs[static_cast<std::size_t>(x)];
      const double top = at(tx.i0, ty.i0) + (at(tx.i1, ty.i0) - at(tx.i0, ty.i0)) * tx.w1;
      const double bottom = at(tx.i0, ty.i1) + (at(tx.i1, ty.i1) - at(tx.i0, ty.i1)) * tx.w1;
      out[static_cast<std::size_t>(y) * width + x] = top + (bottom - top) * ty.w1;
    }
  }
  return out;
}

void check_canvas_aspect(Resolution canvas, const OverlayRect& rect) {
  const double design_aspect = canvas.aspect();
  const double rect_aspect = static_cast<double>(rect.w) / rect.h;
  if (std::abs(design_aspect / rect_aspect - 1.0) > 0.02) {
    std::ostringstream os;
    os << "design canvas aspect " << design_aspect << " (" << canvas.width << "x" << canvas.height
       << ") differs from overlay aspect " << rect_aspect << " (" << rect.w << "x" << rect.h
       << ") by more than 2%";
    throw GeometryError(os.str());
  }
}

ResampledDesign resample_design(const DesignAsset& design, const OverlayRect& rect) {
  validate(design);
  check_canvas_aspect(design.canvas_resolution(), rect);
  ResampledDesign out;
  out.pixels = resample_bilinear(to_linear(design.pixels), rect.w, rect.h);
  if (design.background_mask) {
    std::vector<double> coverage(design.background_mask->size());
    for (std::size_t i = 0; i < coverage.size(); ++i)
      coverage[i] = (*design.background_mask)[i] ? 1.0 : 0.0;
    out.mask = resample_mask(coverage, design.canvas_resolution(), rect.w, rect.h);
  }
  return out;
}

}  // namespace simulatar
