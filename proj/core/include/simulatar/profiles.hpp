#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace simulatar {

struct Resolution {
  int width = 0;
  int height = 0;

  [[nodiscard]] double aspect() const { return static_cast<double>(width) / height; }
  friend bool operator==(const Resolution&, const Resolution&) = default;
};

/// One (lux, value) calibration point of a lighting-dependent curve.
struct CurveAnchor {
  double lux = 0.0;
  double value = 0.0;
  friend bool operator==(const CurveAnchor&, const CurveAnchor&) = default;
};

using LuxCurve = std::vector<CurveAnchor>;

/// Checks the curve invariants (>= 2 anchors, lux strictly increasing and
/// positive, values in [0,1]). Throws ValidationError prefixed with `what`.
void validate_curve(std::span<const CurveAnchor> curve, std::string_view what);

/// Piecewise-linear interpolation in log10(lux), clamped to the end anchors.
/// Throws DomainError for lux <= 0 (or non-finite) and ValidationError for an
/// invalid curve.
double eval_curve(std::span<const CurveAnchor> curve, double lux);

struct HmdProfile {
  std::string id;
  Resolution display_resolution;
  double diagonal_fov_deg = 0.0;
  /// Fraction of real-world light passing the combiner; tint opacity is 1 - T.
  double transmittance = 1.0;
  LuxCurve contrast_curve;
  LuxCurve opacity_curve;
  std::string optics_label;
  std::string display_label;
};

enum class Projection { Rectilinear };

struct CameraProfile {
  std::string id;
  Resolution frame_resolution;
  double diagonal_fov_deg = 0.0;
  /// Nominal w:h of the sensor mode. Usually frame_resolution.aspect(), but
  /// vendors quote FOV against the nominal ratio (e.g. 16:9 for 2704x1520).
  double aspect = 0.0;
  Projection projection = Projection::Rectilinear;
  double fps = 30.0;
};

enum class Location { Indoor, Outdoor, Transport };
enum class Mobility { Sitting, Walking };
enum class LightingClass { Low, High };

std::string_view to_string(Location v);
std::string_view to_string(Mobility v);
std::string_view to_string(LightingClass v);
std::string_view to_string(Projection v);
Location parse_location(std::string_view s);
Mobility parse_mobility(std::string_view s);
LightingClass parse_lighting_class(std::string_view s);

struct ContextClip {
  std::string id;
  std::filesystem::path frames_path;
  Location location = Location::Indoor;
  Mobility mobility = Mobility::Sitting;
  double lighting_lux = 0.0;
  LightingClass lighting_class = LightingClass::Low;
  std::string camera;
};

void validate(const HmdProfile& profile);
void validate(const CameraProfile& profile);
void validate(const ContextClip& clip);

/// Immutable set of HMD and camera profiles keyed by id.
class ProfileRegistry {
 public:
  using HmdMap = std::map<std::string, HmdProfile, std::less<>>;
  using CameraMap = std::map<std::string, CameraProfile, std::less<>>;

  ProfileRegistry() = default;
  ProfileRegistry(HmdMap hmds, CameraMap cameras);

  [[nodiscard]] const HmdProfile* find_hmd(std::string_view id) const;
  [[nodiscard]] const CameraProfile* find_camera(std::string_view id) const;

  /// Throw ConfigError naming the id when it is not registered.
  [[nodiscard]] const HmdProfile& hmd(std::string_view id) const;
  [[nodiscard]] const CameraProfile& camera(std::string_view id) const;

  [[nodiscard]] const HmdMap& hmds() const { return hmds_; }
  [[nodiscard]] const CameraMap& cameras() const { return cameras_; }

 private:
  HmdMap hmds_;
  CameraMap cameras_;
};

/// Built-in "hl2", "nreal-light" and "gopro-hero10-linear".
ProfileRegistry builtin_profiles();

/// Built-ins merged with the JSON config at `config_path` (if any). Objects
/// in the config merge field-by-field onto a built-in with the same id; new
/// ids must be complete. Throws ConfigError (with line/column) on parse
/// failure and ValidationError naming profile and field on bad values.
ProfileRegistry load_profiles(const std::optional<std::filesystem::path>& config_path);

/// Same as load_profiles for an in-memory document; `source` labels errors.
ProfileRegistry load_profiles_from_string(std::string_view text, std::string_view source);

/// Reads assets/contexts/<id>/{meta.json, frames/} entries, sorted by id.
/// A missing contexts/ directory yields an empty library.
std::vector<ContextClip> scan_context_library(const std::filesystem::path& assets_dir);

}  // namespace simulatar
