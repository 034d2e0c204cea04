#include "simulatar/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "json_io.hpp"
#include "simulatar/error.hpp"

namespace simulatar {
namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

[[noreturn]] void invalid(std::string_view profile, std::string_view field,
                          const std::string& why) {
  throw ValidationError("profile '" + std::string(profile) + "': field '" + std::string(field) +
                        "' " + why);
}

HmdProfile make_hmd(std::string id, Resolution res, double fov, double transmittance,
                    LuxCurve contrast, std::string optics, std::string display) {
  HmdProfile p;
  p.id = std::move(id);
  p.display_resolution = res;
  p.diagonal_fov_deg = fov;
  p.transmittance = transmittance;
  p.contrast_curve = std::move(contrast);
  p.opacity_curve = {{100.0, 1.0}, {10000.0, 0.6}};
  p.optics_label = std::move(optics);
  p.display_label = std::move(display);
  return p;
}

// Field readers. Each names the profile and field on failure.

double read_number(const json& obj, std::string_view profile, const char* field) {
  const json& v = obj.at(field);
  if (!v.is_number()) invalid(profile, field, "must be a number");
  return v.get<double>();
}

Resolution read_resolution(const json& obj, std::string_view profile, const char* field) {
  const json& v = obj.at(field);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
    invalid(profile, field, "must be an array [width, height] of integers");
  }
  return {v[0].get<int>(), v[1].get<int>()};
}

LuxCurve read_curve(const json& obj, std::string_view profile, const char* field) {
  const json& v = obj.at(field);
  if (!v.is_array()) invalid(profile, field, "must be an array of [lux, value] pairs");
  LuxCurve curve;
  for (const json& pair : v) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      invalid(profile, field, "must be an array of [lux, value] pairs");
    }
    curve.push_back({pair[0].get<double>(), pair[1].get<double>()});
  }
  return curve;
}

std::string read_string(const json& obj, std::string_view profile, const char* field) {
  const json& v = obj.at(field);
  if (!v.is_string()) invalid(profile, field, "must be a string");
  return v.get<std::string>();
}

void reject_unknown_fields(const json& obj, std::string_view profile,
                           std::initializer_list<std::string_view> known) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("profile '" + std::string(profile) + "': unknown field '" + key + "'");
    }
  }
}

void merge_hmd(HmdProfile& p, const json& obj) {
  reject_unknown_fields(obj, p.id,
                        {"display_resolution", "diagonal_fov_deg", "transmittance",
                         "contrast_curve", "opacity_curve", "optics_label", "display_label"});
  if (obj.contains("display_resolution"))
    p.display_resolution = read_resolution(obj, p.id, "display_resolution");
  if (obj.contains("diagonal_fov_deg"))
    p.diagonal_fov_deg = read_number(obj, p.id, "diagonal_fov_deg");
  if (obj.contains("transmittance")) p.transmittance = read_number(obj, p.id, "transmittance");
  if (obj.contains("contrast_curve")) p.contrast_curve = read_curve(obj, p.id, "contrast_curve");
  if (obj.contains("opacity_curve")) p.opacity_curve = read_curve(obj, p.id, "opacity_curve");
  if (obj.contains("optics_label")) p.optics_label = read_string(obj, p.id, "optics_label");
  if (obj.contains("display_label")) p.display_label = read_string(obj, p.id, "display_label");
}

void merge_camera(CameraProfile& p, const json& obj) {
  reject_unknown_fields(obj, p.id,
                        {"frame_resolution", "diagonal_fov_deg", "aspect", "projection", "fps"});
  const bool resolution_changed = obj.contains("frame_resolution");
  if (resolution_changed) p.frame_resolution = read_resolution(obj, p.id, "frame_resolution");
  if (obj.contains("diagonal_fov_deg"))
    p.diagonal_fov_deg = read_number(obj, p.id, "diagonal_fov_deg");
  if (obj.contains("aspect")) {
    const json& a = obj.at("aspect");
    if (a.is_number()) {
      p.aspect = a.get<double>();
    } else if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number() &&
               a[1].get<double>() != 0.0) {
      p.aspect = a[0].get<double>() / a[1].get<double>();
    } else {
      invalid(p.id, "aspect", "must be a number or a [w, h] pair");
    }
  } else if (resolution_changed && p.frame_resolution.height > 0) {
    p.aspect = p.frame_resolution.aspect();
  }
  if (obj.contains("projection")) {
    if (read_string(obj, p.id, "projection") != "rectilinear")
      invalid(p.id, "projection", "must be \"rectilinear\"");
    p.projection = Projection::Rectilinear;
  }
  if (obj.contains("fps")) p.fps = read_number(obj, p.id, "fps");
}

void require_fields(const json& obj, std::string_view profile,
                    std::initializer_list<const char*> fields) {
  for (const char* f : fields) {
    if (!obj.contains(f)) invalid(profile, f, "is required for a new profile");
  }
}

}  // namespace

void validate_curve(std::span<const CurveAnchor> curve, std::string_view what) {
  const std::string prefix(what);
  if (curve.size() < 2) throw ValidationError(prefix + " needs at least 2 anchors");
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const auto& a = curve[i];
    if (!std::isfinite(a.lux) || a.lux <= 0.0)
      throw ValidationError(prefix + " anchor " + std::to_string(i) + " has non-positive lux");
    if (!(a.value >= 0.0 && a.value <= 1.0))
      throw ValidationError(prefix + " anchor " + std::to_string(i) + " value " +
                            fmt_double(a.value) + " outside [0,1]");
    if (i > 0 && !(a.lux > curve[i - 1].lux))
      throw ValidationError(prefix + " anchors must be strictly increasing in lux");
  }
}

double eval_curve(std::span<const CurveAnchor> curve, double lux) {
  if (!std::isfinite(lux) || lux <= 0.0)
    throw DomainError("lux must be a positive finite number, got " + fmt_double(lux));
  validate_curve(curve, "curve");

  if (lux <= curve.front().lux) return curve.front().value;
  if (lux >= curve.back().lux) return curve.back().value;

  const auto upper = std::upper_bound(curve.begin(), curve.end(), lux,
                                      [](double l, const CurveAnchor& a) { return l < a.lux; });
  const auto& hi = *upper;
  const auto& lo = *(upper - 1);
  const double t =
      (std::log10(lux) - std::log10(lo.lux)) / (std::log10(hi.lux) - std::log10(lo.lux));
  return lo.value + t * (hi.value - lo.value);
}

std::string_view to_string(Location v) {
  switch (v) {
    case Location::Indoor:
      return "indoor";
    case Location::Outdoor:
      return "outdoor";
    case Location::Transport:
      return "transport";
  }
  return "?";
}

std::string_view to_string(Mobility v) { return v == Mobility::Sitting ? "sitting" : "walking"; }

std::string_view to_string(LightingClass v) { return v == LightingClass::Low ? "low" : "high"; }

std::string_view to_string(Projection) { return "rectilinear"; }

Location parse_location(std::string_view s) {
  if (s == "indoor") return Location::Indoor;
  if (s == "outdoor") return Location::Outdoor;
  if (s == "transport") return Location::Transport;
  throw ValidationError("unknown location '" + std::string(s) + "'");
}

Mobility parse_mobility(std::string_view s) {
  if (s == "sitting") return Mobility::Sitting;
  if (s == "walking") return Mobility::Walking;
  throw ValidationError("unknown mobility '" + std::string(s) + "'");
}

LightingClass parse_lighting_class(std::string_view s) {
  if (s == "low") return LightingClass::Low;
  if (s == "high") return LightingClass::High;
  throw ValidationError("unknown lighting class '" + std::string(s) + "'");
}

void validate(const HmdProfile& p) {
  if (p.id.empty()) throw ValidationError("hmd profile with empty id");
  if (p.display_resolution.width <= 0 || p.display_resolution.height <= 0)
    invalid(p.id, "display_resolution", "components must be > 0");
  if (!(p.diagonal_fov_deg > 0.0 && p.diagonal_fov_deg < 180.0))
    invalid(p.id, "diagonal_fov_deg", "must be in (0, 180), got " + fmt_double(p.diagonal_fov_deg));
  if (!(p.transmittance > 0.0 && p.transmittance <= 1.0))
    invalid(p.id, "transmittance", "must be in (0, 1], got " + fmt_double(p.transmittance));
  validate_curve(p.contrast_curve, "profile '" + p.id + "': field 'contrast_curve'");
  validate_curve(p.opacity_curve, "profile '" + p.id + "': field 'opacity_curve'");
}

void validate(const CameraProfile& p) {
  if (p.id.empty()) throw ValidationError("camera profile with empty id");
  if (p.frame_resolution.width <= 0 || p.frame_resolution.height <= 0)
    invalid(p.id, "frame_resolution", "components must be > 0");
  if (!(p.diagonal_fov_deg > 0.0 && p.diagonal_fov_deg < 180.0))
    invalid(p.id, "diagonal_fov_deg", "must be in (0, 180), got " + fmt_double(p.diagonal_fov_deg));
  if (!(std::isfinite(p.aspect) && p.aspect > 0.0)) invalid(p.id, "aspect", "must be positive");
  if (!(std::isfinite(p.fps) && p.fps > 0.0)) invalid(p.id, "fps", "must be positive");
}

void validate(const ContextClip& c) {
  if (c.id.empty()) throw ValidationError("context clip with empty id");
  if (c.frames_path.empty())
    throw ValidationError("context '" + c.id + "': field 'frames_path' is empty");
  if (!(std::isfinite(c.lighting_lux) && c.lighting_lux > 0.0))
    throw ValidationError("context '" + c.id + "': field 'lighting_lux' must be > 0");
  if (c.camera.empty()) throw ValidationError("context '" + c.id + "': field 'camera' is empty");
}

ProfileRegistry::ProfileRegistry(HmdMap hmds, CameraMap cameras)
    : hmds_(std::move(hmds)), cameras_(std::move(cameras)) {
  for (const auto& [_, p] : hmds_) validate(p);
  for (const auto& [_, p] : cameras_) validate(p);
}

const HmdProfile* ProfileRegistry::find_hmd(std::string_view id) const {
  const auto it = hmds_.find(id);
  return it == hmds_.end() ? nullptr : &it->second;
}

const CameraProfile* ProfileRegistry::find_camera(std::string_view id) const {
  const auto it = cameras_.find(id);
  return it == cameras_.end() ? nullptr : &it->second;
}

const HmdProfile& ProfileRegistry::hmd(std::string_view id) const {
  if (const auto* p = find_hmd(id)) return *p;
  throw ConfigError("unknown hmd profile '" + std::string(id) + "'");
}

const CameraProfile& ProfileRegistry::camera(std::string_view id) const {
  if (const auto* p = find_camera(id)) return *p;
  throw ConfigError("unknown camera profile '" + std::string(id) + "'");
}

ProfileRegistry builtin_profiles() {
  ProfileRegistry::HmdMap hmds;
  // FOV and transmittance are vendor/placeholder figures; calibrate per device.
  hmds.emplace("hl2", make_hmd("hl2", {1440, 936}, 52.0, 0.40, {{100.0, 1.0}, {10000.0, 0.3}},
                               "Waveguides", "Laser Beam Scanning"));
  hmds.emplace("nreal-light", make_hmd("nreal-light", {1920, 1080}, 52.0, 0.25,
                                       {{100.0, 1.0}, {10000.0, 0.6}}, "Birdbath", "OLED"));

  ProfileRegistry::CameraMap cameras;
  CameraProfile gopro;
  gopro.id = "gopro-hero10-linear";
  gopro.frame_resolution = {2704, 1520};
  gopro.diagonal_fov_deg = 95.0;
  gopro.aspect = 16.0 / 9.0;
  gopro.fps = 50.0;
  cameras.emplace(gopro.id, gopro);

  return {std::move(hmds), std::move(cameras)};
}

ProfileRegistry load_profiles_from_string(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(source) + ":" + detail::describe_parse_error(text, e.byte) +
                      ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError(std::string(source) + ": top level must be an object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "hmd_profiles" && key != "camera_profiles")
      throw ConfigError(std::string(source) + ": unknown top-level key '" + key + "'");
  }

  ProfileRegistry base = builtin_profiles();
  auto hmds = base.hmds();
  auto cameras = base.cameras();

  try {
    if (doc.contains("hmd_profiles")) {
      const json& section = doc.at("hmd_profiles");
      if (!section.is_object()) throw ConfigError("'hmd_profiles' must be an object");
      for (const auto& [id, obj] : section.items()) {
        if (!obj.is_object()) throw ConfigError("profile '" + id + "' must be an object");
        auto it = hmds.find(id);
        if (it == hmds.end()) {
          require_fields(obj, id,
                         {"display_resolution", "diagonal_fov_deg", "transmittance",
                          "contrast_curve", "opacity_curve"});
          HmdProfile fresh;
          fresh.id = id;
          it = hmds.emplace(id, std::move(fresh)).first;
        }
        merge_hmd(it->second, obj);
      }
    }
    if (doc.contains("camera_profiles")) {
      const json& section = doc.at("camera_profiles");
      if (!section.is_object()) throw ConfigError("'camera_profiles' must be an object");
      for (const auto& [id, obj] : section.items()) {
        if (!obj.is_object()) throw ConfigError("profile '" + id + "' must be an object");
        auto it = cameras.find(id);
        if (it == cameras.end()) {
          require_fields(obj, id, {"frame_resolution", "diagonal_fov_deg"});
          CameraProfile fresh;
          fresh.id = id;
          it = cameras.emplace(id, std::move(fresh)).first;
        }
        merge_camera(it->second, obj);
      }
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Validation)
      throw ValidationError(std::string(source) + ": " + e.what());
    throw ConfigError(std::string(source) + ": " + e.what());
  }

  try {
    return {std::move(hmds), std::move(cameras)};
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(source) + ": " + e.what());
  }
}

ProfileRegistry load_profiles(const std::optional<std::filesystem::path>& config_path) {
  if (!config_path) return builtin_profiles();
  std::ifstream in(*config_path, std::ios::binary);
  if (!in) throw ConfigError("cannot open profile config '" + config_path->string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_profiles_from_string(buf.str(), config_path->string());
}

std::vector<ContextClip> scan_context_library(const std::filesystem::path& assets_dir) {
  namespace fs = std::filesystem;
  std::vector<ContextClip> clips;
  const fs::path root = assets_dir / "contexts";
  std::error_code ec;
  if (!fs::is_directory(root, ec)) return clips;

  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    const fs::path meta_path = entry.path() / "meta.json";
    if (!fs::exists(meta_path)) continue;
    const std::string text = detail::read_text_file(meta_path);
    json meta;
    try {
      meta = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(meta_path.string() + ":" + detail::describe_parse_error(text, e.byte) +
                        ": " + e.what());
    }
    ContextClip clip = detail::context_from_json(meta, entry.path().filename().string());
    clip.frames_path = entry.path() / "frames";
    validate(clip);
    clips.push_back(std::move(clip));
  }
  std::sort(clips.begin(), clips.end(),
            [](const ContextClip& a, const ContextClip& b) { return a.id < b.id; });
  return clips;
}

}  // namespace simulatar
