#include "json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "simulatar/error.hpp"

namespace simulatar::detail {

using nlohmann::json;

std::string describe_parse_error(std::string_view text, std::size_t byte) {
  // nlohmann reports the 1-based offset of the offending character.
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ContextClip context_from_json(const json& obj, const std::string& id) {
  if (!obj.is_object()) throw ConfigError("context '" + id + "' must be an object");
  const auto need = [&](const char* field) -> const json& {
    if (!obj.contains(field))
      throw ValidationError("context '" + id + "': field '" + field + "' is required");
    return obj.at(field);
  };
  const auto text = [&](const char* field) {
    const json& v = need(field);
    if (!v.is_string())
      throw ValidationError("context '" + id + "': field '" + field + "' must be a string");
    return v.get<std::string>();
  };

  ContextClip c;
  c.id = obj.contains("id") && obj.at("id").is_string() ? obj.at("id").get<std::string>() : id;
  c.location = parse_location(text("location"));
  c.mobility = parse_mobility(text("mobility"));
  const json& lux = need("lighting_lux");
  if (!lux.is_number())
    throw ValidationError("context '" + id + "': field 'lighting_lux' must be a number");
  c.lighting_lux = lux.get<double>();
  if (obj.contains("lighting_class")) {
    c.lighting_class = parse_lighting_class(text("lighting_class"));
  } else {
    // The brightest "low" condition of the reference routes is 250 lux
    // indoors; the dimmest "high" one is 500 lux.
    c.lighting_class = c.lighting_lux >= 500.0 ? LightingClass::High : LightingClass::Low;
  }
  c.camera = text("camera");
  if (obj.contains("frames")) c.frames_path = text("frames");
  return c;
}

json to_json(const HmdProfile& p) {
  json curve_c = json::array();
  for (const auto& a : p.contrast_curve) curve_c.push_back({a.lux, a.value});
  json curve_o = json::array();
  for (const auto& a : p.opacity_curve) curve_o.push_back({a.lux, a.value});
  return {{"id", p.id},
          {"display_resolution", {p.display_resolution.width, p.display_resolution.height}},
          {"diagonal_fov_deg", p.diagonal_fov_deg},
          {"transmittance", p.transmittance},
          {"contrast_curve", curve_c},
          {"opacity_curve", curve_o},
          {"optics_label", p.optics_label},
          {"display_label", p.display_label}};
}

json to_json(const CameraProfile& p) {
  return {{"id", p.id},
          {"frame_resolution", {p.frame_resolution.width, p.frame_resolution.height}},
          {"diagonal_fov_deg", p.diagonal_fov_deg},
          {"aspect", p.aspect},
          {"projection", std::string(to_string(p.projection))},
          {"fps", p.fps}};
}

json to_json(const ContextClip& c) {
  return {{"id", c.id},
          {"location", std::string(to_string(c.location))},
          {"mobility", std::string(to_string(c.mobility))},
          {"lighting_lux", c.lighting_lux},
          {"lighting_class", std::string(to_string(c.lighting_class))},
          {"camera", c.camera}};
}

json to_json(const OverlayRect& r) { return {{"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}}; }

json to_json(const FovSpec& f) {
  return {{"h_fov_deg", f.h_fov_deg},
          {"v_fov_deg", f.v_fov_deg},
          {"d_fov_deg", f.d_fov_deg},
          {"aspect", f.aspect}};
}

}  // namespace simulatar::detail
