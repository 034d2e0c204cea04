#include <algorithm>
#include <cmath>
#include <set>

#include "json_io.hpp"
#include "simulatar/pipeline.hpp"

namespace simulatar {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::string require_string(const json& obj, const char* field, const std::string& where) {
  if (!obj.contains(field) || !obj.at(field).is_string())
    throw ConfigError(where + ": field '" + field + "' must be a string");
  return obj.at(field).get<std::string>();
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<std::string_view> known) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError(where + ": unknown field '" + key + "'");
  }
}

}  // namespace

void validate(const BlendManifest& manifest) {
  if (manifest.jobs.empty()) throw ValidationError("manifest has no jobs");
  std::set<fs::path> outputs;
  for (std::size_t i = 0; i < manifest.jobs.size(); ++i) {
    const BlendJob& job = manifest.jobs[i];
    const std::string where = "job " + std::to_string(i);
    if (job.output.empty()) throw ValidationError(where + ": output path is empty");
    if (!outputs.insert(job.output.lexically_normal()).second)
      throw ValidationError(where + ": output path '" + job.output.string() +
                            "' is used by another job");
    if (job.lux && !(std::isfinite(*job.lux) && *job.lux > 0.0))
      throw ValidationError(where + ": lux must be positive");
  }
}

BlendManifest parse_manifest(std::string_view text, const fs::path& base_dir,
                             std::string_view source) {
  const std::string src(source);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(src + ":" + detail::describe_parse_error(text, e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError(src + ": top level must be an object");
  reject_unknown(doc, src, {"assets", "contexts", "designs", "jobs"});

  BlendManifest m;
  if (doc.contains("assets")) {
    if (!doc.at("assets").is_string()) throw ConfigError(src + ": 'assets' must be a string");
    for (auto& clip : scan_context_library(resolve(base_dir, doc.at("assets").get<std::string>())))
      m.contexts.emplace(clip.id, std::move(clip));
  }
  if (doc.contains("contexts")) {
    const json& section = doc.at("contexts");
    if (!section.is_object()) throw ConfigError(src + ": 'contexts' must be an object");
    for (const auto& [id, obj] : section.items()) {
      ContextClip clip = detail::context_from_json(obj, id);
      clip.id = id;
      if (clip.frames_path.empty())
        throw ConfigError(src + ": context '" + id + "' needs a 'frames' directory");
      clip.frames_path = resolve(base_dir, clip.frames_path.string());
      validate(clip);
      m.contexts.insert_or_assign(id, std::move(clip));
    }
  }
  if (doc.contains("designs")) {
    const json& section = doc.at("designs");
    if (!section.is_object()) throw ConfigError(src + ": 'designs' must be an object");
    for (const auto& [id, obj] : section.items()) {
      const std::string where = src + ": design '" + id + "'";
      DesignSource d;
      d.id = id;
      if (obj.is_string()) {
        d.png = resolve(base_dir, obj.get<std::string>());
      } else if (obj.is_object()) {
        reject_unknown(obj, where, {"png", "mask"});
        d.png = resolve(base_dir, require_string(obj, "png", where));
        if (obj.contains("mask")) d.mask = resolve(base_dir, require_string(obj, "mask", where));
      } else {
        throw ConfigError(where + " must be a path or an object");
      }
      m.designs.emplace(id, std::move(d));
    }
  }
  if (!doc.contains("jobs") || !doc.at("jobs").is_array())
    throw ConfigError(src + ": 'jobs' must be an array");

  std::size_t index = 0;
  for (const json& obj : doc.at("jobs")) {
    const std::string where = src + ": job " + std::to_string(index++);
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    reject_unknown(
        obj, where,
        {"context_id", "hmd_profile_id", "design_id", "lux", "mode", "tint_extent", "output"});
    BlendJob job;
    job.context_id = require_string(obj, "context_id", where);
    job.hmd_profile_id = require_string(obj, "hmd_profile_id", where);
    job.design_id = require_string(obj, "design_id", where);
    job.output = resolve(base_dir, require_string(obj, "output", where));
    if (obj.contains("lux")) {
      if (!obj.at("lux").is_number()) throw ConfigError(where + ": 'lux' must be a number");
      job.lux = obj.at("lux").get<double>();
    }
    try {
      if (obj.contains("mode")) job.mode = parse_blend_mode(require_string(obj, "mode", where));
      if (obj.contains("tint_extent"))
        job.tint_extent = parse_tint_extent(require_string(obj, "tint_extent", where));
    } catch (const ValidationError& e) {
      throw ConfigError(where + ": " + e.what());
    }
    m.jobs.push_back(std::move(job));
  }
  validate(m);
  return m;
}

BlendManifest load_manifest(const fs::path& path) {
  const std::string text = detail::read_text_file(path);
  return parse_manifest(text, path.parent_path(), path.string());
}

}  // namespace simulatar
