#pragma once

// JSON (de)serialisation shared by the core and the service. Not installed.

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "simulatar/geometry.hpp"
#include "simulatar/profiles.hpp"

namespace simulatar::detail {

/// "line L, column C" for a byte offset reported by the JSON parser.
std::string describe_parse_error(std::string_view text, std::size_t byte);

std::string read_text_file(const std::filesystem::path& path);

/// Parses a context description; `id` is used when the object has none.
/// frames_path is taken from "frames" when present.
ContextClip context_from_json(const nlohmann::json& obj, const std::string& id);

nlohmann::json to_json(const HmdProfile& p);
nlohmann::json to_json(const CameraProfile& p);
nlohmann::json to_json(const ContextClip& c);
nlohmann::json to_json(const OverlayRect& r);
nlohmann::json to_json(const FovSpec& f);

}  // namespace simulatar::detail
