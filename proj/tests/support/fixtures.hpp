#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simulatar/image.hpp"
#include "simulatar/profiles.hpp"

namespace simulatar::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  [[nodiscard]] const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// Deterministic textured frame; `seed` varies the content.
FrameBuffer synthetic_frame(int width, int height, std::uint32_t seed);

/// Writes frame_000001.png .. frame_<count>.png.
void write_frames(const std::filesystem::path& dir, int count, int width, int height,
                  std::uint32_t seed = 1);

RgbaImage solid_design(int width, int height, std::uint8_t r, std::uint8_t g, std::uint8_t b,
                       std::uint8_t a);

/// The built-in GoPro profile with a different frame size (same optics).
CameraProfile camera_with_resolution(int width, int height, std::string id = "test-cam");

/// Built-in profiles plus `camera`.
ProfileRegistry registry_with(const CameraProfile& camera);

/// Asset library with one context per entry: <root>/contexts/<id>/{meta.json, frames/}.
struct ContextFixture {
  std::string id;
  int frames = 3;
  int width = 64;
  int height = 36;
  double lux = 250.0;
  std::string camera = "gopro-hero10-linear";
  std::string location = "indoor";
  std::string mobility = "sitting";
};
void write_asset_library(const std::filesystem::path& root,
                         const std::vector<ContextFixture>& contexts);

/// Profile config JSON adding a camera like camera_with_resolution.
std::string camera_config_json(const std::string& id, int width, int height);

struct ProcessResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

/// Runs `argv` (argv[0] is a path) with extra environment variables and
/// captures stdout/stderr.
ProcessResult run_process(const std::vector<std::string>& argv,
                          const std::map<std::string, std::string>& env = {});

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace simulatar::testing
