#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

namespace simulatar {
class Error;
}

namespace simulatar::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;  // config, validation, domain, stats
inline constexpr int kExitIngestion = 2;
inline constexpr int kExitGeometry = 3;
inline constexpr int kExitIo = 4;  // io and video assembly
inline constexpr int kExitUsage = 64;

struct Common {
  std::optional<std::filesystem::path> config;
};

struct BlendArgs {
  std::filesystem::path frames;
  std::filesystem::path design;
  std::optional<std::filesystem::path> mask;
  std::string profile;
  std::string camera;
  double lux = 0.0;
  std::string mode = "additive";
  std::string tint = "full";
  std::filesystem::path out;
  int jobs = 0;
};

struct BatchArgs {
  std::filesystem::path manifest;
  int jobs = 0;
};

struct GeometryArgs {
  std::string camera;
  std::string profile;
};

struct DistanceArgs {
  double monitor_width_cm = 0.0;
  std::string camera;
};

struct TostArgs {
  std::optional<std::filesystem::path> csv;
  std::optional<std::size_t> n;
  std::optional<double> mean;
  std::optional<double> sd;
  double bound = 1.0;
  double alpha = 0.05;
  bool grid = false;
};

struct ServeArgs {
  std::filesystem::path assets = "assets";
  std::filesystem::path data = "simulatar-data";
  std::optional<std::filesystem::path> web_root;
  std::string bind = "127.0.0.1";
  int port = 8080;
  double upload_cap_mb = 10.0;
  int workers = 0;
};

int run_blend(const Common& common, const BlendArgs& args);
int run_batch(const Common& common, const BatchArgs& args);
int run_geometry(const Common& common, const GeometryArgs& args);
int run_distance(const Common& common, const DistanceArgs& args);
int run_tost(const TostArgs& args);
int run_serve(const Common& common, const ServeArgs& args);

int exit_code_for_error(const simulatar::Error& e);

/// Prints {"error": category, "message": ...} on one stderr line.
void report_error(std::string_view category, std::string_view message);

}  // namespace simulatar::cli
