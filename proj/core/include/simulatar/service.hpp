#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace simulatar {

struct ServiceConfig {
  /// Asset library: <assets>/contexts/<id>/{meta.json, frames/}.
  std::filesystem::path assets_dir = "assets";
  /// Uploaded designs and job outputs; job metadata persists here.
  std::filesystem::path data_dir = "simulatar-data";
  std::optional<std::filesystem::path> config_path;
  /// Built web UI, served at / when present.
  std::optional<std::filesystem::path> web_root;
  std::string bind = "127.0.0.1";
  int port = 8080;
  std::size_t upload_cap_bytes = 10u << 20;
  int workers = 0;  // 0: hardware concurrency
};

/// Local HTTP/1.1 JSON API over the render pipeline:
///
///   GET  /api/schema
///   GET  /api/contexts                   GET /api/contexts/{id}/thumbnail.png
///   GET  /api/profiles
///   POST /api/designs                    (multipart field "file", optional "mask")
///   POST /api/jobs                       GET /api/jobs/{id}
///   GET  /api/jobs/{id}/frames/{n}.png   GET /api/jobs/{id}/video
///   POST /api/preview                    (returns image/png)
class Service {
 public:
  /// Loads profiles and scans the asset library. Throws on a malformed
  /// profile config so a misconfigured service never starts.
  explicit Service(ServiceConfig config);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds config.bind:config.port and serves until stop(). Returns false if
  /// the socket could not be bound.
  bool listen();

  /// Binds an ephemeral port on config.bind, serves on a background thread
  /// and returns the port.
  int start_background();

  void stop();

  [[nodiscard]] const ServiceConfig& config() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace simulatar
