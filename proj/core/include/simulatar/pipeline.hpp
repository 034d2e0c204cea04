#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "simulatar/design.hpp"
#include "simulatar/error.hpp"
#include "simulatar/frames.hpp"
#include "simulatar/optics.hpp"
#include "simulatar/profiles.hpp"
#include "simulatar/render.hpp"

namespace simulatar {

inline constexpr const char* kSidecarName = "sidecar.json";

struct DesignSource {
  std::string id;
  std::filesystem::path png;
  std::optional<std::filesystem::path> mask;
};

/// One (context, hmd, design, lighting) combination to render.
struct BlendJob {
  std::string context_id;
  std::string hmd_profile_id;
  std::string design_id;
  std::optional<double> lux;  // defaults to the context's lighting_lux
  BlendMode mode = BlendMode::Additive;
  TintExtent tint_extent = TintExtent::FullFrame;
  std::filesystem::path output;
};

using ContextLibrary = std::map<std::string, ContextClip, std::less<>>;
using DesignLibrary = std::map<std::string, DesignSource, std::less<>>;

struct BlendManifest {
  ContextLibrary contexts;
  DesignLibrary designs;
  std::vector<BlendJob> jobs;
};

/// Throws ValidationError on duplicate output paths, an empty job list or a
/// non-positive lux override. Unresolvable ids are reported per job at run
/// time instead.
void validate(const BlendManifest& manifest);

/// Parses the manifest JSON; relative paths resolve against `base_dir`.
BlendManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir,
                             std::string_view source = "manifest");
BlendManifest load_manifest(const std::filesystem::path& path);

/// A job with every id resolved, frames ingested and the render plan built.
struct PreparedJob {
  BlendJob job;
  ContextClip context;
  CameraProfile camera;
  HmdProfile hmd;
  std::string design_id;
  double lux = 0.0;
  FrameSequence frames;
  std::shared_ptr<const RenderPlan> plan;
};

/// Throws ConfigError for unknown ids and propagates ingestion/geometry
/// errors.
PreparedJob prepare_job(const BlendJob& job, const ContextLibrary& contexts,
                        const DesignLibrary& designs, const ProfileRegistry& registry);

/// Renders 0-based frame `i` of a prepared job to PNG bytes.
std::vector<std::uint8_t> render_job_frame(const PreparedJob& job, std::size_t i);

/// Writes frame_%06d.png for 0-based frame `i` into `out_dir`.
void write_job_frame(const PreparedJob& job, std::size_t i, const std::filesystem::path& out_dir);

/// Sidecar metadata (JSON text) describing how a job's frames were made.
std::string sidecar_json(const PreparedJob& job);
void write_sidecar(const PreparedJob& job, const std::filesystem::path& out_dir);

struct JobReport {
  std::size_t index = 0;
  std::string context_id;
  std::string hmd_profile_id;
  std::string design_id;
  std::filesystem::path output;
  bool success = false;
  std::size_t frames_total = 0;
  std::size_t frames_written = 0;
  double wall_ms = 0.0;
  std::optional<ErrorKind> error_kind;
  std::string error;
};

struct ManifestReport {
  std::vector<JobReport> jobs;

  [[nodiscard]] std::size_t succeeded() const;
  [[nodiscard]] std::size_t failed() const { return jobs.size() - succeeded(); }
};

/// One JSON object per line, one line per job.
std::string to_json_line(const JobReport& report);

struct RunOptions {
  int parallelism = 1;
  /// Called after each frame is written (job index, frames written so far);
  /// may be called concurrently from worker threads.
  std::function<void(std::size_t, std::size_t)> on_frame;
};

/// Renders every job. A failing job never aborts its siblings. Frame output
/// is independent of `parallelism`; each worker holds one frame at a time.
ManifestReport run_manifest(const BlendManifest& manifest, const ProfileRegistry& registry,
                            const RunOptions& options = {});

}  // namespace simulatar
