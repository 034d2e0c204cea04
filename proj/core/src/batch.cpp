#include <atomic>
#include <mutex>

#include "json_io.hpp"
#include "parallel.hpp"
#include "simulatar/pipeline.hpp"
#include "simulatar/version.hpp"

namespace simulatar {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start, Clock::time_point end) {
  return std::chrono::duration<double, std::milli>(end - start).count();
}

// Mutable per-job bookkeeping during a run.
struct JobState {
  std::optional<PreparedJob> prepared;
  std::atomic<std::size_t> written{0};
  std::atomic<bool> failed{false};
  std::mutex mutex;
  std::optional<ErrorKind> error_kind;
  std::string error;
  Clock::time_point start;
  Clock::time_point end;

  void fail(std::optional<ErrorKind> kind, const std::string& message) {
    std::lock_guard lock(mutex);
    if (!failed.exchange(true)) {
      error_kind = kind;
      error = message;
      end = Clock::now();
    }
  }
};

}  // namespace

std::size_t ManifestReport::succeeded() const {
  return static_cast<std::size_t>(
      std::count_if(jobs.begin(), jobs.end(), [](const JobReport& r) { return r.success; }));
}

PreparedJob prepare_job(const BlendJob& job, const ContextLibrary& contexts,
                        const DesignLibrary& designs, const ProfileRegistry& registry) {
  const auto ctx = contexts.find(job.context_id);
  if (ctx == contexts.end()) throw ConfigError("unknown context '" + job.context_id + "'");
  const auto design_src = designs.find(job.design_id);
  if (design_src == designs.end()) throw ConfigError("unknown design '" + job.design_id + "'");

  const HmdProfile& hmd = registry.hmd(job.hmd_profile_id);
  const CameraProfile& camera = registry.camera(ctx->second.camera);

  PreparedJob p;
  p.job = job;
  p.context = ctx->second;
  p.camera = camera;
  p.hmd = hmd;
  p.design_id = job.design_id;
  p.lux = job.lux.value_or(ctx->second.lighting_lux);

  p.frames = ingest_frames(p.context.frames_path);
  if (p.frames.resolution() != camera.frame_resolution) {
    throw IngestionError("context '" + p.context.id + "' frames are " +
                         std::to_string(p.frames.resolution().width) + "x" +
                         std::to_string(p.frames.resolution().height) + " but camera '" +
                         camera.id + "' records " + std::to_string(camera.frame_resolution.width) +
                         "x" + std::to_string(camera.frame_resolution.height));
  }

  DesignAsset design = load_design(design_src->second.png, design_src->second.mask, job.design_id);
  p.plan = std::make_shared<const RenderPlan>(design, hmd, camera,
                                              RenderSettings{p.lux, job.mode, job.tint_extent});
  return p;
}

std::vector<std::uint8_t> render_job_frame(const PreparedJob& job, std::size_t i) {
  return encode_png(job.plan->render(job.frames.load(i)));
}

void write_job_frame(const PreparedJob& job, std::size_t i, const fs::path& out_dir) {
  write_file(out_dir / frame_file_name(i + 1), render_job_frame(job, i));
}

std::string sidecar_json(const PreparedJob& job) {
  const BlendParams& params = job.plan->params();
  json doc = {
      {"tool", "simulatar"},
      {"version", kVersion},
      {"context_id", job.context.id},
      {"hmd_profile_id", job.hmd.id},
      {"camera_profile_id", job.camera.id},
      {"design_id", job.design_id},
      {"lux", job.lux},
      {"mode", std::string(to_string(params.mode))},
      {"tint_extent", std::string(to_string(params.tint_extent))},
      {"transmittance", params.transmittance},
      {"alpha_scale", params.alpha_scale},
      {"contrast_retention", params.contrast_retention},
      {"overlay_rect", detail::to_json(job.plan->rect())},
      {"frame_resolution", {job.camera.frame_resolution.width, job.camera.frame_resolution.height}},
      {"frame_count", job.frames.size()},
      {"fps", job.camera.fps},
      {"frame_pattern", "frame_%06d.png"}};
  return doc.dump(2) + "\n";
}

void write_sidecar(const PreparedJob& job, const fs::path& out_dir) {
  const std::string text = sidecar_json(job);
  write_file(out_dir / kSidecarName,
             {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

std::string to_json_line(const JobReport& r) {
  json doc = {{"job", r.index},
              {"context_id", r.context_id},
              {"hmd_profile_id", r.hmd_profile_id},
              {"design_id", r.design_id},
              {"output", r.output.string()},
              {"status", r.success ? "success" : "failed"},
              {"frames_total", r.frames_total},
              {"frames_written", r.frames_written},
              {"wall_ms", r.wall_ms}};
  if (!r.success) {
    doc["error_kind"] = r.error_kind ? std::string(to_string(*r.error_kind)) : "internal";
    doc["error"] = r.error;
  }
  return doc.dump();
}

ManifestReport run_manifest(const BlendManifest& manifest, const ProfileRegistry& registry,
                            const RunOptions& options) {
  const std::size_t n = manifest.jobs.size();
  std::vector<JobState> states(n);

  detail::parallel_for(n, options.parallelism, [&](std::size_t j) {
    JobState& s = states[j];
    s.start = Clock::now();
    try {
      s.prepared = prepare_job(manifest.jobs[j], manifest.contexts, manifest.designs, registry);
      fs::create_directories(manifest.jobs[j].output);
    } catch (const Error& e) {
      s.fail(e.kind(), e.what());
    } catch (const fs::filesystem_error& e) {
      s.fail(ErrorKind::Io, e.what());
    } catch (const std::exception& e) {
      s.fail(std::nullopt, e.what());
    }
  });

  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t j = 0; j < n; ++j) {
    if (states[j].failed) continue;
    for (std::size_t i = 0; i < states[j].prepared->frames.size(); ++i) tasks.emplace_back(j, i);
  }

  detail::parallel_for(tasks.size(), options.parallelism, [&](std::size_t t) {
    const auto [j, i] = tasks[t];
    JobState& s = states[j];
    if (s.failed) return;
    try {
      write_job_frame(*s.prepared, i, manifest.jobs[j].output);
    } catch (const Error& e) {
      s.fail(e.kind(), e.what());
      return;
    } catch (const std::exception& e) {
      s.fail(std::nullopt, e.what());
      return;
    }
    const std::size_t done = s.written.fetch_add(1) + 1;
    if (done == s.prepared->frames.size()) {
      std::lock_guard lock(s.mutex);
      s.end = Clock::now();
    }
    if (options.on_frame) options.on_frame(j, done);
  });

  ManifestReport report;
  report.jobs.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    JobState& s = states[j];
    const BlendJob& job = manifest.jobs[j];
    JobReport& r = report.jobs[j];
    r.index = j;
    r.context_id = job.context_id;
    r.hmd_profile_id = job.hmd_profile_id;
    r.design_id = job.design_id;
    r.output = job.output;
    r.frames_written = s.written;
    if (s.prepared) r.frames_total = s.prepared->frames.size();
    if (!s.failed) {
      try {
        write_sidecar(*s.prepared, job.output);
      } catch (const Error& e) {
        s.fail(e.kind(), e.what());
      }
    }
    r.success = !s.failed;
    r.error_kind = s.error_kind;
    r.error = s.error;
    if (s.end < s.start) s.end = Clock::now();
    r.wall_ms = elapsed_ms(s.start, s.end);
  }
  return report;
}

}  // namespace simulatar
