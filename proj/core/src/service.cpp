#include "simulatar/service.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <deque>
#include <future>
#include <iostream>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "httplib.h"
#include "job_queue.hpp"
#include "json_io.hpp"
#include "simulatar/assemble.hpp"
#include "simulatar/error.hpp"
#include "simulatar/pipeline.hpp"
#include "simulatar/version.hpp"

namespace simulatar {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using Lane = detail::WorkerPool::Lane;

constexpr std::size_t kPreviewCacheSize = 16;
constexpr int kThumbnailWidth = 320;

enum class JobState { Queued, Running, Done, Failed };

std::string_view job_state_name(JobState s) {
  switch (s) {
    case JobState::Queued:
      return "queued";
    case JobState::Running:
      return "running";
    case JobState::Done:
      return "done";
    case JobState::Failed:
      return "failed";
  }
  return "?";
}

JobState parse_job_state(const std::string& s) {
  if (s == "queued") return JobState::Queued;
  if (s == "running") return JobState::Running;
  if (s == "done") return JobState::Done;
  return JobState::Failed;
}

std::string random_token() {
  static std::mutex mutex;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(mutex);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
  return buf;
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// An HTTP-level failure: status plus machine-readable category.
struct HttpError {
  int status;
  std::string category;
  std::string message;
};

[[noreturn]] void fail(int status, std::string category, std::string message) {
  throw HttpError{status, std::move(category), std::move(message)};
}

int status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io:
    case ErrorKind::Assembly:
      return 500;
    default:
      return 422;
  }
}

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& category,
                const std::string& message) {
  send_json(res, {{"error", category}, {"message", message}}, status);
}

void send_bytes(httplib::Response& res, const std::vector<std::uint8_t>& bytes,
                const char* content_type) {
  res.status = 200;
  res.set_content(std::string(bytes.begin(), bytes.end()), content_type);
}

json parse_body(const httplib::Request& req) {
  try {
    json body = json::parse(req.body);
    if (!body.is_object()) fail(400, "bad_request", "request body must be a JSON object");
    return body;
  } catch (const json::parse_error& e) {
    fail(400, "bad_request", std::string("invalid JSON: ") + e.what());
  }
}

std::string body_string(const json& body, const char* field) {
  if (!body.contains(field) || !body.at(field).is_string())
    fail(422, "validation", std::string("field '") + field + "' must be a string");
  return body.at(field).get<std::string>();
}

struct JobEntry {
  std::string id;
  BlendJob spec;
  std::string created_at;
  fs::path dir;

  mutable std::mutex mutex;
  JobState state = JobState::Queued;
  std::size_t done = 0;
  std::size_t total = 0;
  std::optional<std::string> error;
  bool has_video = false;
  std::optional<std::string> video_note;
  std::shared_ptr<const PreparedJob> prepared;

  json to_json() const {
    std::lock_guard lock(mutex);
    json spec_json = {{"context_id", spec.context_id},
                      {"profile_id", spec.hmd_profile_id},
                      {"design_id", spec.design_id},
                      {"mode", std::string(simulatar::to_string(spec.mode))},
                      {"tint_extent", std::string(simulatar::to_string(spec.tint_extent))}};
    spec_json["lux"] = spec.lux ? json(*spec.lux) : json(nullptr);
    json doc = {{"id", id},
                {"spec", spec_json},
                {"state", std::string(job_state_name(state))},
                {"progress", {{"done", done}, {"total", total}}},
                {"created_at", created_at}};
    doc["error"] = error ? json(*error) : json(nullptr);
    if (state == JobState::Done) {
      doc["frames_url"] = "/api/jobs/" + id + "/frames/{n}.png";
      doc["video_url"] = has_video ? json("/api/jobs/" + id + "/video") : json(nullptr);
      if (video_note) doc["video_note"] = *video_note;
    }
    return doc;
  }
};

}  // namespace

struct Service::Impl {
  ServiceConfig config;
  ProfileRegistry registry;
  ContextLibrary contexts;
  std::map<std::string, std::size_t> frame_counts;
  std::unique_ptr<detail::WorkerPool> pool;
  httplib::Server server;
  std::thread server_thread;

  std::mutex designs_mutex;
  DesignLibrary designs;

  std::mutex jobs_mutex;
  std::map<std::string, std::shared_ptr<JobEntry>> jobs;

  std::mutex preview_mutex;
  std::map<std::string, std::shared_ptr<const PreparedJob>> preview_cache;
  std::deque<std::string> preview_order;

  explicit Impl(ServiceConfig cfg)
      : config(std::move(cfg)),
        registry(load_profiles(config.config_path)),
        pool(std::make_unique<detail::WorkerPool>(
            config.workers > 0
                ? config.workers
                : static_cast<int>(std::max(1u, std::thread::hardware_concurrency())))) {
    for (auto& clip : scan_context_library(config.assets_dir)) {
      try {
        frame_counts[clip.id] = ingest_frames(clip.frames_path).size();
      } catch (const Error& e) {
        std::cerr << "simulatar: skipping context '" << clip.id << "': " << e.what() << "\n";
        continue;
      }
      contexts.emplace(clip.id, std::move(clip));
    }
    fs::create_directories(config.data_dir / "designs");
    fs::create_directories(config.data_dir / "jobs");
    load_designs();
    load_jobs();
    routes();
  }

  // Queued tasks capture `this`; stop them before any member goes away.
  ~Impl() {
    server.stop();
    if (server_thread.joinable()) server_thread.join();
    pool.reset();
  }

  // --- persistence -------------------------------------------------------

  void load_designs() {
    for (const auto& entry : fs::directory_iterator(config.data_dir / "designs")) {
      const std::string name = entry.path().filename().string();
      if (entry.path().extension() != ".png" || name.ends_with(".mask.png")) continue;
      DesignSource d;
      d.id = entry.path().stem().string();
      d.png = entry.path();
      const fs::path mask = config.data_dir / "designs" / (d.id + ".mask.png");
      if (fs::exists(mask)) d.mask = mask;
      designs.emplace(d.id, std::move(d));
    }
  }

  void persist(const JobEntry& job) {
    const std::string text = job.to_json().dump(2);
    const fs::path tmp = job.dir / "job.json.tmp";
    write_file(tmp, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
    fs::rename(tmp, job.dir / "job.json");
  }

  void load_jobs() {
    for (const auto& entry : fs::directory_iterator(config.data_dir / "jobs")) {
      const fs::path meta = entry.path() / "job.json";
      if (!fs::exists(meta)) continue;
      try {
        const json doc = json::parse(detail::read_text_file(meta));
        auto job = std::make_shared<JobEntry>();
        job->id = doc.at("id").get<std::string>();
        job->dir = entry.path();
        job->created_at = doc.at("created_at").get<std::string>();
        const json& spec = doc.at("spec");
        job->spec.context_id = spec.at("context_id").get<std::string>();
        job->spec.hmd_profile_id = spec.at("profile_id").get<std::string>();
        job->spec.design_id = spec.at("design_id").get<std::string>();
        if (spec.at("lux").is_number()) job->spec.lux = spec.at("lux").get<double>();
        job->spec.mode = parse_blend_mode(spec.at("mode").get<std::string>());
        job->spec.tint_extent = parse_tint_extent(spec.at("tint_extent").get<std::string>());
        job->spec.output = job->dir / "frames";
        job->state = parse_job_state(doc.at("state").get<std::string>());
        job->done = doc.at("progress").at("done").get<std::size_t>();
        job->total = doc.at("progress").at("total").get<std::size_t>();
        if (doc.contains("error") && doc.at("error").is_string())
          job->error = doc.at("error").get<std::string>();
        job->has_video = fs::exists(job->dir / "video.mp4");
        if (job->state == JobState::Queued || job->state == JobState::Running) {
          job->state = JobState::Failed;
          job->error = "interrupted by service restart";
          persist(*job);
        }
        jobs.emplace(job->id, std::move(job));
      } catch (const std::exception& e) {
        std::cerr << "simulatar: ignoring job record " << meta << ": " << e.what() << "\n";
      }
    }
  }

  // --- lookups -----------------------------------------------------------

  DesignLibrary designs_snapshot() {
    std::lock_guard lock(designs_mutex);
    return designs;
  }

  void require_ids(const std::string& context_id, const std::string& profile_id,
                   const std::string& design_id) {
    if (!contexts.contains(context_id))
      fail(404, "not_found", "unknown context '" + context_id + "'");
    if (!registry.find_hmd(profile_id))
      fail(404, "not_found", "unknown profile '" + profile_id + "'");
    std::lock_guard lock(designs_mutex);
    if (!designs.contains(design_id)) fail(404, "not_found", "unknown design '" + design_id + "'");
  }

  static std::optional<double> read_lux(const json& body) {
    if (!body.contains("lux") || body.at("lux").is_null()) return std::nullopt;
    const json& v = body.at("lux");
    if (!v.is_number()) fail(422, "validation", "lux must be a number");
    const double lux = v.get<double>();
    if (!(std::isfinite(lux) && lux > 0.0)) fail(422, "validation", "lux must be positive");
    return lux;
  }

  static void read_modes(const json& body, BlendJob& job) {
    try {
      if (body.contains("mode")) job.mode = parse_blend_mode(body_string(body, "mode"));
      if (body.contains("tint_extent"))
        job.tint_extent = parse_tint_extent(body_string(body, "tint_extent"));
    } catch (const ValidationError& e) {
      fail(422, "validation", e.what());
    }
  }

  std::shared_ptr<JobEntry> find_job(const std::string& id) {
    std::lock_guard lock(jobs_mutex);
    const auto it = jobs.find(id);
    if (it == jobs.end()) fail(404, "not_found", "unknown job '" + id + "'");
    return it->second;
  }

  // --- job execution -----------------------------------------------------

  void mark_failed(JobEntry& job, const std::string& message) {
    {
      std::lock_guard lock(job.mutex);
      if (job.state == JobState::Failed) return;
      job.state = JobState::Failed;
      job.error = message;
      job.prepared.reset();
    }
    persist(job);
  }

  void start_job(const std::shared_ptr<JobEntry>& job) {
    std::shared_ptr<const PreparedJob> prepared;
    try {
      prepared = std::make_shared<const PreparedJob>(
          prepare_job(job->spec, contexts, designs_snapshot(), registry));
      fs::create_directories(job->spec.output);
    } catch (const std::exception& e) {
      mark_failed(*job, e.what());
      return;
    }
    {
      std::lock_guard lock(job->mutex);
      job->state = JobState::Running;
      job->total = prepared->frames.size();
      job->prepared = prepared;
    }
    persist(*job);
    for (std::size_t i = 0; i < prepared->frames.size(); ++i) {
      pool->submit(Lane::Batch,
                   [this, job, prepared, i] { render_job_frame_task(job, prepared, i); });
    }
  }

  void render_job_frame_task(const std::shared_ptr<JobEntry>& job,
                             const std::shared_ptr<const PreparedJob>& prepared, std::size_t i) {
    {
      std::lock_guard lock(job->mutex);
      if (job->state == JobState::Failed) return;
    }
    try {
      write_job_frame(*prepared, i, job->spec.output);
    } catch (const std::exception& e) {
      mark_failed(*job, e.what());
      return;
    }
    bool last = false;
    {
      std::lock_guard lock(job->mutex);
      ++job->done;
      last = job->done == job->total;
    }
    if (last) finish_job(job, prepared);
  }

  void finish_job(const std::shared_ptr<JobEntry>& job,
                  const std::shared_ptr<const PreparedJob>& prepared) {
    try {
      write_sidecar(*prepared, job->spec.output);
    } catch (const std::exception& e) {
      mark_failed(*job, e.what());
      return;
    }
    bool has_video = false;
    std::optional<std::string> video_note;
    try {
      const auto result =
          assemble_video(job->spec.output, prepared->camera.fps, job->dir / "video.mp4");
      has_video = result.outcome == AssemblyOutcome::Assembled;
      if (!has_video) video_note = result.message;
    } catch (const AssemblyError& e) {
      video_note = std::string(e.what()) + ": " + e.diagnostics();
    } catch (const std::exception& e) {
      video_note = e.what();
    }
    {
      std::lock_guard lock(job->mutex);
      job->state = JobState::Done;
      job->has_video = has_video;
      job->video_note = video_note;
      job->prepared.reset();
    }
    persist(*job);
  }

  // --- preview -------------------------------------------------------------

  std::shared_ptr<const PreparedJob> preview_plan(const BlendJob& spec) {
    std::ostringstream key;
    key << spec.context_id << '\n'
        << spec.hmd_profile_id << '\n'
        << spec.design_id << '\n'
        << (spec.lux ? *spec.lux : -1.0) << '\n'
        << to_string(spec.mode) << '\n'
        << to_string(spec.tint_extent);
    {
      std::lock_guard lock(preview_mutex);
      const auto it = preview_cache.find(key.str());
      if (it != preview_cache.end()) return it->second;
    }
    auto prepared = std::make_shared<const PreparedJob>(
        prepare_job(spec, contexts, designs_snapshot(), registry));
    std::lock_guard lock(preview_mutex);
    if (preview_cache.emplace(key.str(), prepared).second) {
      preview_order.push_back(key.str());
      if (preview_order.size() > kPreviewCacheSize) {
        preview_cache.erase(preview_order.front());
        preview_order.pop_front();
      }
    }
    return prepared;
  }

  template <typename Fn>
  auto run_interactive(Fn fn) -> decltype(fn()) {
    using Result = decltype(fn());
    auto task = std::make_shared<std::packaged_task<Result()>>(std::move(fn));
    auto future = task->get_future();
    pool->submit(Lane::Interactive, [task] { (*task)(); });
    return future.get();
  }

  // --- routes --------------------------------------------------------------

  template <typename Handler>
  auto guarded(Handler handler) {
    return [this, handler](const httplib::Request& req, httplib::Response& res) {
      try {
        handler(req, res);
      } catch (const HttpError& e) {
        send_error(res, e.status, e.category, e.message);
      } catch (const Error& e) {
        send_error(res, status_for(e.kind()), std::string(to_string(e.kind())), e.what());
      } catch (const std::exception& e) {
        send_error(res, 500, "internal", e.what());
      }
    };
  }

  void routes() {
    server.set_payload_max_length(config.upload_cap_bytes + (256u << 10));
    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (!res.body.empty()) return;
      const std::string category = res.status == 413   ? "payload_too_large"
                                   : res.status == 404 ? "not_found"
                                                       : "http";
      send_error(res, res.status, category, httplib::status_message(res.status));
    });

    server.Get("/api/schema", guarded([](const httplib::Request&, httplib::Response& res) {
                 send_json(res, schema());
               }));

    server.Get("/api/contexts", guarded([this](const httplib::Request&, httplib::Response& res) {
                 json list = json::array();
                 for (const auto& [id, clip] : contexts) {
                   json item = detail::to_json(clip);
                   item["frame_count"] = frame_counts.at(id);
                   item["thumbnail"] = "/api/contexts/" + id + "/thumbnail.png";
                   list.push_back(std::move(item));
                 }
                 send_json(res, list);
               }));

    server.Get(R"(/api/contexts/([^/]+)/thumbnail\.png)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 const std::string id = req.matches[1];
                 const auto it = contexts.find(id);
                 if (it == contexts.end()) fail(404, "not_found", "unknown context '" + id + "'");
                 const FrameSequence frames = ingest_frames(it->second.frames_path);
                 send_bytes(res, encode_png(make_thumbnail(frames.load(0), kThumbnailWidth)),
                            "image/png");
               }));

    server.Get("/api/profiles", guarded([this](const httplib::Request&, httplib::Response& res) {
                 json hmds = json::array();
                 for (const auto& [_, p] : registry.hmds()) hmds.push_back(detail::to_json(p));
                 json cameras = json::array();
                 for (const auto& [_, p] : registry.cameras())
                   cameras.push_back(detail::to_json(p));
                 send_json(res, {{"hmd_profiles", hmds}, {"camera_profiles", cameras}});
               }));

    server.Post("/api/designs",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  upload_design(req, res);
                }));

    server.Post("/api/jobs", guarded([this](const httplib::Request& req, httplib::Response& res) {
                  create_job(req, res);
                }));

    server.Get(R"(/api/jobs/([A-Za-z0-9]+))",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 send_json(res, find_job(req.matches[1])->to_json());
               }));

    server.Get(R"(/api/jobs/([A-Za-z0-9]+)/frames/(\d+)\.png)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 const auto job = find_job(req.matches[1]);
                 const std::size_t n = std::stoul(req.matches[2]);
                 const fs::path frame = job->spec.output / frame_file_name(n);
                 if (n == 0 || !fs::exists(frame))
                   fail(404, "not_found", "frame " + std::to_string(n) + " not rendered");
                 send_bytes(res, read_file(frame), "image/png");
               }));

    server.Get(R"(/api/jobs/([A-Za-z0-9]+)/video)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 const auto job = find_job(req.matches[1]);
                 const fs::path video = job->dir / "video.mp4";
                 if (!fs::exists(video)) fail(404, "not_found", "no assembled video for this job");
                 send_bytes(res, read_file(video), "video/mp4");
               }));

    server.Post("/api/preview", guarded([this](const httplib::Request& req,
                                               httplib::Response& res) { preview(req, res); }));

    if (config.web_root && fs::is_directory(*config.web_root)) {
      server.set_mount_point("/", config.web_root->string());
    }
  }

  void upload_design(const httplib::Request& req, httplib::Response& res) {
    std::string content;
    std::optional<std::string> mask;
    if (req.is_multipart_form_data()) {
      if (!req.has_file("file")) fail(422, "validation", "multipart field 'file' is required");
      content = req.get_file_value("file").content;
      if (req.has_file("mask")) mask = req.get_file_value("mask").content;
    } else {
      content = req.body;
    }
    if (content.size() > config.upload_cap_bytes ||
        (mask && mask->size() > config.upload_cap_bytes))
      fail(413, "payload_too_large",
           "upload exceeds the " + std::to_string(config.upload_cap_bytes) + " byte cap");
    const auto as_bytes = [](const std::string& s) {
      return std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(s.data()),
                                           s.size());
    };
    if (!looks_like_png(as_bytes(content)) || (mask && !looks_like_png(as_bytes(*mask))))
      fail(415, "unsupported_media_type", "designs must be PNG images");

    RgbaImage image;
    try {
      image = decode_png_rgba(as_bytes(content));
      if (mask) {
        const FrameBuffer m = decode_png_rgb(as_bytes(*mask));
        if (m.size() != image.size())
          fail(422, "validation", "mask resolution does not match the design canvas");
      }
    } catch (const IoError& e) {
      fail(415, "unsupported_media_type", e.what());
    }

    DesignSource d;
    d.id = random_token();
    d.png = config.data_dir / "designs" / (d.id + ".png");
    write_file(d.png, as_bytes(content));
    if (mask) {
      d.mask = config.data_dir / "designs" / (d.id + ".mask.png");
      write_file(*d.mask, as_bytes(*mask));
    }
    {
      std::lock_guard lock(designs_mutex);
      designs.emplace(d.id, d);
    }
    send_json(res,
              {{"id", d.id},
               {"width", image.width},
               {"height", image.height},
               {"has_mask", mask.has_value()}},
              201);
  }

  void create_job(const httplib::Request& req, httplib::Response& res) {
    const json body = parse_body(req);
    auto job = std::make_shared<JobEntry>();
    job->spec.context_id = body_string(body, "context_id");
    job->spec.hmd_profile_id = body_string(body, "profile_id");
    job->spec.design_id = body_string(body, "design_id");
    job->spec.lux = read_lux(body);
    read_modes(body, job->spec);
    require_ids(job->spec.context_id, job->spec.hmd_profile_id, job->spec.design_id);

    job->id = random_token();
    job->created_at = utc_now();
    job->dir = config.data_dir / "jobs" / job->id;
    job->spec.output = job->dir / "frames";
    job->total = frame_counts.at(job->spec.context_id);
    fs::create_directories(job->dir);
    persist(*job);
    {
      std::lock_guard lock(jobs_mutex);
      jobs.emplace(job->id, job);
    }
    pool->submit(Lane::Batch, [this, job] { start_job(job); });
    res.set_header("Location", "/api/jobs/" + job->id);
    send_json(res, {{"id", job->id}, {"state", "queued"}}, 201);
  }

  void preview(const httplib::Request& req, httplib::Response& res) {
    const json body = parse_body(req);
    BlendJob spec;
    spec.context_id = body_string(body, "context_id");
    spec.hmd_profile_id = body_string(body, "profile_id");
    spec.design_id = body_string(body, "design_id");
    spec.lux = read_lux(body);
    read_modes(body, spec);
    if (!body.contains("frame_index") || !body.at("frame_index").is_number_integer())
      fail(422, "validation", "frame_index must be an integer (1-based)");
    const long long frame_index = body.at("frame_index").get<long long>();
    require_ids(spec.context_id, spec.hmd_profile_id, spec.design_id);
    if (frame_index < 1 || static_cast<std::size_t>(frame_index) > frame_counts.at(spec.context_id))
      fail(404, "not_found", "frame " + std::to_string(frame_index) + " is outside the clip");

    const auto bytes = run_interactive([this, spec, frame_index] {
      const auto prepared = preview_plan(spec);
      return render_job_frame(*prepared, static_cast<std::size_t>(frame_index - 1));
    });
    send_bytes(res, bytes, "image/png");
  }

  static json schema() {
    const json job_spec = {{"context_id", "string"},        {"profile_id", "string"},
                           {"design_id", "string"},         {"lux", "number > 0, optional"},
                           {"mode", "additive|alpha-over"}, {"tint_extent", "full|rect"}};
    return {{"version", kVersion},
            {"endpoints",
             json::array({
                 {{"method", "GET"}, {"path", "/api/schema"}, {"response", "this document"}},
                 {{"method", "GET"},
                  {"path", "/api/contexts"},
                  {"response",
                   "[{id, location, mobility, lighting_lux, lighting_class, camera, frame_count, "
                   "thumbnail}]"}},
                 {{"method", "GET"},
                  {"path", "/api/contexts/{id}/thumbnail.png"},
                  {"response", "image/png"}},
                 {{"method", "GET"},
                  {"path", "/api/profiles"},
                  {"response", "{hmd_profiles: [...], camera_profiles: [...]}"}},
                 {{"method", "POST"},
                  {"path", "/api/designs"},
                  {"request", "multipart/form-data: file (PNG), mask (PNG, optional)"},
                  {"response", "201 {id, width, height, has_mask}; 413 oversize; 415 not PNG"}},
                 {{"method", "POST"},
                  {"path", "/api/jobs"},
                  {"request", job_spec},
                  {"response", "201 {id, state}; 404 unknown id; 422 invalid lux/mode"}},
                 {{"method", "GET"},
                  {"path", "/api/jobs/{id}"},
                  {"response",
                   "{id, spec, state: queued|running|done|failed, progress: {done, total}, error, "
                   "created_at, frames_url, video_url}"}},
                 {{"method", "GET"},
                  {"path", "/api/jobs/{id}/frames/{n}.png"},
                  {"response", "image/png"}},
                 {{"method", "GET"}, {"path", "/api/jobs/{id}/video"}, {"response", "video/mp4"}},
                 {{"method", "POST"},
                  {"path", "/api/preview"},
                  {"request",
                   [&] {
                     json r = job_spec;
                     r["frame_index"] = "integer >= 1";
                     return r;
                   }()},
                  {"response", "image/png; 404 unknown id or frame; 422 invalid lux/mode"}},
             })},
            {"errors", {{"error", "category"}, {"message", "string"}}}};
  }
};

Service::Service(ServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}

Service::~Service() { stop(); }

bool Service::listen() { return impl_->server.listen(impl_->config.bind, impl_->config.port); }

int Service::start_background() {
  const int port = impl_->server.bind_to_any_port(impl_->config.bind);
  if (port < 0) throw IoError("cannot bind " + impl_->config.bind);
  impl_->server_thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port;
}

void Service::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->server_thread.joinable()) impl_->server_thread.join();
}

const ServiceConfig& Service::config() const { return impl_->config; }

}  // namespace simulatar
