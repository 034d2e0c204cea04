#include "commands.hpp"

#include <cmath>
#include <iostream>
#include <thread>

#include "json.hpp"
#include "simulatar/assemble.hpp"
#include "simulatar/error.hpp"
#include "simulatar/geometry.hpp"
#include "simulatar/pipeline.hpp"
#include "simulatar/service.hpp"
#include "simulatar/stats.hpp"

namespace simulatar::cli {
namespace {

using nlohmann::json;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Ingestion:
      return kExitIngestion;
    case ErrorKind::Geometry:
      return kExitGeometry;
    case ErrorKind::Io:
    case ErrorKind::Assembly:
      return kExitIo;
    default:
      return kExitConfig;
  }
}

int workers_or_default(int jobs) {
  if (jobs > 0) return jobs;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

json tost_json(const TostResult& r) {
  return {{"n", r.n},
          {"df", r.df()},
          {"mean_diff", r.mean_diff},
          {"sd_diff", r.sd_diff},
          {"bound", r.bound},
          {"alpha", r.alpha},
          {"t_lower", r.t_lower},
          {"t_upper", r.t_upper},
          {"p_lower", r.p_lower},
          {"p_upper", r.p_upper},
          {"equivalent", r.equivalent}};
}

json variant_json(const VariantTest& v) {
  json doc = {{"variant", std::string(to_string(v.variant))}, {"pairs", v.pairs}};
  if (v.result) {
    doc["result"] = tost_json(*v.result);
  } else {
    doc["result"] = nullptr;
    doc["note"] = v.note;
  }
  return doc;
}

// Muxes each successful job when a transcoder is configured and returns
// the exit code for the whole run (first failure wins).
int finish_jobs(const BlendManifest& manifest, const ManifestReport& report,
                const ProfileRegistry& registry) {
  int code = kExitOk;
  const auto transcoder = configured_transcoder();
  for (const auto& job : report.jobs) {
    json line = json::parse(to_json_line(job));
    if (!job.success) {
      report_error(job.error_kind ? to_string(*job.error_kind) : "internal", job.error);
      if (code == kExitOk) code = job.error_kind ? exit_code_for(*job.error_kind) : kExitConfig;
    } else if (transcoder) {
      const BlendJob& spec = manifest.jobs[job.index];
      const auto& context = manifest.contexts.find(spec.context_id)->second;
      const double fps = registry.camera(context.camera).fps;
      try {
        const auto result = assemble_video(job.output, fps, job.output / "video.mp4", transcoder);
        line["video"] = result.output.string();
      } catch (const AssemblyError& e) {
        report_error("assembly", std::string(e.what()) + ": " + e.diagnostics());
        line["video"] = nullptr;
        if (code == kExitOk) code = kExitIo;
      }
    }
    std::cout << line.dump() << "\n";
  }
  return code;
}

}  // namespace

void report_error(std::string_view category, std::string_view message) {
  std::cerr << json{{"error", category}, {"message", message}}.dump() << std::endl;
}

int run_blend(const Common& common, const BlendArgs& args) {
  if (!(std::isfinite(args.lux) && args.lux > 0.0))
    throw DomainError("lux must be a positive number, got " + json(args.lux).dump());
  const ProfileRegistry registry = load_profiles(common.config);
  (void)registry.hmd(args.profile);
  (void)registry.camera(args.camera);

  BlendManifest manifest;
  ContextClip clip;
  clip.id = args.frames.filename().string();
  if (clip.id.empty()) clip.id = "frames";
  clip.frames_path = args.frames;
  clip.lighting_lux = args.lux;
  clip.camera = args.camera;
  manifest.contexts.emplace(clip.id, clip);

  const std::string design_id = args.design.stem().string();
  manifest.designs.emplace(design_id, DesignSource{design_id, args.design, args.mask});

  BlendJob job;
  job.context_id = clip.id;
  job.hmd_profile_id = args.profile;
  job.design_id = design_id;
  job.lux = args.lux;
  job.mode = parse_blend_mode(args.mode);
  job.tint_extent = parse_tint_extent(args.tint);
  job.output = args.out;
  manifest.jobs.push_back(std::move(job));
  validate(manifest);

  const ManifestReport report = run_manifest(
      manifest, registry, {.parallelism = workers_or_default(args.jobs), .on_frame = {}});
  return finish_jobs(manifest, report, registry);
}

int run_batch(const Common& common, const BatchArgs& args) {
  const ProfileRegistry registry = load_profiles(common.config);
  const BlendManifest manifest = load_manifest(args.manifest);
  const ManifestReport report = run_manifest(
      manifest, registry, {.parallelism = workers_or_default(args.jobs), .on_frame = {}});
  return finish_jobs(manifest, report, registry);
}

int run_geometry(const Common& common, const GeometryArgs& args) {
  const ProfileRegistry registry = load_profiles(common.config);
  const CameraProfile& camera = registry.camera(args.camera);
  const HmdProfile& hmd = registry.hmd(args.profile);
  const FovSpec cam = camera_fov(camera);
  const FovSpec disp = hmd_fov(hmd);
  const OverlayRect rect = overlay_rect(camera, hmd);
  const double deg = 3.14159265358979323846 / 180.0;
  const json doc = {
      {"camera", camera.id},
      {"hmd", hmd.id},
      {"camera_fov",
       {{"h_fov_deg", cam.h_fov_deg},
        {"v_fov_deg", cam.v_fov_deg},
        {"d_fov_deg", cam.d_fov_deg},
        {"aspect", cam.aspect}}},
      {"hmd_fov",
       {{"h_fov_deg", disp.h_fov_deg},
        {"v_fov_deg", disp.v_fov_deg},
        {"d_fov_deg", disp.d_fov_deg},
        {"aspect", disp.aspect}}},
      {"frame_resolution",
       {{"width", camera.frame_resolution.width}, {"height", camera.frame_resolution.height}}},
      {"overlay_fraction",
       {{"horizontal", std::tan(disp.h_fov_deg * deg / 2) / std::tan(cam.h_fov_deg * deg / 2)},
        {"vertical", std::tan(disp.v_fov_deg * deg / 2) / std::tan(cam.v_fov_deg * deg / 2)}}},
      {"overlay_rect", {{"x", rect.x}, {"y", rect.y}, {"w", rect.w}, {"h", rect.h}}}};
  std::cout << doc.dump() << "\n";
  return kExitOk;
}

int run_distance(const Common& common, const DistanceArgs& args) {
  const ProfileRegistry registry = load_profiles(common.config);
  const CameraProfile& camera = registry.camera(args.camera);
  const FovSpec fov = camera_fov(camera);
  const double d = viewing_distance(args.monitor_width_cm, fov.h_fov_deg);
  std::cout << json{{"camera", camera.id},
                    {"monitor_width_cm", args.monitor_width_cm},
                    {"camera_h_fov_deg", fov.h_fov_deg},
                    {"viewing_distance_cm", d}}
                   .dump()
            << "\n";
  return kExitOk;
}

int run_tost(const TostArgs& args) {
  if (!args.csv) {
    const TostResult r = tost_from_summary(*args.n, *args.mean, *args.sd, args.bound, args.alpha);
    std::cout << tost_json(r).dump() << "\n";
    return kExitOk;
  }
  const auto records = load_ratings_csv(*args.csv);
  const EquivalenceGrid grid = build_grid(records, args.bound, args.alpha);
  for (const auto& u : grid.unpaired) {
    std::cerr << json{{"warning", "unpaired"},
                      {"participant", u.participant},
                      {"context", u.context},
                      {"variant", std::string(to_string(u.variant))},
                      {"dimension", std::string(to_string(u.dimension))},
                      {"present", std::string(to_string(u.present))}}
                     .dump()
              << "\n";
  }
  for (const auto& cell : grid.cells) {
    if (args.grid) {
      std::cout << json{{"context", cell.context},
                        {"dimension", std::string(to_string(cell.dimension))},
                        {"color", std::string(to_string(cell.color))},
                        {"variants",
                         {variant_json(cell.variants[0]), variant_json(cell.variants[1])}}}
                       .dump()
                << "\n";
      continue;
    }
    for (const auto& v : cell.variants) {
      json line = {{"context", cell.context},
                   {"dimension", std::string(to_string(cell.dimension))}};
      line.update(variant_json(v));
      std::cout << line.dump() << "\n";
    }
  }
  return kExitOk;
}

int run_serve(const Common& common, const ServeArgs& args) {
  ServiceConfig config;
  config.assets_dir = args.assets;
  config.data_dir = args.data;
  config.config_path = common.config;
  config.web_root = args.web_root;
  config.bind = args.bind;
  config.port = args.port;
  config.upload_cap_bytes = static_cast<std::size_t>(args.upload_cap_mb * 1024.0 * 1024.0);
  config.workers = args.workers;
  Service service(std::move(config));
  std::cerr << "simulatar: serving on http://" << args.bind << ":" << args.port << std::endl;
  if (!service.listen())
    throw IoError("cannot listen on " + args.bind + ":" + std::to_string(args.port));
  return kExitOk;
}

int exit_code_for_error(const Error& e) { return exit_code_for(e.kind()); }

}  // namespace simulatar::cli
