#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "simulatar/error.hpp"
#include "simulatar/version.hpp"

namespace {

using namespace simulatar::cli;

constexpr const char* kFooter =
    "Results are printed to stdout as one JSON record per line; errors go to stderr as\n"
    "{\"error\": <category>, \"message\": ...}.\n"
    "Exit codes: 0 ok, 1 config/validation/domain, 2 ingestion, 3 geometry, 4 io, 64 usage.";

void add_config(CLI::App* cmd, Common& common) {
  cmd->add_option("--config", common.config, "Profile override file (JSON)")
      ->envname("SIMULATAR_CONFIG");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Renders design-blended first-person video frames approximating an optical "
      "see-through headset view.",
      "simulatar"};
  app.set_version_flag("--version", std::string(simulatar::kVersion));
  app.require_subcommand(1);
  app.footer(kFooter);

  Common common;

  BlendArgs blend;
  auto* blend_cmd = app.add_subcommand("blend", "Blend a design onto one frame sequence");
  blend_cmd->add_option("--frames", blend.frames, "Directory of frame_%06d.png frames")->required();
  blend_cmd->add_option("--design", blend.design, "Design PNG (RGBA)")->required();
  blend_cmd->add_option("--mask", blend.mask, "Optional background mask PNG");
  blend_cmd->add_option("--profile", blend.profile, "HMD profile id")->required();
  blend_cmd->add_option("--camera", blend.camera, "Camera profile id")->required();
  blend_cmd->add_option("--lux", blend.lux, "Ambient illuminance in lux")->required();
  blend_cmd->add_option("--mode", blend.mode, "Composite mode")
      ->check(CLI::IsMember({"additive", "alpha-over"}))
      ->capture_default_str();
  blend_cmd->add_option("--tint", blend.tint, "Tint extent")
      ->check(CLI::IsMember({"full", "rect"}))
      ->capture_default_str();
  blend_cmd->add_option("--out", blend.out, "Output directory")->required();
  blend_cmd->add_option("--jobs", blend.jobs, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_config(blend_cmd, common);

  BatchArgs batch;
  auto* batch_cmd = app.add_subcommand("batch", "Render every job of a manifest");
  batch_cmd->add_option("--manifest", batch.manifest, "Manifest file (JSON)")->required();
  batch_cmd->add_option("--jobs", batch.jobs, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_config(batch_cmd, common);

  GeometryArgs geometry;
  auto* geometry_cmd =
      app.add_subcommand("geometry", "Print field-of-view split and overlay rectangle");
  geometry_cmd->add_option("--camera", geometry.camera, "Camera profile id")->required();
  geometry_cmd->add_option("--profile", geometry.profile, "HMD profile id")->required();
  add_config(geometry_cmd, common);

  DistanceArgs distance;
  auto* distance_cmd = app.add_subcommand(
      "distance", "Print the seat distance at which a monitor matches the camera FOV");
  distance_cmd->add_option("--monitor-width-cm", distance.monitor_width_cm, "Visible monitor width")
      ->required();
  distance_cmd->add_option("--camera", distance.camera, "Camera profile id")->required();
  add_config(distance_cmd, common);

  TostArgs tost;
  auto* tost_cmd = app.add_subcommand("tost", "Paired equivalence tests on Likert ratings");
  auto* csv_opt = tost_cmd->add_option("--csv", tost.csv, "Ratings CSV");
  auto* n_opt = tost_cmd->add_option("--n", tost.n, "Summary mode: number of pairs");
  auto* mean_opt = tost_cmd->add_option("--mean", tost.mean, "Summary mode: mean difference");
  auto* sd_opt = tost_cmd->add_option("--sd", tost.sd, "Summary mode: sample sd of differences");
  csv_opt->excludes(n_opt)->excludes(mean_opt)->excludes(sd_opt);
  tost_cmd->add_option("--bound", tost.bound, "Equivalence bound in rating points")
      ->capture_default_str();
  tost_cmd->add_option("--alpha", tost.alpha, "Significance level")->capture_default_str();
  tost_cmd->add_flag("--grid", tost.grid, "Print the per-context colour grid");

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the local HTTP service");
  serve_cmd->add_option("--assets", serve.assets, "Asset library root")->capture_default_str();
  serve_cmd->add_option("--data", serve.data, "Uploads and job output")->capture_default_str();
  serve_cmd->add_option("--web-root", serve.web_root, "Built web UI served at /");
  serve_cmd->add_option("--bind", serve.bind, "Listen address")->capture_default_str();
  serve_cmd->add_option("--port", serve.port, "Listen port")
      ->check(CLI::Range(1, 65535))
      ->capture_default_str();
  serve_cmd->add_option("--upload-cap-mb", serve.upload_cap_mb, "Design upload size cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  serve_cmd->add_option("--workers", serve.workers, "Render workers (0 = all cores)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_config(serve_cmd, common);

  try {
    app.parse(argc, argv);
    if (tost_cmd->parsed() && !tost.csv && !(tost.n && tost.mean && tost.sd))
      throw CLI::ValidationError("tost", "either --csv or all of --n, --mean, --sd is required");
  } catch (const CLI::Success& e) {  // --help, --version
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("usage", e.what());
    return kExitUsage;
  }

  try {
    if (blend_cmd->parsed()) return run_blend(common, blend);
    if (batch_cmd->parsed()) return run_batch(common, batch);
    if (geometry_cmd->parsed()) return run_geometry(common, geometry);
    if (distance_cmd->parsed()) return run_distance(common, distance);
    if (tost_cmd->parsed()) return run_tost(tost);
    if (serve_cmd->parsed()) return run_serve(common, serve);
  } catch (const simulatar::Error& e) {
    report_error(to_string(e.kind()), e.what());
    return exit_code_for_error(e);
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return kExitConfig;
  }
  return kExitUsage;
}
