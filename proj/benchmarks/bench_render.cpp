#include <benchmark/benchmark.h>

#include <random>

#include "simulatar/geometry.hpp"
#include "simulatar/image.hpp"
#include "simulatar/render.hpp"

namespace {

using namespace simulatar;

FrameBuffer noise_frame(int width, int height) {
  FrameBuffer f(width, height);
  std::mt19937 rng(1);
  for (auto& v : f.rgb) v = static_cast<std::uint8_t>(rng());
  return f;
}

DesignAsset card(const HmdProfile& hmd) {
  RgbaImage img(hmd.display_resolution.width, hmd.display_resolution.height);
  for (std::size_t i = 0; i < img.rgba.size(); ++i) img.rgba[i] = static_cast<std::uint8_t>(i * 31);
  return {"card", img, std::nullopt};
}

void BM_RenderFrame(benchmark::State& state) {
  const ProfileRegistry reg = builtin_profiles();
  const CameraProfile& cam = reg.camera("gopro-hero10-linear");
  const HmdProfile& hmd = reg.hmd("hl2");
  const FrameBuffer bg = noise_frame(cam.frame_resolution.width, cam.frame_resolution.height);
  const RenderPlan plan(card(hmd), hmd, cam,
                        {500.0, state.range(0) ? BlendMode::AlphaOver : BlendMode::Additive});
  for (auto _ : state) benchmark::DoNotOptimize(plan.render(bg));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RenderFrame)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RenderPlan(benchmark::State& state) {
  const ProfileRegistry reg = builtin_profiles();
  const HmdProfile& hmd = reg.hmd("hl2");
  const DesignAsset design = card(hmd);
  for (auto _ : state)
    benchmark::DoNotOptimize(RenderPlan(design, hmd, reg.camera("gopro-hero10-linear"), {500.0}));
}
BENCHMARK(BM_RenderPlan)->Unit(benchmark::kMillisecond);

void BM_EvalCurve(benchmark::State& state) {
  const HmdProfile hmd = builtin_profiles().hmd("hl2");
  double lux = 50.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_curve(hmd.opacity_curve, lux));
    lux = lux > 20000.0 ? 50.0 : lux * 1.01;
  }
}
BENCHMARK(BM_EvalCurve);

}  // namespace

namespace {

void BM_EncodePng(benchmark::State& state) {
  const FrameBuffer frame = noise_frame(2704, 1520);
  for (auto _ : state) benchmark::DoNotOptimize(encode_png(frame));
}
BENCHMARK(BM_EncodePng)->Unit(benchmark::kMillisecond);

void BM_DecodePng(benchmark::State& state) {
  const auto bytes = encode_png(noise_frame(2704, 1520));
  for (auto _ : state) benchmark::DoNotOptimize(decode_png_rgb(bytes));
}
BENCHMARK(BM_DecodePng)->Unit(benchmark::kMillisecond);

}  // namespace
