#include <benchmark/benchmark.h>

#include <random>

#include "simulatar/stats.hpp"

namespace {

using namespace simulatar;

void BM_StudentTCdf(benchmark::State& state) {
  double t = -10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(student_t_cdf(t, 11.0));
    t = t > 10.0 ? -10.0 : t + 0.013;
  }
}
BENCHMARK(BM_StudentTCdf);

void BM_TostPaired(benchmark::State& state) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-2, 2);
  std::vector<double> diffs(static_cast<std::size_t>(state.range(0)));
  for (auto& x : diffs) x = d(rng);
  for (auto _ : state) benchmark::DoNotOptimize(tost_paired(diffs, 1.0, 0.05));
}
BENCHMARK(BM_TostPaired)->Arg(12)->Arg(1000);

void BM_BuildGrid(benchmark::State& state) {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> rating(1, 7);
  std::vector<RatingRecord> records;
  for (int p = 0; p < 12; ++p)
    for (int ctx = 0; ctx < 6; ++ctx)
      for (auto v : {Variant::A, Variant::B})
        for (auto m : {Method::Hmd, Method::Simulatar})
          for (Dimension dim : kAllDimensions)
            records.push_back(
                {"P" + std::to_string(p), "c" + std::to_string(ctx), v, m, dim, rating(rng)});
  for (auto _ : state) benchmark::DoNotOptimize(build_grid(records, 1.0, 0.05));
}
BENCHMARK(BM_BuildGrid);

}  // namespace
