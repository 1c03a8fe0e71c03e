#include <benchmark/benchmark.h>

#include <random>

#include "shiftkern/moving_sum.hpp"

namespace {

shiftkern::ImageBuffer noise(int side) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 255.0);
  shiftkern::ImageBuffer img(side, side);
  for (double& v : img.data()) v = u(rng);
  return img;
}

void BM_MovingSum(benchmark::State& state) {
  const auto img = noise(512);
  const int radius = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(shiftkern::moving_sum(img, radius));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}
BENCHMARK(BM_MovingSum)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
