#include <benchmark/benchmark.h>

#include <random>

#include "shiftkern/filters.hpp"
#include "shiftkern/gaussian_fit.hpp"

namespace {

using namespace shiftkern;

ImageBuffer noise(int side) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 255.0);
  ImageBuffer img(side, side);
  for (double& v : img.data()) v = u(rng);
  return img;
}

BilateralConfig config(int radius) {
  BilateralConfig c;
  c.range = fit_gaussian_raised_cosine(40.0, 255.0, 0.0).expansion;
  c.radius = radius;
  return c;
}

void BM_BilateralShiftable(benchmark::State& state) {
  const auto img = noise(256);
  const auto c = config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bilateral_filter_shiftable(img, c));
}
BENCHMARK(BM_BilateralShiftable)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_BilateralDirect(benchmark::State& state) {
  const auto img = noise(256);
  const auto c = config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bilateral_filter_direct(img, c));
}
BENCHMARK(BM_BilateralDirect)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SpatialShiftable(benchmark::State& state) {
  const auto img = noise(256);
  const int radius = static_cast<int>(state.range(0));
  const auto k = raised_cosine(4, radius);
  const auto e = ShiftableExpansion2D::from_spec(separable(k, k));
  for (auto _ : state) benchmark::DoNotOptimize(spatial_filter_shiftable(img, e, radius));
}
BENCHMARK(BM_SpatialShiftable)->Arg(2)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
