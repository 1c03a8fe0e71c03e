#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <stdexcept>
#include <thread>

#include "shiftkern/filters.hpp"
#include "shiftkern/gaussian_fit.hpp"

namespace shiftkern::tools {

namespace {

template <typename Fn>
double time_ms(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

std::string machine_note(int threads) {
  std::string note = "threads=" + std::to_string(threads) +
                     " hw_concurrency=" + std::to_string(std::thread::hardware_concurrency());
#if defined(__clang__)
  note += " compiler=clang-" __clang_version__;
#elif defined(__GNUC__)
  note += " compiler=gcc-" __VERSION__;
#endif
  return note;
}

}  // namespace

ImageBuffer synthetic_image(int width, int height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ImageBuffer img(width, height);
  for (double& v : img.data()) v = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 255.0;
  return img;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

BenchReport run_bench(const BenchConfig& config) {
  if (config.size <= 0) throw std::invalid_argument("bench size must be positive");
  if (config.runs <= 0) throw std::invalid_argument("bench runs must be positive");
  if (config.radii.empty()) throw std::invalid_argument("bench needs at least one radius");
  for (int r : config.radii)
    if (r < 0) throw std::invalid_argument("bench radii must be >= 0");

  const ImageBuffer image = synthetic_image(config.size, config.size);
  const auto fit = fit_gaussian_raised_cosine(config.sigma_r, config.range_halfwidth, 0.0);

  BenchReport report;
  report.width = report.height = config.size;
  report.radii = config.radii;
  report.runs = config.runs;
  report.spatial_terms = 1;
  report.range_terms = fit.expansion.order();
  report.machine = machine_note(config.threads);

  const std::size_t count = config.radii.size();
  std::vector<BilateralConfig> configs(count);
  std::vector<ImageBuffer> fast(count);
  for (std::size_t k = 0; k < count; ++k) {
    configs[k].range = fit.expansion;
    configs[k].radius = config.radii[k];
    configs[k].options.threads = config.threads;
    fast[k] = bilateral_filter_shiftable(image, configs[k]);  // warm-up
  }

  // Radii are interleaved within each run so slow drift of the host affects
  // all of them alike.
  std::vector<std::vector<double>> samples(count);
  for (int i = 0; i < config.runs; ++i)
    for (std::size_t k = 0; k < count; ++k)
      samples[k].push_back(time_ms([&] { fast[k] = bilateral_filter_shiftable(image, configs[k]); }));
  for (const auto& s : samples) report.shiftable_ms.push_back(median(s));

  double worst_deviation = 0.0;
  if (config.direct) {
    const int runs = std::min(config.runs, config.direct_runs);
    std::vector<std::vector<double>> direct(count);
    std::vector<ImageBuffer> slow(count);
    for (int i = 0; i < runs; ++i)
      for (std::size_t k = 0; k < count; ++k)
        direct[k].push_back(time_ms([&] { slow[k] = bilateral_filter_direct(image, configs[k]); }));
    for (std::size_t k = 0; k < count; ++k) {
      report.direct_ms.push_back(median(direct[k]));
      worst_deviation = std::max(worst_deviation, max_relative_deviation(fast[k], slow[k]));
    }
  }

  const auto [lo, hi] = std::minmax_element(report.shiftable_ms.begin(), report.shiftable_ms.end());
  report.shiftable_spread = *hi / *lo;
  report.constant_time_ok = report.shiftable_spread <= kMaxShiftableSpread;

  if (config.direct) {
    report.max_relative_deviation = worst_deviation;
    const auto [rmin, rmax] = std::minmax_element(config.radii.begin(), config.radii.end());
    const double t_small = report.direct_ms[static_cast<std::size_t>(rmin - config.radii.begin())];
    const double t_large = report.direct_ms[static_cast<std::size_t>(rmax - config.radii.begin())];
    report.direct_growth = t_large / t_small;
    report.direct_growth_ok = *report.direct_growth >= kMinDirectGrowth;
  }
  return report;
}

nlohmann::ordered_json to_json(const BenchReport& report) {
  nlohmann::ordered_json j;
  j["width"] = report.width;
  j["height"] = report.height;
  j["T_values"] = report.radii;
  j["runs"] = report.runs;
  j["M"] = report.spatial_terms;
  j["N"] = report.range_terms;
  j["shiftable_median_ms"] = report.shiftable_ms;
  j["shiftable_spread"] = report.shiftable_spread;
  j["constant_time_ok"] = report.constant_time_ok;
  if (!report.direct_ms.empty()) {
    j["direct_median_ms"] = report.direct_ms;
    j["direct_growth"] = *report.direct_growth;
    j["direct_growth_ok"] = *report.direct_growth_ok;
  }
  if (report.max_relative_deviation) j["max_relative_deviation"] = *report.max_relative_deviation;
  j["machine"] = report.machine;
  return j;
}

}  // namespace shiftkern::tools
