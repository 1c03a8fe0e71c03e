#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "shiftkern/image_buffer.hpp"

namespace shiftkern::tools {

inline constexpr std::uint64_t kBenchSeed = 0x5EED;

/// Bilateral filter timing sweep: box spatial window of each radius, range
/// kernel fitted to sigma_r on [-range_halfwidth, range_halfwidth].
struct BenchConfig {
  int size = 512;
  std::vector<int> radii{2, 4, 8, 16};
  int runs = 5;
  bool direct = false;
  /// The brute-force path runs min(runs, direct_runs) times per radius.
  int direct_runs = 3;
  double sigma_r = 40.0;
  double range_halfwidth = 255.0;
  int threads = 1;
};

struct BenchReport {
  int width = 0;
  int height = 0;
  std::vector<int> radii;
  int runs = 0;
  std::size_t spatial_terms = 0;
  std::size_t range_terms = 0;
  std::vector<double> shiftable_ms;
  std::vector<double> direct_ms;
  std::optional<double> max_relative_deviation;
  /// max / min of shiftable_ms.
  double shiftable_spread = 0.0;
  bool constant_time_ok = false;
  /// direct_ms at the largest radius over direct_ms at the smallest.
  std::optional<double> direct_growth;
  std::optional<bool> direct_growth_ok;
  std::string machine;
};

inline constexpr double kMaxShiftableSpread = 1.3;
inline constexpr double kMinDirectGrowth = 10.0;

/// Uniform samples in [0, 255) from a fixed-seed mt19937_64 (53-bit mantissa).
ImageBuffer synthetic_image(int width, int height, std::uint64_t seed = kBenchSeed);

double median(std::vector<double> values);

BenchReport run_bench(const BenchConfig& config);

nlohmann::ordered_json to_json(const BenchReport& report);

}  // namespace shiftkern::tools
