#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "shiftkern/expansion.hpp"
#include "shiftkern/filters.hpp"
#include "shiftkern/image_buffer.hpp"

namespace shiftkern {

struct PixelOffset {
  int dx = 0;
  int dy = 0;
  friend bool operator==(const PixelOffset&, const PixelOffset&) = default;
};

inline constexpr std::size_t kMaxNlmPatchSize = 4;
inline constexpr int kMaxNlmPerDimOrder = 5;

/// Shiftable approximation of non-local means over a small patch of p
/// offsets. The patch weight exp(-sum_k g_k t_k^2 / h^2) is replaced by the
/// separable product of per-offset raised-cosine fits with variance
/// h^2 / (2 g_k), each holding `per_dim_order` basis terms.
struct NlmConfig {
  /// offsets[0] must be (0, 0); at most kMaxNlmPatchSize entries.
  std::vector<PixelOffset> offsets{{0, 0}};
  /// g(u_k); when empty, gaussian_patch_weights(offsets, sigma_patch).
  std::vector<double> patch_weights;
  double sigma_patch = 1.0;
  double h = 10.0;
  int radius = 1;
  /// Basis terms per dimension (raised-cosine power per_dim_order - 1).
  int per_dim_order = 3;
  double range_halfwidth = 255.0;
  FilterOptions options;
};

struct NlmResult {
  ImageBuffer image;
  /// sup |approximate - exact| patch weight over sampled difference vectors.
  double kernel_gap = 0.0;
  std::size_t total_order = 0;
};

/// exp(-|u|^2 / (2 sigma^2)) normalized to unit sum.
std::vector<double> gaussian_patch_weights(std::span<const PixelOffset> offsets, double sigma_patch);

/// The per-offset range expansions used by both NLM paths.
std::vector<ShiftableExpansion1D> nlm_dimension_expansions(const NlmConfig& config);

NlmResult nlm_shiftable_experimental(const ImageBuffer& f, const NlmConfig& config);

/// Brute-force NLM that uses the same separable approximate kernel.
ImageBuffer nlm_direct(const ImageBuffer& f, const NlmConfig& config);

/// sup over sampled difference vectors of |approximate - exact| patch weight.
double nlm_kernel_gap(const NlmConfig& config, std::size_t samples = 4096);

}  // namespace shiftkern
