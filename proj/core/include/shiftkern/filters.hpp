#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "shiftkern/expansion.hpp"
#include "shiftkern/expansion_2d.hpp"
#include "shiftkern/image_buffer.hpp"
#include "shiftkern/kernel.hpp"

namespace shiftkern {

struct FilterOptions {
  int threads = 1;
  /// A pixel whose denominator magnitude falls below eta_floor * sum |a(x)|
  /// keeps its input value.
  double eta_floor = 1e-12;
  /// Spatial basis functions are evaluated at (col - origin_x, row - origin_y).
  /// Expansions with a polynomial factor ignore this and use a per-tile origin.
  double origin_x = 0.0;
  double origin_y = 0.0;
};

/// moving_sum(f, T) / moving_sum(1, T).
ImageBuffer box_average(const ImageBuffer& f, int radius);

/// Brute-force normalized spatial filter over the clipped (2T+1)^2 window.
/// The kernel is evaluated at (dcol, drow) offsets from the centre pixel.
ImageBuffer spatial_filter_direct(const ImageBuffer& f, const KernelSpec& kernel, int radius,
                                  double eta_floor = 1e-12);

/// Constant-time spatial filter: for every basis term m,
///   out(x) = sum_m c_m(x) Sum(f phi_m, x, T) / sum_m c_m(x) Sum(phi_m, x, T).
ImageBuffer spatial_filter_shiftable(const ImageBuffer& f, const ShiftableExpansion2D& kernel,
                                     int radius, const FilterOptions& options = {});

struct BilateralConfig {
  /// 2-D spatial kernel whose half-width equals `radius`; empty means a box window.
  std::optional<KernelSpec> spatial;
  /// Range kernel over intensity; its half-width must cover the input's span.
  ShiftableExpansion1D range;
  int radius = 0;
  FilterOptions options;
};

/// Auxiliary images of the constant-time bilateral filter, pair index
/// p = m * range_terms + n:
///   coefficient[p](x) = c_m(x) d_n(f(x))
///   numerator[p](x)   = phi_m(x) phi_n(f(x)) f(x)
///   denominator[p](x) = phi_m(x) phi_n(f(x))
struct BasisImageStack {
  std::size_t spatial_terms = 0;
  std::size_t range_terms = 0;
  std::vector<ImageBuffer> coefficient;
  std::vector<ImageBuffer> numerator;
  std::vector<ImageBuffer> denominator;
};

ShiftableExpansion2D spatial_expansion(const BilateralConfig& config);

BasisImageStack build_basis_stack(const ImageBuffer& f, const BilateralConfig& config);

/// Brute-force bilateral filter with the same kernels (clipped windows).
ImageBuffer bilateral_filter_direct(const ImageBuffer& f, const BilateralConfig& config);

/// Constant-time bilateral filter: M*N basis-image pairs, their moving sums,
/// and the coefficient-weighted ratio. Accumulation runs m outer, n inner.
ImageBuffer bilateral_filter_shiftable(const ImageBuffer& f, const BilateralConfig& config);

}  // namespace shiftkern
