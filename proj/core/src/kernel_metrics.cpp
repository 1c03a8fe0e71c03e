#include "shiftkern/kernel_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace shiftkern {

namespace {

double grid_point(int i, int count, double halfwidth) {
  return -halfwidth + 2.0 * halfwidth * i / (count - 1);
}

Function2D as_function(const KernelSpec& spec) {
  if (!is_two_dimensional(spec)) throw std::invalid_argument("metric needs a 2-D kernel");
  return [spec](double x1, double x2) { return evaluate_kernel(spec, x1, x2); };
}

}  // namespace

KernelValidity check_validity(const Kernel1D& kernel) {
  const double t_max = kernel_halfwidth(kernel);
  KernelValidity v{true, true, true};
  const int mid = kGrid1D / 2;
  double previous = std::numeric_limits<double>::infinity();
  for (int i = mid; i < kGrid1D; ++i) {
    const double t = grid_point(i, kGrid1D, t_max);
    const double right = kernel_profile(kernel, t);
    const double left = kernel_profile(kernel, -t);
    if (std::abs(right - left) > 1e-12) v.symmetric = false;
    if (right < 0.0 || left < 0.0) v.nonnegative = false;
    if (right > previous) v.unimodal = false;
    previous = right;
  }
  return v;
}

double isotropy_metric(const Function2D& kernel, double halfwidth) {
  const double peak = kernel(0.0, 0.0);
  double worst = 0.0;
  for (int r = 1; r <= 9; ++r) {
    const double radius = 0.1 * r * halfwidth;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int a = 0; a < 360; ++a) {
      const double angle = a * std::numbers::pi / 180.0;
      const double v = kernel(radius * std::cos(angle), radius * std::sin(angle));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    worst = std::max(worst, hi - lo);
  }
  return worst / peak;
}

double isotropy_metric(const KernelSpec& spec) {
  return isotropy_metric(as_function(spec), kernel_halfwidth(spec));
}

double corner_overshoot(const Function2D& kernel, double halfwidth) {
  double lowest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGrid2D; ++i)
    for (int j = 0; j < kGrid2D; ++j)
      lowest = std::min(lowest, kernel(grid_point(i, kGrid2D, halfwidth),
                                       grid_point(j, kGrid2D, halfwidth)));
  return lowest / kernel(0.0, 0.0);
}

double corner_overshoot(const KernelSpec& spec) {
  return corner_overshoot(as_function(spec), kernel_halfwidth(spec));
}

double sup_distance(const KernelSpec& spec, const Function2D& target) {
  const auto kernel = as_function(spec);
  const double t_max = kernel_halfwidth(spec);
  double worst = 0.0;
  for (int i = 0; i < kGrid2D; ++i)
    for (int j = 0; j < kGrid2D; ++j) {
      const double x = grid_point(i, kGrid2D, t_max);
      const double y = grid_point(j, kGrid2D, t_max);
      worst = std::max(worst, std::abs(kernel(x, y) - target(x, y)));
    }
  return worst;
}

}  // namespace shiftkern
