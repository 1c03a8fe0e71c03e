#pragma once

#include <functional>

#include "shiftkern/kernel.hpp"

namespace shiftkern {

using Function2D = std::function<double(double, double)>;

inline constexpr int kGrid1D = 1001;
inline constexpr int kGrid2D = 257;

struct KernelValidity {
  bool symmetric = false;
  bool nonnegative = false;
  bool unimodal = false;

  bool ok() const noexcept { return symmetric && nonnegative && unimodal; }
};

/// Grid check on 1001 points over [-T, T]: f(t) == f(-t) to 1e-12,
/// f >= 0, and f nonincreasing for t >= 0.
KernelValidity check_validity(const Kernel1D& kernel);

/// Worst (max - min) / peak over circles of radius 0.1T .. 0.9T, each sampled
/// at 360 angles. Zero for a radial function. Peak is the value at the origin.
double isotropy_metric(const KernelSpec& spec);
double isotropy_metric(const Function2D& kernel, double halfwidth);

/// min / peak over a 257 x 257 grid on [-T, T]^2; negative when the kernel
/// dips below zero.
double corner_overshoot(const KernelSpec& spec);
double corner_overshoot(const Function2D& kernel, double halfwidth);

/// max |kernel - target| over a 257 x 257 grid on [-T, T]^2.
double sup_distance(const KernelSpec& spec, const Function2D& target);

}  // namespace shiftkern
