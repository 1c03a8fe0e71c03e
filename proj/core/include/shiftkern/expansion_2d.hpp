#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "shiftkern/expansion.hpp"
#include "shiftkern/kernel.hpp"

namespace shiftkern {

/// A plane-wave basis function cos(wx*x + wy*y) or sin(wx*x + wy*y), with
/// interpolating coefficient weight * cos(wx*tx + wy*ty) (resp. sin).
struct PlaneWave {
  double wx = 0.0;
  double wy = 0.0;
  bool sine = false;
  double weight = 0.0;
};

/// Shiftable expansion of a symmetric 2-D kernel,
///   phi(z - x) = sum_m c_m(x) phi_m(z),
/// either as a tensor product of two 1-D expansions (term m = a * ny + b) or
/// as a list of plane waves (directional kernels).
class ShiftableExpansion2D {
public:
  static ShiftableExpansion2D tensor(ShiftableExpansion1D x, ShiftableExpansion1D y);
  static ShiftableExpansion2D box(double halfwidth);

  /// Expands a Separable2D or Directional2D spec. Directional kernels are
  /// limited to order <= kMaxDirectionalOrder (the expansion has 2^N terms).
  static ShiftableExpansion2D from_spec(const KernelSpec& spec);

  static constexpr int kMaxDirectionalOrder = 10;

  std::size_t order() const noexcept;
  bool is_tensor() const noexcept { return x_.has_value(); }
  const ShiftableExpansion1D& x_factor() const { return x_.value(); }
  const ShiftableExpansion1D& y_factor() const { return y_.value(); }
  std::span<const PlaneWave> waves() const noexcept { return waves_; }

  double halfwidth() const noexcept { return halfwidth_; }

  /// True for the constant (box) kernel.
  bool is_box() const noexcept;

  double basis_value(std::size_t m, double x, double y) const;
  void coefficients(double tx, double ty, std::span<double> out) const;
  std::vector<double> coefficients(double tx, double ty) const;

  /// sum_m c_m(tx, ty) phi_m(x, y).
  double reconstruct(double x, double y, double tx, double ty) const;

  /// Closed-form kernel phi(dx, dy) of the generating spec; a truncated
  /// tensor factor is evaluated through its retained terms at tau = 0.
  double kernel(double dx, double dy) const;

  const KernelSpec& spec() const noexcept { return spec_; }

private:
  ShiftableExpansion2D() = default;

  KernelSpec spec_;
  double halfwidth_ = 0.0;
  std::optional<ShiftableExpansion1D> x_;
  std::optional<ShiftableExpansion1D> y_;
  std::vector<PlaneWave> waves_;
};

}  // namespace shiftkern
