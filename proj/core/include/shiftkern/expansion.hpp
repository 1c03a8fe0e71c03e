#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "shiftkern/kernel.hpp"

namespace shiftkern {

enum class BasisKind { Cosine, Sine, Monomial };

/// One fixed basis function. Cosine/Sine: cos(frequency * t) / sin(frequency * t),
/// a zero-frequency Cosine being the constant 1. Monomial: (frequency * t)^degree,
/// where frequency is the inverse of the normalization length.
struct BasisFunction1D {
  BasisKind kind = BasisKind::Cosine;
  double frequency = 0.0;
  int degree = 0;

  double operator()(double t) const noexcept;
  friend bool operator==(const BasisFunction1D&, const BasisFunction1D&) = default;
};

enum class ExpansionFamily { RaisedCosine, Polynomial };

/// A shiftable kernel phi written as
///
///   phi(t - tau) = sum_n c_n(tau) * phi_n(t)
///
/// with fixed basis functions phi_n and interpolating coefficients c_n.
/// Every basis function is bounded by 1 on [-T, T]; weights()[n] is the
/// largest |c_n(tau)| over tau in [-T, T] and ranks the terms for truncation.
///
/// Immutable after construction.
class ShiftableExpansion1D {
public:
  /// The constant kernel (raised cosine of power 0) on [-255, 255].
  ShiftableExpansion1D();

  ExpansionFamily family() const noexcept { return family_; }
  /// Exponent N of the generating kernel.
  int power() const noexcept { return power_; }
  /// Number of basis functions (the order of shiftability).
  std::size_t order() const noexcept { return basis_.size(); }
  double halfwidth() const noexcept { return halfwidth_; }
  /// Shape half-width L of the generating kernel.
  double scale() const noexcept { return scale_; }

  std::span<const BasisFunction1D> basis() const noexcept { return basis_; }
  std::span<const double> weights() const noexcept { return weights_; }

  double basis_value(std::size_t n, double t) const noexcept { return basis_[n](t); }

  /// Writes c_n(tau) for every basis term; out.size() must equal order().
  void coefficients(double tau, std::span<double> out) const;
  std::vector<double> coefficients(double tau) const;

  /// sum_n c_n(tau) phi_n(t).
  double reconstruct(double t, double tau) const;

  /// Closed-form generating kernel phi(d) (never truncated).
  double profile(double d) const noexcept;

  /// The kernel value this expansion represents for the pair (t, tau):
  /// profile(t - tau) when untruncated, reconstruct(t, tau) otherwise.
  double kernel_at(double t, double tau) const;

  Kernel1D generating_kernel() const noexcept;

  bool truncated() const noexcept { return dropped_ > 0; }
  std::size_t dropped_terms() const noexcept { return dropped_; }
  /// Worst |profile(t - tau) - reconstruct(t, tau)| on the truncation grid.
  double truncation_deviation() const noexcept { return deviation_; }

private:
  friend ShiftableExpansion1D raised_cosine_expansion(int, double, double);
  friend ShiftableExpansion1D polynomial_expansion(int, double, double);
  friend ShiftableExpansion1D truncate_expansion(const ShiftableExpansion1D&, double);

  void polynomial_coefficients(double tau, std::span<double> full) const;

  ExpansionFamily family_ = ExpansionFamily::RaisedCosine;
  int power_ = 0;
  double halfwidth_ = 255.0;
  double scale_ = 255.0;
  std::vector<BasisFunction1D> basis_;
  std::vector<double> weights_;
  std::size_t dropped_ = 0;
  double deviation_ = 0.0;
};

/// Real expansion of [cos(pi t / 2L)]^N with exactly N+1 terms: the constant
/// (even N) followed by cos/sin pairs at frequencies |2k-N| pi / 2L.
ShiftableExpansion1D raised_cosine_expansion(int power, double halfwidth, double scale);
ShiftableExpansion1D raised_cosine_expansion(int power, double halfwidth);

/// Expansion of (1 - t^2/L^2)^N over the 2N+1 monomials (t/T)^k, k = 0..2N.
ShiftableExpansion1D polynomial_expansion(int power, double halfwidth, double scale);
ShiftableExpansion1D polynomial_expansion(int power, double halfwidth);

/// Drops terms with weight < epsilon * max weight. Remaining coefficients
/// are left as they are; the worst pointwise deviation from the full kernel
/// is recorded. epsilon must lie in [0, 1).
ShiftableExpansion1D truncate_expansion(const ShiftableExpansion1D& expansion, double epsilon);

ShiftableExpansion1D expand(const Kernel1D& kernel);

}  // namespace shiftkern
