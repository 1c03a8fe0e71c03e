#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include <json.hpp>

#include "shiftkern/expansion.hpp"
#include "shiftkern/kernel.hpp"

namespace shiftkern {

enum class FitVariant { RaisedCosine, Polynomial };

const char* to_string(FitVariant variant) noexcept;

struct FitOptions {
  /// Use this power instead of the smallest valid one. May fall below the
  /// validity threshold, in which case the fit is marked invalid.
  std::optional<int> forced_order;
  /// Orders above this cap are kept but flagged with a warning.
  int order_cap = 1000;
};

/// A shiftable approximation of exp(-t^2 / (2 sigma^2)) on [-T, T].
struct GaussianFit {
  FitVariant variant = FitVariant::RaisedCosine;
  double sigma = 1.0;
  double halfwidth = 1.0;
  int order = 0;
  /// Smallest order for which the fitted kernel is nonnegative and unimodal.
  int min_valid_order = 0;
  bool valid = true;
  ShiftableExpansion1D expansion;
  /// max |kernel - gaussian| over a 1001-point grid on [-T, T], measured on
  /// the (possibly truncated) expansion.
  double sup_error = 0.0;
  std::size_t truncated_terms = 0;
  std::optional<std::string> warning;
};

/// ceil((2T / (pi sigma))^2), at least 1: keeps t / (sigma sqrt N) in [-pi/2, pi/2].
int raised_cosine_min_order(double sigma, double halfwidth);

/// ceil(T^2 / (2 sigma^2)), at least 1: keeps 1 - t^2 / (2 N sigma^2) >= 0.
int polynomial_min_order(double sigma, double halfwidth);

/// [cos(t / (sigma sqrt N))]^N, truncated per epsilon.
GaussianFit fit_gaussian_raised_cosine(double sigma, double halfwidth, double epsilon,
                                       const FitOptions& options = {});

/// [1 - t^2 / (2 N sigma^2)]^N, truncated per epsilon.
GaussianFit fit_gaussian_polynomial(double sigma, double halfwidth, double epsilon,
                                    const FitOptions& options = {});

/// The untruncated fitted kernel as a 1-D spec.
Kernel1D fitted_kernel(const GaussianFit& fit);

/// {sigma, T, N, variant, sup_error, truncated_terms}
nlohmann::ordered_json to_json(const GaussianFit& fit);

}  // namespace shiftkern
