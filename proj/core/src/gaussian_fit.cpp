#include "shiftkern/gaussian_fit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace shiftkern {

namespace {

constexpr int kErrorGridPoints = 1001;

int ceil_order(double threshold) {
  // A relative guard keeps exact integers (e.g. sigma = T / sqrt 2) from
  // rounding up through floating-point noise.
  return std::max(1, static_cast<int>(std::ceil(threshold * (1.0 - 1e-12))));
}

void validate(double sigma, double halfwidth, double epsilon) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be positive");
  if (!(halfwidth > 0.0) || !std::isfinite(halfwidth))
    throw std::invalid_argument("half-width must be positive");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in [0, 1)");
}

double gaussian_sup_error(const ShiftableExpansion1D& e, double sigma) {
  const double t_max = e.halfwidth();
  double worst = 0.0;
  for (int i = 0; i < kErrorGridPoints; ++i) {
    const double t = -t_max + 2.0 * t_max * i / (kErrorGridPoints - 1);
    const double target = std::exp(-t * t / (2.0 * sigma * sigma));
    worst = std::max(worst, std::abs(e.reconstruct(t, 0.0) - target));
  }
  return worst;
}

template <typename MakeExpansion>
GaussianFit fit(FitVariant variant, double sigma, double halfwidth, double epsilon,
                const FitOptions& options, int min_order, MakeExpansion make) {
  validate(sigma, halfwidth, epsilon);
  GaussianFit result;
  result.variant = variant;
  result.sigma = sigma;
  result.halfwidth = halfwidth;
  result.min_valid_order = min_order;
  result.order = options.forced_order.value_or(min_order);
  if (result.order < 1) throw std::invalid_argument("fit order must be >= 1");
  result.valid = result.order >= min_order;
  if (result.order > options.order_cap)
    result.warning = "order " + std::to_string(result.order) + " exceeds cap " +
                     std::to_string(options.order_cap);

  result.expansion = truncate_expansion(make(result.order), epsilon);
  result.truncated_terms = result.expansion.dropped_terms();
  result.sup_error = gaussian_sup_error(result.expansion, sigma);
  return result;
}

}  // namespace

const char* to_string(FitVariant variant) noexcept {
  return variant == FitVariant::RaisedCosine ? "cosine" : "poly";
}

int raised_cosine_min_order(double sigma, double halfwidth) {
  validate(sigma, halfwidth, 0.0);
  const double r = 2.0 * halfwidth / (std::numbers::pi * sigma);
  return ceil_order(r * r);
}

int polynomial_min_order(double sigma, double halfwidth) {
  validate(sigma, halfwidth, 0.0);
  return ceil_order(halfwidth * halfwidth / (2.0 * sigma * sigma));
}

GaussianFit fit_gaussian_raised_cosine(double sigma, double halfwidth, double epsilon,
                                       const FitOptions& options) {
  return fit(FitVariant::RaisedCosine, sigma, halfwidth, epsilon, options,
             raised_cosine_min_order(sigma, halfwidth), [&](int n) {
               // cos(t / (sigma sqrt N)) = cos(pi t / 2L) with L = pi sigma sqrt(N) / 2.
               const double scale = std::numbers::pi * sigma * std::sqrt(double(n)) / 2.0;
               return raised_cosine_expansion(n, halfwidth, scale);
             });
}

GaussianFit fit_gaussian_polynomial(double sigma, double halfwidth, double epsilon,
                                    const FitOptions& options) {
  return fit(FitVariant::Polynomial, sigma, halfwidth, epsilon, options,
             polynomial_min_order(sigma, halfwidth), [&](int n) {
               return polynomial_expansion(n, halfwidth, sigma * std::sqrt(2.0 * n));
             });
}

Kernel1D fitted_kernel(const GaussianFit& fit) { return fit.expansion.generating_kernel(); }

nlohmann::ordered_json to_json(const GaussianFit& fit) {
  nlohmann::ordered_json j;
  j["sigma"] = fit.sigma;
  j["T"] = fit.halfwidth;
  j["N"] = fit.order;
  j["variant"] = to_string(fit.variant);
  j["sup_error"] = fit.sup_error;
  j["truncated_terms"] = fit.truncated_terms;
  return j;
}

}  // namespace shiftkern
