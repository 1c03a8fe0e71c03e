#include "shiftkern/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace shiftkern {

namespace {

constexpr int kTauGridPoints = 1001;
constexpr int kDeviationTGrid = 1001;
constexpr int kDeviationTauGrid = 101;

double binomial_weight(int n, int k) {
  // C(n, k) / 2^n in log space so large orders stay finite.
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) -
                  n * std::numbers::ln2);
}

void validate(int power, double halfwidth, double scale) {
  if (power < 0) throw std::invalid_argument("expansion power must be >= 0");
  if (!(halfwidth > 0.0) || !std::isfinite(halfwidth))
    throw std::invalid_argument("expansion half-width must be positive");
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw std::invalid_argument("expansion scale must be positive");
}

double grid_point(int i, int count, double halfwidth) {
  return -halfwidth + 2.0 * halfwidth * i / (count - 1);
}

}  // namespace

double BasisFunction1D::operator()(double t) const noexcept {
  switch (kind) {
    case BasisKind::Cosine: return frequency == 0.0 ? 1.0 : std::cos(frequency * t);
    case BasisKind::Sine: return std::sin(frequency * t);
    case BasisKind::Monomial: return ipow(frequency * t, degree);
  }
  return 0.0;
}

ShiftableExpansion1D::ShiftableExpansion1D() {
  basis_.push_back({BasisKind::Cosine, 0.0, 0});
  weights_.push_back(1.0);
}

void ShiftableExpansion1D::polynomial_coefficients(double tau, std::span<double> full) const {
  // (b0 + b1 s + b2 s^2)^N with s = t / T.
  const double l2 = scale_ * scale_;
  const double b0 = 1.0 - tau * tau / l2;
  const double b1 = 2.0 * tau * halfwidth_ / l2;
  const double b2 = -halfwidth_ * halfwidth_ / l2;
  std::fill(full.begin(), full.end(), 0.0);
  full[0] = 1.0;
  for (int p = 0; p < power_; ++p) {
    const int top = 2 * p;
    for (int k = top + 2; k >= 0; --k) {
      double v = 0.0;
      if (k <= top) v += b0 * full[k];
      if (k >= 1 && k - 1 <= top) v += b1 * full[k - 1];
      if (k >= 2) v += b2 * full[k - 2];
      full[k] = v;
    }
  }
}

void ShiftableExpansion1D::coefficients(double tau, std::span<double> out) const {
  if (out.size() != basis_.size())
    throw std::invalid_argument("coefficient buffer size does not match order");
  if (family_ == ExpansionFamily::RaisedCosine) {
    for (std::size_t n = 0; n < basis_.size(); ++n) {
      const auto& b = basis_[n];
      if (b.frequency == 0.0)
        out[n] = weights_[n];
      else if (b.kind == BasisKind::Cosine)
        out[n] = weights_[n] * std::cos(b.frequency * tau);
      else
        out[n] = weights_[n] * std::sin(b.frequency * tau);
    }
    return;
  }
  thread_local std::vector<double> full;
  full.resize(static_cast<std::size_t>(2 * power_ + 1));
  polynomial_coefficients(tau, full);
  for (std::size_t n = 0; n < basis_.size(); ++n) out[n] = full[basis_[n].degree];
}

std::vector<double> ShiftableExpansion1D::coefficients(double tau) const {
  std::vector<double> out(basis_.size());
  coefficients(tau, out);
  return out;
}

double ShiftableExpansion1D::reconstruct(double t, double tau) const {
  thread_local std::vector<double> c;
  c.resize(basis_.size());
  coefficients(tau, c);
  double sum = 0.0;
  for (std::size_t n = 0; n < basis_.size(); ++n) sum += c[n] * basis_[n](t);
  return sum;
}

Kernel1D ShiftableExpansion1D::generating_kernel() const noexcept {
  if (family_ == ExpansionFamily::RaisedCosine) return RaisedCosine{power_, halfwidth_, scale_};
  return PolyWindow{power_, halfwidth_, scale_};
}

double ShiftableExpansion1D::profile(double d) const noexcept {
  return kernel_profile(generating_kernel(), d);
}

double ShiftableExpansion1D::kernel_at(double t, double tau) const {
  return truncated() ? reconstruct(t, tau) : profile(t - tau);
}

ShiftableExpansion1D raised_cosine_expansion(int power, double halfwidth, double scale) {
  validate(power, halfwidth, scale);
  ShiftableExpansion1D e;
  e.family_ = ExpansionFamily::RaisedCosine;
  e.power_ = power;
  e.halfwidth_ = halfwidth;
  e.scale_ = scale;
  e.basis_.clear();
  e.weights_.clear();
  // cos^N(g t) = 2^-N sum_k C(N,k) e^{i(2k-N) g t}; pair k with N-k.
  const double gamma = std::numbers::pi / (2.0 * scale);
  for (int k = (power + 1) / 2; k <= power; ++k) {
    const int m = 2 * k - power;
    if (m == 0) {
      e.basis_.push_back({BasisKind::Cosine, 0.0, 0});
      e.weights_.push_back(binomial_weight(power, k));
    } else {
      const double w = 2.0 * binomial_weight(power, k);
      e.basis_.push_back({BasisKind::Cosine, m * gamma, 0});
      e.weights_.push_back(w);
      e.basis_.push_back({BasisKind::Sine, m * gamma, 0});
      e.weights_.push_back(w);
    }
  }
  return e;
}

ShiftableExpansion1D raised_cosine_expansion(int power, double halfwidth) {
  return raised_cosine_expansion(power, halfwidth, halfwidth);
}

ShiftableExpansion1D polynomial_expansion(int power, double halfwidth, double scale) {
  validate(power, halfwidth, scale);
  ShiftableExpansion1D e;
  e.family_ = ExpansionFamily::Polynomial;
  e.power_ = power;
  e.halfwidth_ = halfwidth;
  e.scale_ = scale;
  e.basis_.clear();
  e.weights_.assign(static_cast<std::size_t>(2 * power + 1), 0.0);
  for (int k = 0; k <= 2 * power; ++k)
    e.basis_.push_back({BasisKind::Monomial, 1.0 / halfwidth, k});

  std::vector<double> full(e.weights_.size());
  for (int i = 0; i < kTauGridPoints; ++i) {
    e.polynomial_coefficients(grid_point(i, kTauGridPoints, halfwidth), full);
    for (std::size_t k = 0; k < full.size(); ++k)
      e.weights_[k] = std::max(e.weights_[k], std::abs(full[k]));
  }
  return e;
}

ShiftableExpansion1D polynomial_expansion(int power, double halfwidth) {
  return polynomial_expansion(power, halfwidth, halfwidth);
}

ShiftableExpansion1D truncate_expansion(const ShiftableExpansion1D& expansion, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0))
    throw std::invalid_argument("truncation epsilon must lie in [0, 1)");
  const auto weights = expansion.weights();
  const double largest = *std::max_element(weights.begin(), weights.end());
  const double cutoff = epsilon * largest;

  ShiftableExpansion1D out = expansion;
  out.basis_.clear();
  out.weights_.clear();
  for (std::size_t n = 0; n < expansion.order(); ++n) {
    if (weights[n] < cutoff) continue;
    out.basis_.push_back(expansion.basis_[n]);
    out.weights_.push_back(weights[n]);
  }
  const std::size_t newly_dropped = expansion.order() - out.order();
  if (newly_dropped == 0) return expansion;
  out.dropped_ = expansion.dropped_ + newly_dropped;

  const double t_max = expansion.halfwidth();
  double worst = 0.0;
  for (int j = 0; j < kDeviationTauGrid; ++j) {
    const double tau = grid_point(j, kDeviationTauGrid, t_max);
    for (int i = 0; i < kDeviationTGrid; ++i) {
      const double t = grid_point(i, kDeviationTGrid, t_max);
      worst = std::max(worst, std::abs(out.profile(t - tau) - out.reconstruct(t, tau)));
    }
  }
  out.deviation_ = worst;
  return out;
}

ShiftableExpansion1D expand(const Kernel1D& kernel) {
  if (const auto* k = std::get_if<RaisedCosine>(&kernel))
    return raised_cosine_expansion(k->order, k->halfwidth, k->scale);
  const auto& p = std::get<PolyWindow>(kernel);
  return polynomial_expansion(p.order, p.halfwidth, p.scale);
}

}  // namespace shiftkern
