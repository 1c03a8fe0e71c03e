#include "shiftkern/expansion_2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace shiftkern {

ShiftableExpansion2D ShiftableExpansion2D::tensor(ShiftableExpansion1D x, ShiftableExpansion1D y) {
  ShiftableExpansion2D e;
  e.spec_ = Separable2D{x.generating_kernel(), y.generating_kernel()};
  e.halfwidth_ = std::max(x.halfwidth(), y.halfwidth());
  e.x_ = std::move(x);
  e.y_ = std::move(y);
  return e;
}

ShiftableExpansion2D ShiftableExpansion2D::box(double halfwidth) {
  return tensor(raised_cosine_expansion(0, halfwidth), raised_cosine_expansion(0, halfwidth));
}

ShiftableExpansion2D ShiftableExpansion2D::from_spec(const KernelSpec& spec) {
  if (const auto* s = std::get_if<Separable2D>(&spec)) return tensor(expand(s->x), expand(s->y));

  const auto* d = std::get_if<Directional2D>(&spec);
  if (d == nullptr) throw std::invalid_argument("2-D expansion of a 1-D kernel");
  if (d->order < 1 || d->order > kMaxDirectionalOrder)
    throw std::invalid_argument("directional expansion order must lie in [1, 10]");

  // prod_k cos(a_k . z) = 2^-N sum_{signs} cos((sum_k s_k a_k) . z); the sign
  // vectors s and -s coincide, so fix s_1 = +1 and double the weight.
  const int n = d->order;
  const double gamma = std::numbers::pi / (2.0 * d->halfwidth) * d->argument_scale;
  std::vector<double> ax(n), ay(n);
  for (int k = 0; k < n; ++k) {
    const double theta = k * std::numbers::pi / n;
    ax[k] = gamma * std::cos(theta);
    ay[k] = gamma * std::sin(theta);
  }

  struct Frequency {
    double wx, wy, weight;
  };
  std::vector<Frequency> freqs;
  const double unit = std::ldexp(1.0, 1 - n);
  const double tol = 1e-12 * gamma;
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    double wx = ax[0], wy = ay[0];
    for (int k = 1; k < n; ++k) {
      const double s = (mask >> (k - 1)) & 1u ? -1.0 : 1.0;
      wx += s * ax[k];
      wy += s * ay[k];
    }
    // cos is even: w and -w are the same basis function.
    if (wx < -tol || (std::abs(wx) <= tol && wy < -tol)) {
      wx = -wx;
      wy = -wy;
    }
    auto hit = std::find_if(freqs.begin(), freqs.end(), [&](const Frequency& f) {
      return std::abs(f.wx - wx) <= tol && std::abs(f.wy - wy) <= tol;
    });
    if (hit != freqs.end())
      hit->weight += unit;
    else
      freqs.push_back({wx, wy, unit});
  }

  ShiftableExpansion2D e;
  e.spec_ = *d;
  e.halfwidth_ = d->halfwidth;
  for (const auto& f : freqs) {
    if (std::abs(f.wx) <= tol && std::abs(f.wy) <= tol) {
      e.waves_.push_back({0.0, 0.0, false, f.weight});
      continue;
    }
    e.waves_.push_back({f.wx, f.wy, false, f.weight});
    e.waves_.push_back({f.wx, f.wy, true, f.weight});
  }
  return e;
}

std::size_t ShiftableExpansion2D::order() const noexcept {
  if (x_) return x_->order() * y_->order();
  return waves_.size();
}

bool ShiftableExpansion2D::is_box() const noexcept {
  if (x_) return x_->order() == 1 && y_->order() == 1 && x_->power() == 0 && y_->power() == 0;
  return false;
}

double ShiftableExpansion2D::basis_value(std::size_t m, double x, double y) const {
  if (x_) {
    const std::size_t ny = y_->order();
    return x_->basis_value(m / ny, x) * y_->basis_value(m % ny, y);
  }
  const auto& w = waves_.at(m);
  const double phase = w.wx * x + w.wy * y;
  return w.sine ? std::sin(phase) : std::cos(phase);
}

void ShiftableExpansion2D::coefficients(double tx, double ty, std::span<double> out) const {
  if (out.size() != order())
    throw std::invalid_argument("coefficient buffer size does not match order");
  if (x_) {
    const auto cx = x_->coefficients(tx);
    const auto cy = y_->coefficients(ty);
    std::size_t m = 0;
    for (double a : cx)
      for (double b : cy) out[m++] = a * b;
    return;
  }
  for (std::size_t m = 0; m < waves_.size(); ++m) {
    const auto& w = waves_[m];
    const double phase = w.wx * tx + w.wy * ty;
    out[m] = w.weight * (w.sine ? std::sin(phase) : std::cos(phase));
  }
}

std::vector<double> ShiftableExpansion2D::coefficients(double tx, double ty) const {
  std::vector<double> out(order());
  coefficients(tx, ty, out);
  return out;
}

double ShiftableExpansion2D::reconstruct(double x, double y, double tx, double ty) const {
  const auto c = coefficients(tx, ty);
  double sum = 0.0;
  for (std::size_t m = 0; m < c.size(); ++m) sum += c[m] * basis_value(m, x, y);
  return sum;
}

double ShiftableExpansion2D::kernel(double dx, double dy) const {
  if (x_ && (x_->truncated() || y_->truncated()))
    return x_->kernel_at(dx, 0.0) * y_->kernel_at(dy, 0.0);
  return evaluate_kernel(spec_, dx, dy);
}

}  // namespace shiftkern
