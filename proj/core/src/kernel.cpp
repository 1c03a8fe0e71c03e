#include "shiftkern/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace shiftkern {

namespace {

void require_order(int order) {
  if (order < 0) throw std::invalid_argument("kernel order must be >= 0");
}

void require_halfwidth(double t) {
  if (!(t > 0.0) || !std::isfinite(t))
    throw std::invalid_argument("kernel half-width must be positive and finite");
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

double ipow(double base, int exponent) noexcept {
  double result = 1.0;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

RaisedCosine raised_cosine(int order, double halfwidth) {
  require_order(order);
  require_halfwidth(halfwidth);
  return {order, halfwidth, halfwidth};
}

PolyWindow poly_window(int order, double halfwidth) {
  require_order(order);
  require_halfwidth(halfwidth);
  return {order, halfwidth, halfwidth};
}

Separable2D separable(Kernel1D x, Kernel1D y) { return {std::move(x), std::move(y)}; }

Directional2D directional_kernel(int order, double halfwidth) {
  if (order < 1) throw std::invalid_argument("directional kernel needs order >= 1");
  require_halfwidth(halfwidth);
  return {order, halfwidth, std::sqrt(6.0 / order)};
}

Directional2D four_direction_kernel(double halfwidth) {
  require_halfwidth(halfwidth);
  return {4, halfwidth, 1.0};
}

bool is_two_dimensional(const KernelSpec& spec) noexcept {
  return std::holds_alternative<Separable2D>(spec) ||
         std::holds_alternative<Directional2D>(spec);
}

double kernel_halfwidth(const Kernel1D& spec) noexcept {
  return std::visit([](const auto& k) { return k.halfwidth; }, spec);
}

int kernel_order(const Kernel1D& spec) noexcept {
  return std::visit([](const auto& k) { return k.order; }, spec);
}

double kernel_halfwidth(const KernelSpec& spec) noexcept {
  return std::visit(overloaded{
                        [](const Separable2D& s) {
                          return std::max(kernel_halfwidth(s.x), kernel_halfwidth(s.y));
                        },
                        [](const auto& k) { return k.halfwidth; },
                    },
                    spec);
}

double kernel_profile(const Kernel1D& spec, double t) noexcept {
  return std::visit(overloaded{
                        [t](const RaisedCosine& k) {
                          return ipow(std::cos(std::numbers::pi * t / (2.0 * k.scale)), k.order);
                        },
                        [t](const PolyWindow& k) {
                          const double u = t / k.scale;
                          return ipow(1.0 - u * u, k.order);
                        },
                    },
                    spec);
}

double evaluate_kernel(const Kernel1D& spec, double t) {
  if (std::abs(t) > kernel_halfwidth(spec))
    throw DomainError("kernel evaluated outside [-T, T]");
  return kernel_profile(spec, t);
}

double evaluate_kernel(const KernelSpec& spec, double t) {
  if (const auto* k = std::get_if<RaisedCosine>(&spec)) return evaluate_kernel(Kernel1D{*k}, t);
  if (const auto* k = std::get_if<PolyWindow>(&spec)) return evaluate_kernel(Kernel1D{*k}, t);
  throw std::invalid_argument("1-D evaluation of a 2-D kernel");
}

double evaluate_kernel(const KernelSpec& spec, double x1, double x2) {
  if (const auto* s = std::get_if<Separable2D>(&spec))
    return kernel_profile(s->x, x1) * kernel_profile(s->y, x2);
  if (const auto* d = std::get_if<Directional2D>(&spec)) {
    const double gamma = std::numbers::pi / (2.0 * d->halfwidth) * d->argument_scale;
    double value = 1.0;
    for (int k = 0; k < d->order; ++k) {
      const double theta = k * std::numbers::pi / d->order;
      value *= std::cos(gamma * (x1 * std::cos(theta) + x2 * std::sin(theta)));
    }
    return value;
  }
  throw std::invalid_argument("2-D evaluation of a 1-D kernel");
}

}  // namespace shiftkern
