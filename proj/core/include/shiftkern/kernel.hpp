#pragma once

#include <stdexcept>
#include <variant>

namespace shiftkern {

/// [cos(pi t / (2 scale))]^order on |t| <= halfwidth. scale == halfwidth is
/// the plain raised cosine q_N; a Gaussian fit uses scale >= halfwidth.
struct RaisedCosine {
  int order = 0;
  double halfwidth = 1.0;
  double scale = 1.0;
};

/// (1 - t^2 / scale^2)^order on |t| <= halfwidth.
struct PolyWindow {
  int order = 0;
  double halfwidth = 1.0;
  double scale = 1.0;
};

using Kernel1D = std::variant<RaisedCosine, PolyWindow>;

/// kx(x1) * ky(x2).
struct Separable2D {
  Kernel1D x;
  Kernel1D y;
};

/// prod_{k=1..order} q_1(argument_scale * (x1 cos th_k + x2 sin th_k)),
/// th_k = (k-1) pi / order, with q_1 of half-width `halfwidth` extended
/// naturally beyond [-T, T].
struct Directional2D {
  int order = 1;
  double halfwidth = 1.0;
  double argument_scale = 1.0;
};

using KernelSpec = std::variant<RaisedCosine, PolyWindow, Separable2D, Directional2D>;

/// Thrown when a 1-D kernel is evaluated outside [-T, T].
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

RaisedCosine raised_cosine(int order, double halfwidth);
PolyWindow poly_window(int order, double halfwidth);
Separable2D separable(Kernel1D x, Kernel1D y);

/// The directional kernel with argument scale sqrt(6/N).
Directional2D directional_kernel(int order, double halfwidth);

/// The four-cosine kernel q1(x1) q1((x1+x2)/sqrt2) q1(x2) q1((x1-x2)/sqrt2).
Directional2D four_direction_kernel(double halfwidth);

bool is_two_dimensional(const KernelSpec& spec) noexcept;
double kernel_halfwidth(const KernelSpec& spec) noexcept;
double kernel_halfwidth(const Kernel1D& spec) noexcept;
int kernel_order(const Kernel1D& spec) noexcept;
inline double kernel_halfwidth(const RaisedCosine& k) noexcept { return k.halfwidth; }
inline double kernel_halfwidth(const PolyWindow& k) noexcept { return k.halfwidth; }

/// Closed-form value of a 1-D kernel. Throws DomainError when |t| > T and
/// std::invalid_argument for a 2-D spec.
double evaluate_kernel(const KernelSpec& spec, double t);
double evaluate_kernel(const Kernel1D& spec, double t);
inline double evaluate_kernel(const RaisedCosine& k, double t) { return evaluate_kernel(Kernel1D{k}, t); }
inline double evaluate_kernel(const PolyWindow& k, double t) { return evaluate_kernel(Kernel1D{k}, t); }

/// Closed-form value of a 2-D kernel at (x1, x2); any point is accepted.
/// Throws std::invalid_argument for a 1-D spec.
double evaluate_kernel(const KernelSpec& spec, double x1, double x2);

/// 1-D profile without the domain check (natural extension beyond T).
double kernel_profile(const Kernel1D& spec, double t) noexcept;

double ipow(double base, int exponent) noexcept;

}  // namespace shiftkern
