#include <doctest.h>

#include <cmath>
#include <numbers>

#include "shiftkern/kernel_metrics.hpp"

using namespace shiftkern;

namespace {

Function2D gaussian_limit(double rate) {
  return [rate](double x, double y) { return std::exp(-rate * (x * x + y * y)); };
}

}  // namespace

TEST_CASE("validity of the basic windows") {
  for (int n : {0, 1, 2, 7, 30}) {
    CHECK(check_validity(raised_cosine(n, 5.0)).ok());
    CHECK(check_validity(poly_window(n, 5.0)).ok());
  }
}

TEST_CASE("a stretched kernel is not valid") {
  RaisedCosine k = raised_cosine(4, 10.0);
  k.scale = 4.0;  // argument leaves [-pi/2, pi/2]
  const auto v = check_validity(k);
  CHECK(v.symmetric);
  CHECK_FALSE(v.unimodal);
}

TEST_CASE("isotropy of a radial function is zero") {
  const double sigma = 0.3;
  const Function2D g = [sigma](double x, double y) { return std::exp(-(x * x + y * y) / (2 * sigma * sigma)); };
  CHECK(isotropy_metric(g, 1.0) <= 1e-12);
}

TEST_CASE("frozen isotropy values") {
  CHECK(std::abs(isotropy_metric(four_direction_kernel(1.0)) - 0.0045659) <= 1e-6);
  CHECK(std::abs(isotropy_metric(directional_kernel(4, 1.0)) - 0.018940) <= 1e-5);
  CHECK(std::abs(isotropy_metric(separable(raised_cosine(2, 1.0), raised_cosine(2, 1.0))) - 0.0625563) <= 1e-6);
}

TEST_CASE("isotropy does not depend on the half-width") {
  CHECK(isotropy_metric(four_direction_kernel(37.0)) == doctest::Approx(isotropy_metric(four_direction_kernel(1.0))));
}

TEST_CASE("directional kernel is more isotropic than the separable one") {
  const double sep = isotropy_metric(separable(raised_cosine(2, 1.0), raised_cosine(2, 1.0)));
  CHECK(isotropy_metric(four_direction_kernel(1.0)) < sep);
  CHECK(isotropy_metric(directional_kernel(4, 1.0)) < sep);
}

TEST_CASE("separable q_N x q_N approaches isotropy as N grows") {
  const double expected[] = {0.1358, 0.0626, 0.0374, 0.0264, 0.0167, 0.0116, 0.0058};
  const int orders[] = {1, 2, 3, 4, 6, 8, 16};
  double prev = INFINITY;
  for (int i = 0; i < 7; ++i) {
    const double m = isotropy_metric(separable(raised_cosine(orders[i], 1.0), raised_cosine(orders[i], 1.0)));
    CAPTURE(orders[i]);
    CHECK(std::abs(m - expected[i]) <= 1e-4);
    CHECK(m < prev);
    prev = m;
  }
}

TEST_CASE("corner overshoot") {
  SUBCASE("four-direction kernel dips within 2% of the peak") {
    const double v = corner_overshoot(four_direction_kernel(1.0));
    CHECK(std::abs(v - (-0.019616582619185592)) <= 1e-12);
    CHECK(v >= -0.02);
    CHECK(v < 0.0);
  }
  SUBCASE("normalized N=4 kernel dips further") {
    CHECK(std::abs(corner_overshoot(directional_kernel(4, 1.0)) - (-0.109104)) <= 1e-6);
  }
  SUBCASE("separable windows do not overshoot") {
    CHECK(corner_overshoot(separable(raised_cosine(2, 3.0), raised_cosine(2, 3.0))) >= 0.0);
    CHECK(corner_overshoot(separable(poly_window(3, 3.0), poly_window(3, 3.0))) >= 0.0);
  }
}

TEST_CASE("directional kernel against exp(-pi^2 r^2 / 8T^2)") {
  const double expected[] = {0.4717, 0.4215, 0.4021, 0.3933};
  const int orders[] = {4, 8, 16, 32};
  const double rate = std::numbers::pi * std::numbers::pi / 8.0;
  double prev = INFINITY;
  for (int i = 0; i < 4; ++i) {
    const double d = sup_distance(directional_kernel(orders[i], 1.0), gaussian_limit(rate));
    CAPTURE(orders[i]);
    CHECK(std::abs(d - expected[i]) <= 1e-4);
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("normalized directional kernel converges to exp(-3 pi^2 r^2 / 8T^2)") {
  const double rate = 3.0 * std::numbers::pi * std::numbers::pi / 8.0;
  double prev = INFINITY;
  for (int n : {4, 8, 16, 32, 64}) {
    const double d = sup_distance(directional_kernel(n, 1.0), gaussian_limit(rate));
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 0.01);
}

TEST_CASE("metrics reject 1-D kernels") {
  CHECK_THROWS_AS(isotropy_metric(KernelSpec{raised_cosine(2, 1.0)}), std::invalid_argument);
  CHECK_THROWS_AS(corner_overshoot(KernelSpec{raised_cosine(2, 1.0)}), std::invalid_argument);
}
