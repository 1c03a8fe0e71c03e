#include <doctest.h>

#include <cmath>
#include <numbers>

#include "shiftkern/kernel.hpp"

using namespace shiftkern;

TEST_CASE("raised cosine peaks at one for every order") {
  for (int n : {0, 1, 2, 5, 17, 40}) CHECK(evaluate_kernel(raised_cosine(n, 7.5), 0.0) == 1.0);
}

TEST_CASE("raised cosine matches cos^N(pi t / 2T)") {
  const auto k = raised_cosine(3, 10.0);
  for (double t : {-10.0, -3.2, 0.5, 9.9})
    CHECK(evaluate_kernel(k, t) == doctest::Approx(std::pow(std::cos(std::numbers::pi * t / 20.0), 3)));
}

TEST_CASE("poly window vanishes at the boundary") {
  for (int n : {1, 2, 6}) {
    CHECK(evaluate_kernel(poly_window(n, 4.0), 4.0) == 0.0);
    CHECK(evaluate_kernel(poly_window(n, 4.0), -4.0) == 0.0);
  }
  CHECK(evaluate_kernel(poly_window(2, 4.0), 2.0) == doctest::Approx(0.5625));
}

TEST_CASE("1-D kernels reject points outside the support") {
  CHECK_THROWS_AS(evaluate_kernel(raised_cosine(2, 3.0), 3.5), DomainError);
  CHECK_THROWS_AS(evaluate_kernel(poly_window(2, 3.0), -3.01), DomainError);
  CHECK_NOTHROW(evaluate_kernel(raised_cosine(2, 3.0), 3.0));
}

TEST_CASE("constructors validate their arguments") {
  CHECK_THROWS_AS(raised_cosine(-1, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(poly_window(1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(directional_kernel(0, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_kernel(KernelSpec{raised_cosine(2, 3.0)}, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_kernel(KernelSpec{separable(raised_cosine(2, 3.0), raised_cosine(2, 3.0))}, 1.0),
                  std::invalid_argument);
}

TEST_CASE("separable kernel is the product of its factors") {
  const KernelSpec spec = separable(raised_cosine(2, 5.0), poly_window(1, 5.0));
  CHECK(is_two_dimensional(spec));
  CHECK(kernel_halfwidth(spec) == 5.0);
  const double v = evaluate_kernel(spec, 1.5, -2.0);
  CHECK(v == doctest::Approx(std::pow(std::cos(std::numbers::pi * 1.5 / 10.0), 2) * (1.0 - 4.0 / 25.0)));
}

TEST_CASE("directional kernel") {
  SUBCASE("peak at the origin") {
    CHECK(evaluate_kernel(KernelSpec{directional_kernel(4, 9.0)}, 0.0, 0.0) == 1.0);
    CHECK(evaluate_kernel(KernelSpec{four_direction_kernel(9.0)}, 0.0, 0.0) == 1.0);
  }
  SUBCASE("N=1 is a ridge along x2") {
    const KernelSpec k = directional_kernel(1, 2.0);
    const double expected = std::cos(std::sqrt(6.0) * std::numbers::pi * 0.7 / 4.0);
    CHECK(evaluate_kernel(k, 0.7, 0.0) == doctest::Approx(expected));
    CHECK(evaluate_kernel(k, 0.7, 1.9) == doctest::Approx(expected));
  }
  SUBCASE("four-direction kernel is the product of four cosines") {
    const double t = 3.0, x = 1.1, y = -0.4, g = std::numbers::pi / (2.0 * t);
    double expected = 1.0;
    for (int k = 0; k < 4; ++k) {
      const double th = k * std::numbers::pi / 4.0;
      expected *= std::cos(g * (x * std::cos(th) + y * std::sin(th)));
    }
    CHECK(evaluate_kernel(KernelSpec{four_direction_kernel(t)}, x, y) == doctest::Approx(expected));
  }
  SUBCASE("argument scale") {
    CHECK(directional_kernel(4, 1.0).argument_scale == doctest::Approx(std::sqrt(1.5)));
    CHECK(four_direction_kernel(1.0).argument_scale == 1.0);
  }
}

TEST_CASE("ipow") {
  CHECK(ipow(2.0, 0) == 1.0);
  CHECK(ipow(-1.5, 3) == -3.375);
  CHECK(ipow(0.5, 10) == doctest::Approx(1.0 / 1024.0));
}
