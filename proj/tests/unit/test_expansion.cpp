#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "shiftkern/expansion.hpp"

using namespace shiftkern;

namespace {

double abs_sum(const std::vector<double>& c) {
  double s = 0.0;
  for (double v : c) s += std::abs(v);
  return s;
}

// max over the sample of |phi(t - tau) - sum c_n(tau) phi_n(t)| / sum |c_n(tau)|
double worst_identity_ratio(const ShiftableExpansion1D& e, std::uint64_t seed, int pairs) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-e.halfwidth(), e.halfwidth());
  double worst = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const double t = u(rng), tau = u(rng);
    const auto c = e.coefficients(tau);
    const double err = std::abs(e.profile(t - tau) - e.reconstruct(t, tau));
    worst = std::max(worst, err / abs_sum(c));
  }
  return worst;
}

}  // namespace

TEST_CASE("raised cosine expansion has N+1 terms") {
  for (int n = 0; n <= 40; ++n) CHECK(raised_cosine_expansion(n, 255.0).order() == static_cast<std::size_t>(n + 1));
}

TEST_CASE("polynomial expansion has 2N+1 monomial terms") {
  for (int n = 0; n <= 40; ++n) {
    const auto e = polynomial_expansion(n, 255.0);
    REQUIRE(e.order() == static_cast<std::size_t>(2 * n + 1));
    for (std::size_t k = 0; k < e.order(); ++k) {
      CHECK(e.basis()[k].kind == BasisKind::Monomial);
      CHECK(e.basis()[k].degree == static_cast<int>(k));
    }
  }
}

TEST_CASE("order zero is the constant expansion") {
  for (const auto& e : {raised_cosine_expansion(0, 3.0), polynomial_expansion(0, 3.0)}) {
    REQUIRE(e.order() == 1);
    CHECK(e.basis_value(0, 1.7) == 1.0);
    CHECK(e.coefficients(-2.5)[0] == 1.0);
  }
}

TEST_CASE("raised cosine N=1 is the cosine addition rule") {
  const double t_half = 10.0, g = std::numbers::pi / (2.0 * t_half);
  const auto e = raised_cosine_expansion(1, t_half);
  REQUIRE(e.order() == 2);
  CHECK(e.basis()[0].kind == BasisKind::Cosine);
  CHECK(e.basis()[1].kind == BasisKind::Sine);
  CHECK(e.basis()[0].frequency == doctest::Approx(g));
  for (double tau : {-9.0, -1.3, 0.0, 4.4}) {
    const auto c = e.coefficients(tau);
    CHECK(c[0] == doctest::Approx(std::cos(g * tau)));
    CHECK(c[1] == doctest::Approx(std::sin(g * tau)));
  }
}

TEST_CASE("raised cosine N=2 matches cos^2 at random pairs") {
  const double t_half = 6.0, g = std::numbers::pi / (2.0 * t_half);
  const auto e = raised_cosine_expansion(2, t_half);
  REQUIRE(e.order() == 3);
  CHECK(e.basis()[0].frequency == 0.0);
  CHECK(e.basis()[1].frequency == doctest::Approx(2.0 * g));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-t_half, t_half);
  for (int i = 0; i < 100; ++i) {
    const double t = u(rng), tau = u(rng);
    const auto c = e.coefficients(tau);
    CHECK(c[0] == doctest::Approx(0.5));
    CHECK(c[1] == doctest::Approx(0.5 * std::cos(2.0 * g * tau)));
    CHECK(c[2] == doctest::Approx(0.5 * std::sin(2.0 * g * tau)));
    const double direct = std::pow(std::cos(g * (t - tau)), 2);
    CHECK(std::abs(e.reconstruct(t, tau) - direct) <= 1e-12);
  }
}

TEST_CASE("polynomial N=1 coefficients in raw monomials") {
  // Basis functions are (t/T)^k, so raw-t coefficients are c_k / T^k.
  const double t_half = 7.0;
  const auto e = polynomial_expansion(1, t_half);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-t_half, t_half);
  for (int i = 0; i < 20; ++i) {
    const double tau = u(rng);
    const auto c = e.coefficients(tau);
    CHECK(c[0] == doctest::Approx(1.0 - tau * tau / (t_half * t_half)));
    CHECK(c[1] / t_half == doctest::Approx(2.0 * tau / (t_half * t_half)));
    CHECK(c[2] / (t_half * t_half) == doctest::Approx(-1.0 / (t_half * t_half)));
  }
}

TEST_CASE("polynomial N=2 matches brute-force expansion") {
  const double t_half = 5.0;
  const auto e = polynomial_expansion(2, t_half);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-t_half, t_half);
  for (int i = 0; i < 100; ++i) {
    const double t = u(rng), tau = u(rng);
    const double d = (t - tau) / t_half;
    const double direct = (1.0 - d * d) * (1.0 - d * d);
    const double got = e.reconstruct(t, tau);
    CHECK(std::abs(got - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("shiftability identity for every variant up to N=40") {
  for (int n = 0; n <= 40; ++n) {
    CAPTURE(n);
    CHECK(worst_identity_ratio(raised_cosine_expansion(n, 255.0), 100 + n, 1000) <= 1e-12);
    CHECK(worst_identity_ratio(polynomial_expansion(n, 255.0), 200 + n, 1000) <= 1e-12);
    CHECK(worst_identity_ratio(raised_cosine_expansion(n, 255.0, 255.0 * 1.7), 300 + n, 1000) <= 1e-12);
    CHECK(worst_identity_ratio(polynomial_expansion(n, 8.0, 8.0 * 2.5), 400 + n, 1000) <= 1e-12);
  }
}

TEST_CASE("expansion rejects bad parameters") {
  CHECK_THROWS_AS(raised_cosine_expansion(-1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(polynomial_expansion(2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(raised_cosine_expansion(2, 1.0, -1.0), std::invalid_argument);
  const auto e = raised_cosine_expansion(2, 1.0);
  std::vector<double> wrong(5);
  CHECK_THROWS_AS(e.coefficients(0.0, wrong), std::invalid_argument);
}

TEST_CASE("expand() follows the kernel family") {
  CHECK(expand(raised_cosine(5, 2.0)).order() == 6);
  CHECK(expand(poly_window(5, 2.0)).order() == 11);
  CHECK(expand(poly_window(5, 2.0)).family() == ExpansionFamily::Polynomial);
}

TEST_CASE("truncation") {
  const auto full = raised_cosine_expansion(17, 255.0);

  SUBCASE("epsilon 0 is the identity") {
    const auto same = truncate_expansion(full, 0.0);
    CHECK(same.order() == full.order());
    CHECK_FALSE(same.truncated());
    CHECK(same.truncation_deviation() == 0.0);
  }
  SUBCASE("N=17, epsilon 0.005") {
    const auto t = truncate_expansion(full, 0.005);
    CHECK(t.order() == 14);
    CHECK(t.dropped_terms() == 4);
    CHECK(t.truncated());
    // The pairs at frequencies 15 and 17 are dropped: (34 + 2) / 2^17 at t = tau.
    CHECK(std::abs(t.truncation_deviation() - 0.000274658203125) <= 1e-12);
  }
  SUBCASE("epsilon near 1 keeps only the dominant weight") {
    const auto poly = truncate_expansion(polynomial_expansion(6, 255.0), 0.999);
    CHECK(poly.order() == 1);
    // A cos/sin pair shares its weight, so it survives or goes as a unit.
    const auto even = truncate_expansion(raised_cosine_expansion(16, 255.0), 0.999);
    REQUIRE(even.order() == 2);
    CHECK(even.basis()[0].frequency == even.basis()[1].frequency);
    CHECK(even.weights()[0] == doctest::Approx(2.0 * 11440.0 / 65536.0));
    CHECK(truncate_expansion(full, 0.999).order() == 2);
    CHECK(truncate_expansion(raised_cosine_expansion(2, 255.0), 0.999).order() == 3);
  }
  SUBCASE("truncated coefficients are not renormalized") {
    const auto t = truncate_expansion(full, 0.005);
    const auto c_full = full.coefficients(12.0);
    const auto c_cut = t.coefficients(12.0);
    CHECK(c_cut[0] == c_full[0]);
  }
  SUBCASE("epsilon outside [0, 1)") {
    CHECK_THROWS_AS(truncate_expansion(full, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(truncate_expansion(full, 1.0), std::invalid_argument);
  }
  SUBCASE("polynomial truncation keeps the identity of the retained terms") {
    const auto p = truncate_expansion(polynomial_expansion(6, 4.0), 0.01);
    CHECK(p.order() <= 13);
    CHECK(p.order() >= 1);
  }
}
