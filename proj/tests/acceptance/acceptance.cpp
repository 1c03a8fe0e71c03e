// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "bench.hpp"
#include "shiftkern/shiftkern.hpp"
#include "test_support.hpp"

using namespace shiftkern;
using shiftkern::testing::random_image;
using shiftkern::testing::random_integer_image;

namespace {

constexpr double kAc1Tolerance = 1e-8;
constexpr double kAc1TimeLimitS = 30.0;
constexpr double kAc2Tolerance = 1e-8;
constexpr double kAc5Lower = -0.02;
constexpr double kAc7Tolerance = 1e-12;
constexpr double kAc8Tolerance = 1e-10;
constexpr double kAc9Tolerance = 1e-6;

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
  std::printf("%s %s %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void ac1() {
  const auto start = std::chrono::steady_clock::now();
  BilateralConfig cfg;
  cfg.radius = 5;
  const auto fit = fit_gaussian_raised_cosine(40.0, 255.0, 0.0);
  cfg.range = fit.expansion;
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto f = random_image(64, 64, 1000 + i);
    worst = std::max(worst, max_relative_deviation(bilateral_filter_shiftable(f, cfg), bilateral_filter_direct(f, cfg)));
  }
  const double elapsed = seconds_since(start);
  report("AC1", fit.order == 17 && worst <= kAc1Tolerance && elapsed < kAc1TimeLimitS,
         fmt("bilateral shiftable vs direct, 10 images 64x64, box T=5, range N=%d: max_rel_dev=%.3e (tol %.0e), %.2fs (limit %.0fs)",
             fit.order, worst, kAc1Tolerance, elapsed, kAc1TimeLimitS));
}

void ac2() {
  const auto k = raised_cosine(4, 4);
  const KernelSpec spec = separable(k, k);
  const auto e = ShiftableExpansion2D::from_spec(spec);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto f = random_image(32, 32, 2000 + i);
    worst = std::max(worst, max_relative_deviation(spatial_filter_shiftable(f, e, 4), spatial_filter_direct(f, spec, 4)));
  }
  report("AC2", worst <= kAc2Tolerance,
         fmt("spatial shiftable vs direct, 10 images 32x32, separable N=4 T=4: max_rel_dev=%.3e (tol %.0e)", worst,
             kAc2Tolerance));
}

void ac3() {
  tools::BenchConfig config;
  config.size = 512;
  config.radii = {2, 4, 8, 16};
  // Shared hosts are noisy; nine interleaved runs steady the median.
  config.runs = 9;
  config.direct = true;
  config.threads = 1;
  const auto r = tools::run_bench(config);
  std::string times;
  for (double t : r.shiftable_ms) times += fmt("%.1f ", t);
  const bool ok = r.constant_time_ok && r.direct_growth_ok.value_or(false);
  report("AC3", ok,
         fmt("512x512, T={2,4,8,16}: shiftable median ms [%s] spread=%.3f (max %.1f); direct growth T=16/T=2=%.1fx (min %.0fx)",
             times.substr(0, times.size() - 1).c_str(), r.shiftable_spread, tools::kMaxShiftableSpread,
             r.direct_growth.value_or(0.0), tools::kMinDirectGrowth));
}

void ac4() {
  auto monotone = [](bool poly, int lo, int hi, double& first, double& last) {
    double prev = INFINITY;
    bool ok = true;
    for (int n = lo; n <= hi; ++n) {
      FitOptions o;
      o.forced_order = n;
      const double e = poly ? fit_gaussian_polynomial(40.0, 255.0, 0.0, o).sup_error
                            : fit_gaussian_raised_cosine(40.0, 255.0, 0.0, o).sup_error;
      if (n == lo) first = e;
      last = e;
      ok = ok && e <= prev;
      prev = e;
    }
    return ok;
  };
  double c0, c1, p0, p1;
  const bool cos_ok = monotone(false, 17, 40, c0, c1);
  const bool poly_ok = monotone(true, 21, 60, p0, p1);
  report("AC4", cos_ok && poly_ok,
         fmt("gaussian fit sigma=40 T=255 sup error nonincreasing: cosine N=17..40 %.6f -> %.6f, poly N=21..60 %.6f -> %.6f",
             c0, c1, p0, p1));
}

void ac5() {
  const double v = corner_overshoot(four_direction_kernel(1.0));
  report("AC5", v >= kAc5Lower && v < 0.0,
         fmt("four-direction kernel min/peak on 257x257 grid = %.6f (required in [%.2f, 0))", v, kAc5Lower));
}

void ac6() {
  const double sep = isotropy_metric(separable(raised_cosine(2, 1.0), raised_cosine(2, 1.0)));
  const double dir = isotropy_metric(directional_kernel(4, 1.0));
  const double four = isotropy_metric(four_direction_kernel(1.0));
  report("AC6", dir < sep && four < sep,
         fmt("isotropy: directional N=4 %.6f, four-direction %.6f < separable q2 x q2 %.6f", dir, four, sep));
}

void ac7() {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  bool counts = true;
  std::size_t variants = 0;
  auto probe = [&](const ShiftableExpansion1D& e) {
    ++variants;
    std::uniform_real_distribution<double> u(-e.halfwidth(), e.halfwidth());
    std::vector<double> c(e.order());
    for (int i = 0; i < 1000; ++i) {
      const double t = u(rng), tau = u(rng);
      e.coefficients(tau, c);
      double mass = 0.0;
      for (double v : c) mass += std::abs(v);
      worst = std::max(worst, std::abs(e.profile(t - tau) - e.reconstruct(t, tau)) / mass);
    }
  };
  for (int n = 0; n <= 40; ++n) {
    const auto rc = raised_cosine_expansion(n, 255.0);
    const auto pw = polynomial_expansion(n, 255.0);
    counts = counts && rc.order() == static_cast<std::size_t>(n + 1) && pw.order() == static_cast<std::size_t>(2 * n + 1);
    probe(rc);
    probe(pw);
    if (n >= 1) {
      FitOptions o;
      o.forced_order = n;
      probe(fit_gaussian_raised_cosine(40.0, 255.0, 0.0, o).expansion);
      probe(fit_gaussian_polynomial(40.0, 255.0, 0.0, o).expansion);
    }
  }
  report("AC7", counts && worst <= kAc7Tolerance,
         fmt("shiftability identity, %zu expansions N<=40 x 1000 pairs: max |err|/sum|c| = %.3e (tol %.0e); term counts N+1 / 2N+1 %s",
             variants, worst, kAc7Tolerance, counts ? "exact" : "WRONG"));
}

void ac8() {
  const auto f = random_image(40, 36, 8);
  NlmConfig nlm;
  nlm.radius = 3;
  nlm.h = 35.0;
  BilateralConfig box;
  box.radius = 3;
  box.range = nlm_dimension_expansions(nlm)[0];
  const double d1 = max_relative_deviation(nlm_shiftable_experimental(f, nlm).image, bilateral_filter_shiftable(f, box));

  BilateralConfig flat;
  flat.radius = 3;
  flat.range = raised_cosine_expansion(0, 255.0);
  flat.spatial = separable(raised_cosine(4, 3), raised_cosine(4, 3));
  const double d2 = max_relative_deviation(bilateral_filter_shiftable(f, flat), spatial_filter_direct(f, *flat.spatial, 3));

  const auto box_kernel = ShiftableExpansion2D::from_spec(separable(raised_cosine(0, 3), raised_cosine(0, 3)));
  const double d3 = max_relative_deviation(spatial_filter_shiftable(f, box_kernel, 3), box_average(f, 3));

  bool exact = true;
  for (int t : {1, 2, 5, 17}) {
    const auto g = random_integer_image(33, 29, 80 + t);
    const auto s = moving_sum(g, t);
    for (int r = 0; r < g.height(); ++r)
      for (int c = 0; c < g.width(); ++c) {
        double sum = 0.0;
        for (int rr = std::max(0, r - t); rr <= std::min(g.height() - 1, r + t); ++rr)
          for (int cc = std::max(0, c - t); cc <= std::min(g.width() - 1, c + t); ++cc) sum += g(rr, cc);
        exact = exact && s(r, c) == sum;
      }
  }
  const double worst = std::max({d1, d2, d3});
  report("AC8", worst <= kAc8Tolerance && exact,
         fmt("degeneration: nlm(p=1)~bilateral(box) %.2e, bilateral(range N=0)~spatial %.2e, spatial(N=0)~moving average %.2e (tol %.0e); integer moving sums %s",
             d1, d2, d3, kAc8Tolerance, exact ? "exact" : "INEXACT"));
}

void ac9() {
  const auto f = random_image(32, 32, 9);
  NlmConfig cfg;
  cfg.offsets = {{0, 0}, {1, 0}};
  cfg.per_dim_order = 3;
  cfg.radius = 8;
  cfg.h = 40.0;
  const auto fast = nlm_shiftable_experimental(f, cfg);
  const double d = max_relative_deviation(fast.image, nlm_direct(f, cfg));
  report("AC9", d <= kAc9Tolerance,
         fmt("nlm p=2 n=3 T=8 32x32 (total order %zu): max_rel_dev=%.3e (tol %.0e); approx-vs-exact kernel gap %.4f (informational)",
             fast.total_order, d, kAc9Tolerance, fast.kernel_gap));
}

}  // namespace

int main() {
  ac1();
  ac2();
  ac3();
  ac4();
  ac5();
  ac6();
  ac7();
  ac8();
  ac9();
  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
