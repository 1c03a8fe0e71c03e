#include <doctest.h>

#include <algorithm>
#include <chrono>

#include "shiftkern/moving_sum.hpp"
#include "test_support.hpp"

using namespace shiftkern;
using shiftkern::testing::random_image;
using shiftkern::testing::random_integer_image;

namespace {

ImageBuffer brute_force(const ImageBuffer& f, int t) {
  ImageBuffer out(f.width(), f.height());
  for (int r = 0; r < f.height(); ++r)
    for (int c = 0; c < f.width(); ++c) {
      double s = 0.0;
      for (int rr = std::max(0, r - t); rr <= std::min(f.height() - 1, r + t); ++rr)
        for (int cc = std::max(0, c - t); cc <= std::min(f.width() - 1, c + t); ++cc) s += f(rr, cc);
      out(r, c) = s;
    }
  return out;
}

}  // namespace

TEST_CASE("3x3 ones with clipped windows") {
  const auto s = moving_sum(ImageBuffer(3, 3, 1.0), 1);
  CHECK(s(1, 1) == 9.0);
  CHECK(s(0, 1) == 6.0);
  CHECK(s(1, 0) == 6.0);
  CHECK(s(0, 0) == 4.0);
  CHECK(s(2, 2) == 4.0);
}

TEST_CASE("radius 0 is the identity") {
  const auto f = random_image(9, 5, 1);
  CHECK(moving_sum(f, 0) == f);
}

TEST_CASE("matches brute force on random images") {
  const auto f = random_image(64, 64, 2);
  for (int t : {1, 3, 7}) CHECK(max_abs_difference(moving_sum(f, t), brute_force(f, t)) <= 1e-10);
}

TEST_CASE("exact on integer images") {
  for (int t : {1, 2, 5, 40}) {
    const auto f = random_integer_image(37, 23, 3 + t);
    CHECK(moving_sum(f, t) == brute_force(f, t));
  }
}

TEST_CASE("windows larger than the image") {
  const auto f = random_integer_image(4, 3, 9);
  const auto s = moving_sum(f, 100);
  double total = 0.0;
  for (double v : f.data()) total += v;
  for (double v : s.data()) CHECK(v == total);
}

TEST_CASE("negative radius") { CHECK_THROWS_AS(moving_sum(ImageBuffer(2, 2), -1), std::invalid_argument); }

TEST_CASE("stack") {
  SUBCASE("constant image") {
    std::vector<ImageBuffer> one{ImageBuffer(5, 5, 2.5)};
    CHECK(moving_sum_stack(one, 1)[0](2, 2) == 9 * 2.5);
  }
  SUBCASE("45 images keep order and match the single-image path bit for bit") {
    std::vector<ImageBuffer> stack;
    for (int i = 0; i < 45; ++i) stack.push_back(random_image(128, 128, 100 + i));
    for (int threads : {1, 3}) {
      const auto out = moving_sum_stack(stack, 5, threads);
      REQUIRE(out.size() == 45);
      for (int i = 0; i < 45; ++i) CHECK(out[i] == moving_sum(stack[i], 5));
    }
  }
}

TEST_CASE("cost does not grow with the radius") {
  const auto f = random_image(256, 256, 5);
  auto best_ms = [&](int t) {
    double best = 1e300;
    for (int i = 0; i < 15; ++i) {
      const auto a = std::chrono::steady_clock::now();
      const auto s = moving_sum(f, t);
      const auto b = std::chrono::steady_clock::now();
      CHECK(s.size() == f.size());
      best = std::min(best, std::chrono::duration<double, std::milli>(b - a).count());
    }
    return best;
  };
  const double small = best_ms(2), large = best_ms(64);
  CHECK(large / small <= 1.5);
}
