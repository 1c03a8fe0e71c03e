#include "shiftkern/moving_sum.hpp"

#include <algorithm>
#include <stdexcept>

#include "shiftkern/parallel.hpp"

namespace shiftkern {

namespace {

// out[c] = sum of in[c - radius .. c + radius] clipped to [0, n).
void sliding_row_sum(std::span<const double> in, std::span<double> out, int radius) {
  const int n = static_cast<int>(in.size());
  const int lead = std::min(radius, n - 1);
  double sum = 0.0;
  for (int c = 0; c <= lead; ++c) sum += in[c];
  out[0] = sum;
  for (int c = 1; c < n; ++c) {
    const int entering = c + radius;
    const int leaving = c - radius - 1;
    if (entering < n) sum += in[entering];
    if (leaving >= 0) sum -= in[leaving];
    out[c] = sum;
  }
}

// Column pass over whole rows: keeps one running sum per column and slides
// the window down, which stays contiguous in memory.
void sliding_column_sum(const ImageBuffer& in, ImageBuffer& out, int radius) {
  const int h = in.height();
  const int w = in.width();
  std::vector<double> sum(static_cast<std::size_t>(w), 0.0);
  const int lead = std::min(radius, h - 1);
  for (int r = 0; r <= lead; ++r) {
    auto src = in.row(r);
    for (int c = 0; c < w; ++c) sum[c] += src[c];
  }
  std::copy(sum.begin(), sum.end(), out.row(0).begin());
  for (int r = 1; r < h; ++r) {
    const int entering = r + radius;
    const int leaving = r - radius - 1;
    if (entering < h) {
      auto src = in.row(entering);
      for (int c = 0; c < w; ++c) sum[c] += src[c];
    }
    if (leaving >= 0) {
      auto src = in.row(leaving);
      for (int c = 0; c < w; ++c) sum[c] -= src[c];
    }
    std::copy(sum.begin(), sum.end(), out.row(r).begin());
  }
}

}  // namespace

ImageBuffer moving_sum(const ImageBuffer& input, int radius) {
  if (radius < 0) throw std::invalid_argument("moving_sum: radius must be >= 0");
  if (input.empty()) return {};
  if (radius == 0) return input;

  ImageBuffer horizontal(input.width(), input.height());
  for (int r = 0; r < input.height(); ++r)
    sliding_row_sum(input.row(r), horizontal.row(r), radius);

  ImageBuffer result(input.width(), input.height());
  sliding_column_sum(horizontal, result, radius);
  return result;
}

std::vector<ImageBuffer> moving_sum_stack(std::span<const ImageBuffer> stack,
                                          int radius, int threads) {
  if (radius < 0) throw std::invalid_argument("moving_sum: radius must be >= 0");
  std::vector<ImageBuffer> out(stack.size());
  parallel_for(stack.size(), threads,
               [&](std::size_t i) { out[i] = moving_sum(stack[i], radius); });
  return out;
}

}  // namespace shiftkern
