#include "shiftkern/image_buffer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shiftkern {

namespace {

std::size_t checked_area(int width, int height) {
  if (width <= 0 || height <= 0)
    throw std::invalid_argument("image dimensions must be positive");
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

void require_same_shape(const ImageBuffer& a, const ImageBuffer& b) {
  if (!same_shape(a, b))
    throw std::invalid_argument("images differ in shape");
}

}  // namespace

ImageBuffer::ImageBuffer(int width, int height, double fill)
    : width_(width), height_(height), data_(checked_area(width, height), fill) {}

ImageBuffer::ImageBuffer(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (data_.size() != checked_area(width, height))
    throw std::invalid_argument("sample count does not match width*height");
}

bool ImageBuffer::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

double ImageBuffer::min_value() const noexcept {
  return data_.empty() ? 0.0 : *std::min_element(data_.begin(), data_.end());
}

double ImageBuffer::max_value() const noexcept {
  return data_.empty() ? 0.0 : *std::max_element(data_.begin(), data_.end());
}

bool same_shape(const ImageBuffer& a, const ImageBuffer& b) noexcept {
  return a.width() == b.width() && a.height() == b.height();
}

double max_abs_difference(const ImageBuffer& a, const ImageBuffer& b) {
  require_same_shape(a, b);
  double worst = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i)
    worst = std::max(worst, std::abs(da[i] - db[i]));
  return worst;
}

double max_relative_deviation(const ImageBuffer& a, const ImageBuffer& b) {
  require_same_shape(a, b);
  double worst = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double scale = std::max(std::abs(da[i]), std::abs(db[i]));
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(da[i] - db[i]) / scale);
  }
  return worst;
}

}  // namespace shiftkern
