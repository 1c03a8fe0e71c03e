#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace shiftkern {

/// Row-major grid of double-precision samples. Pixel (row, col) lives at
/// data()[row * width() + col].
class ImageBuffer {
public:
  ImageBuffer() = default;
  ImageBuffer(int width, int height, double fill = 0.0);
  ImageBuffer(int width, int height, std::vector<double> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(int row, int col) noexcept {
    return data_[static_cast<std::size_t>(row) * width_ + col];
  }
  double operator()(int row, int col) const noexcept {
    return data_[static_cast<std::size_t>(row) * width_ + col];
  }

  std::span<double> row(int r) noexcept {
    return {data_.data() + static_cast<std::size_t>(r) * width_,
            static_cast<std::size_t>(width_)};
  }
  std::span<const double> row(int r) const noexcept {
    return {data_.data() + static_cast<std::size_t>(r) * width_,
            static_cast<std::size_t>(width_)};
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  bool all_finite() const noexcept;
  double min_value() const noexcept;
  double max_value() const noexcept;

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

bool same_shape(const ImageBuffer& a, const ImageBuffer& b) noexcept;

double max_abs_difference(const ImageBuffer& a, const ImageBuffer& b);

/// max over pixels of |a - b| / max(|a|, |b|); pixels where both are zero count as 0.
double max_relative_deviation(const ImageBuffer& a, const ImageBuffer& b);

}  // namespace shiftkern
