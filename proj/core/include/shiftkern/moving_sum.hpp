#pragma once

#include <span>
#include <vector>

#include "shiftkern/image_buffer.hpp"

namespace shiftkern {

/// Samples outside the image contribute zero; windows are clipped at the
/// borders. This is the only policy, and every filter applies it to both
/// numerator and denominator so clipping cancels in the ratio.
enum class BoundaryPolicy { ZeroOutside };

/// Unnormalized sum of `input` over the (2*radius+1)^2 window centred at
/// every pixel. Two separable sliding-window passes (rows, then columns),
/// each restarted per line, so the per-pixel cost does not depend on radius.
/// Throws std::invalid_argument for a negative radius.
ImageBuffer moving_sum(const ImageBuffer& input, int radius);

/// moving_sum applied to each image; output[i] corresponds to stack[i].
/// Images are processed on up to `threads` workers; results are bit-identical
/// to the single-image path regardless of worker count.
std::vector<ImageBuffer> moving_sum_stack(std::span<const ImageBuffer> stack,
                                          int radius, int threads = 1);

}  // namespace shiftkern
