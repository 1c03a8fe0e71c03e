#pragma once

#include "shiftkern/expansion.hpp"
#include "shiftkern/expansion_2d.hpp"
#include "shiftkern/filters.hpp"
#include "shiftkern/gaussian_fit.hpp"
#include "shiftkern/image_buffer.hpp"
#include "shiftkern/image_io.hpp"
#include "shiftkern/kernel.hpp"
#include "shiftkern/kernel_metrics.hpp"
#include "shiftkern/moving_sum.hpp"
#include "shiftkern/nlm.hpp"
#include "shiftkern/parallel.hpp"
