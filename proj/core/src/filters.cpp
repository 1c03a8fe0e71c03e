#include "shiftkern/filters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shiftkern/moving_sum.hpp"
#include "shiftkern/parallel.hpp"

namespace shiftkern {

namespace {

void require_input(const ImageBuffer& f, int radius) {
  if (f.empty()) throw std::invalid_argument("filter input is empty");
  if (!f.all_finite()) throw std::invalid_argument("filter input has non-finite samples");
  if (radius < 0) throw std::invalid_argument("filter radius must be >= 0");
}

void require_window_match(double halfwidth, int radius) {
  if (std::abs(halfwidth - radius) > 1e-9 * std::max(1, radius))
    throw std::invalid_argument("spatial kernel half-width must equal the window radius");
}

void require_range_cover(const ImageBuffer& f, const ShiftableExpansion1D& range) {
  const double span = f.max_value() - f.min_value();
  if (span > range.halfwidth() * (1.0 + 1e-12))
    throw std::invalid_argument("range kernel half-width is smaller than the input intensity span");
}

// (2T+1)^2 table of spatial weights indexed [(dr + T) * (2T+1) + (dc + T)].
std::vector<double> spatial_table(const std::optional<KernelSpec>& kernel, int radius) {
  const int side = 2 * radius + 1;
  std::vector<double> table(static_cast<std::size_t>(side) * side, 1.0);
  if (!kernel) return table;
  for (int dr = -radius; dr <= radius; ++dr)
    for (int dc = -radius; dc <= radius; ++dc)
      table[static_cast<std::size_t>(dr + radius) * side + (dc + radius)] =
          evaluate_kernel(*kernel, dc, dr);
  return table;
}

// Per-term spatial basis and coefficient images, with per-axis tables for
// tensor expansions.
class SpatialPlan {
public:
  SpatialPlan(const ShiftableExpansion2D& kernel, int width, int height, const FilterOptions& o)
      : kernel_(kernel), width_(width), height_(height), ox_(o.origin_x), oy_(o.origin_y) {
    if (!kernel.is_tensor()) return;
    axis_tables(kernel.x_factor(), width, ox_, bx_, cx_);
    axis_tables(kernel.y_factor(), height, oy_, by_, cy_);
  }

  std::size_t terms() const { return kernel_.order(); }

  void basis_image(std::size_t m, ImageBuffer& out) const {
    if (kernel_.is_tensor()) {
      const std::size_t ny = kernel_.y_factor().order();
      const auto& bx = bx_[m / ny];
      const auto& by = by_[m % ny];
      for (int r = 0; r < height_; ++r) {
        auto row = out.row(r);
        for (int c = 0; c < width_; ++c) row[c] = bx[c] * by[r];
      }
      return;
    }
    const auto& w = kernel_.waves()[m];
    for (int r = 0; r < height_; ++r) {
      auto row = out.row(r);
      for (int c = 0; c < width_; ++c) {
        const double phase = w.wx * (c - ox_) + w.wy * (r - oy_);
        row[c] = w.sine ? std::sin(phase) : std::cos(phase);
      }
    }
  }

  void coefficient_image(std::size_t m, ImageBuffer& out) const {
    if (kernel_.is_tensor()) {
      const std::size_t ny = kernel_.y_factor().order();
      const auto& cx = cx_[m / ny];
      const auto& cy = cy_[m % ny];
      for (int r = 0; r < height_; ++r) {
        auto row = out.row(r);
        for (int c = 0; c < width_; ++c) row[c] = cx[c] * cy[r];
      }
      return;
    }
    basis_image(m, out);
    const double weight = kernel_.waves()[m].weight;
    for (double& v : out.data()) v *= weight;
  }

private:
  static void axis_tables(const ShiftableExpansion1D& e, int length, double origin,
                          std::vector<std::vector<double>>& basis,
                          std::vector<std::vector<double>>& coeff) {
    basis.assign(e.order(), std::vector<double>(static_cast<std::size_t>(length)));
    coeff.assign(e.order(), std::vector<double>(static_cast<std::size_t>(length)));
    std::vector<double> c(e.order());
    for (int i = 0; i < length; ++i) {
      const double pos = i - origin;
      e.coefficients(pos, c);
      for (std::size_t n = 0; n < e.order(); ++n) {
        basis[n][i] = e.basis_value(n, pos);
        coeff[n][i] = c[n];
      }
    }
  }

  const ShiftableExpansion2D& kernel_;
  int width_;
  int height_;
  double ox_;
  double oy_;
  std::vector<std::vector<double>> bx_, by_, cx_, cy_;
};

// Range basis images phi_n(f(x)), coefficient images d_n(f(x)) and the
// per-pixel sum_n |d_n(f(x))|.
struct RangePlan {
  std::vector<ImageBuffer> basis;
  std::vector<ImageBuffer> coeff;
  ImageBuffer abs_sum;

  RangePlan(const ImageBuffer& f, const ShiftableExpansion1D& range) {
    const std::size_t n_terms = range.order();
    basis.assign(n_terms, ImageBuffer(f.width(), f.height()));
    coeff.assign(n_terms, ImageBuffer(f.width(), f.height()));
    abs_sum = ImageBuffer(f.width(), f.height());
    std::vector<double> d(n_terms);
    const auto src = f.data();
    for (std::size_t i = 0; i < src.size(); ++i) {
      range.coefficients(src[i], d);
      double total = 0.0;
      for (std::size_t n = 0; n < n_terms; ++n) {
        basis[n].data()[i] = range.basis_value(n, src[i]);
        coeff[n].data()[i] = d[n];
        total += std::abs(d[n]);
      }
      abs_sum.data()[i] = total;
    }
  }
};

// Final ratio with the degenerate-window fallback.
ImageBuffer finish_ratio(const ImageBuffer& f, const ImageBuffer& num, const ImageBuffer& den,
                         const ImageBuffer& abs_coeff, double eta_floor) {
  ImageBuffer out(f.width(), f.height());
  auto o = out.data();
  const auto n = num.data();
  const auto d = den.data();
  const auto a = abs_coeff.data();
  const auto src = f.data();
  for (std::size_t i = 0; i < o.size(); ++i)
    o[i] = std::abs(d[i]) < eta_floor * a[i] || d[i] == 0.0 ? src[i] : n[i] / d[i];
  return out;
}

// Monomial bases lose precision roughly like (|pos| / T)^(2N), so
// tensor expansions with a polynomial factor are evaluated tile by tile with
// a local origin. Each tile is padded by the radius, which keeps its moving
// sums exact.
bool needs_local_origin(const ShiftableExpansion2D& k) {
  return k.is_tensor() && (k.x_factor().family() == ExpansionFamily::Polynomial ||
                           k.y_factor().family() == ExpansionFamily::Polynomial);
}

template <class Run>
ImageBuffer run_tiled(const ImageBuffer& f, int radius, FilterOptions options, Run&& run) {
  const int tile = std::max(2 * radius, 2);
  const int w = f.width(), h = f.height();
  ImageBuffer out(w, h);
  for (int r0 = 0; r0 < h; r0 += tile) {
    for (int c0 = 0; c0 < w; c0 += tile) {
      const int r1 = std::min(r0 + tile, h), c1 = std::min(c0 + tile, w);
      const int pr0 = std::max(0, r0 - radius), pr1 = std::min(h, r1 + radius);
      const int pc0 = std::max(0, c0 - radius), pc1 = std::min(w, c1 + radius);
      ImageBuffer sub(pc1 - pc0, pr1 - pr0);
      for (int r = pr0; r < pr1; ++r)
        for (int c = pc0; c < pc1; ++c) sub(r - pr0, c - pc0) = f(r, c);
      options.origin_x = 0.5 * (c0 + c1 - 1) - pc0;
      options.origin_y = 0.5 * (r0 + r1 - 1) - pr0;
      const ImageBuffer part = run(sub, options);
      for (int r = r0; r < r1; ++r)
        for (int c = c0; c < c1; ++c) out(r, c) = part(r - pr0, c - pc0);
    }
  }
  return out;
}

}  // namespace

ImageBuffer box_average(const ImageBuffer& f, int radius) {
  require_input(f, radius);
  const ImageBuffer sums = moving_sum(f, radius);
  const ImageBuffer counts = moving_sum(ImageBuffer(f.width(), f.height(), 1.0), radius);
  ImageBuffer out(f.width(), f.height());
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] = sums.data()[i] / counts.data()[i];
  return out;
}

ImageBuffer spatial_filter_direct(const ImageBuffer& f, const KernelSpec& kernel, int radius,
                                  double eta_floor) {
  require_input(f, radius);
  if (!is_two_dimensional(kernel)) throw std::invalid_argument("spatial filter needs a 2-D kernel");
  const auto table = spatial_table(kernel, radius);
  const int side = 2 * radius + 1;
  ImageBuffer out(f.width(), f.height());
  for (int r = 0; r < f.height(); ++r) {
    for (int c = 0; c < f.width(); ++c) {
      double num = 0.0, den = 0.0, mass = 0.0;
      for (int dr = -radius; dr <= radius; ++dr) {
        const int rr = r + dr;
        if (rr < 0 || rr >= f.height()) continue;
        const double* weights = &table[static_cast<std::size_t>(dr + radius) * side + radius];
        for (int dc = -radius; dc <= radius; ++dc) {
          const int cc = c + dc;
          if (cc < 0 || cc >= f.width()) continue;
          const double w = weights[dc];
          num += w * f(rr, cc);
          den += w;
          mass += std::abs(w);
        }
      }
      out(r, c) = (std::abs(den) < eta_floor * mass || den == 0.0) ? f(r, c) : num / den;
    }
  }
  return out;
}

namespace {

ImageBuffer spatial_shiftable_impl(const ImageBuffer& f, const ShiftableExpansion2D& kernel, int radius,
                                   const FilterOptions& options) {
  const int threads = resolve_thread_count(options.threads);
  const int w = f.width(), h = f.height();
  const SpatialPlan plan(kernel, w, h, options);

  ImageBuffer num(w, h), den(w, h), abs_coeff(w, h);
  ImageBuffer coeff(w, h);
  std::vector<ImageBuffer> stack(2, ImageBuffer(w, h));
  for (std::size_t m = 0; m < plan.terms(); ++m) {
    plan.basis_image(m, stack[1]);
    const auto b = stack[1].data();
    auto g = stack[0].data();
    const auto src = f.data();
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = src[i] * b[i];
    const auto sums = moving_sum_stack(stack, radius, threads);
    plan.coefficient_image(m, coeff);
    const auto cm = coeff.data();
    const auto s_num = sums[0].data();
    const auto s_den = sums[1].data();
    auto pn = num.data();
    auto pd = den.data();
    auto pa = abs_coeff.data();
    for (std::size_t i = 0; i < pn.size(); ++i) {
      pn[i] += cm[i] * s_num[i];
      pd[i] += cm[i] * s_den[i];
      pa[i] += std::abs(cm[i]);
    }
  }
  return finish_ratio(f, num, den, abs_coeff, options.eta_floor);
}

}  // namespace

ImageBuffer spatial_filter_shiftable(const ImageBuffer& f, const ShiftableExpansion2D& kernel,
                                     int radius, const FilterOptions& options) {
  require_input(f, radius);
  if (!kernel.is_box()) require_window_match(kernel.halfwidth(), radius);
  if (!needs_local_origin(kernel)) return spatial_shiftable_impl(f, kernel, radius, options);
  return run_tiled(f, radius, options, [&](const ImageBuffer& sub, const FilterOptions& o) {
    return spatial_shiftable_impl(sub, kernel, radius, o);
  });
}

ShiftableExpansion2D spatial_expansion(const BilateralConfig& config) {
  if (!config.spatial) return ShiftableExpansion2D::box(std::max(config.radius, 1));
  return ShiftableExpansion2D::from_spec(*config.spatial);
}

namespace {

void validate_bilateral(const ImageBuffer& f, const BilateralConfig& config) {
  require_input(f, config.radius);
  if (config.spatial) {
    if (!is_two_dimensional(*config.spatial))
      throw std::invalid_argument("spatial kernel must be 2-D");
    require_window_match(kernel_halfwidth(*config.spatial), config.radius);
  }
  require_range_cover(f, config.range);
}

void fill_pair(const ImageBuffer& f, const ImageBuffer& spatial_basis, const ImageBuffer& range_basis,
               ImageBuffer& numerator, ImageBuffer& denominator) {
  const auto src = f.data();
  const auto sb = spatial_basis.data();
  const auto rb = range_basis.data();
  auto g = numerator.data();
  auto hh = denominator.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    hh[i] = sb[i] * rb[i];
    g[i] = hh[i] * src[i];
  }
}

}  // namespace

BasisImageStack build_basis_stack(const ImageBuffer& f, const BilateralConfig& config) {
  validate_bilateral(f, config);
  const int w = f.width(), h = f.height();
  const auto spatial = spatial_expansion(config);
  const SpatialPlan plan(spatial, w, h, config.options);
  const RangePlan range(f, config.range);

  BasisImageStack stack;
  stack.spatial_terms = plan.terms();
  stack.range_terms = config.range.order();
  ImageBuffer sb(w, h), sc(w, h);
  for (std::size_t m = 0; m < plan.terms(); ++m) {
    plan.basis_image(m, sb);
    plan.coefficient_image(m, sc);
    for (std::size_t n = 0; n < stack.range_terms; ++n) {
      ImageBuffer a(w, h), g(w, h), hh(w, h);
      for (std::size_t i = 0; i < a.size(); ++i) a.data()[i] = sc.data()[i] * range.coeff[n].data()[i];
      fill_pair(f, sb, range.basis[n], g, hh);
      stack.coefficient.push_back(std::move(a));
      stack.numerator.push_back(std::move(g));
      stack.denominator.push_back(std::move(hh));
    }
  }
  return stack;
}

ImageBuffer bilateral_filter_direct(const ImageBuffer& f, const BilateralConfig& config) {
  validate_bilateral(f, config);
  const int radius = config.radius;
  const int side = 2 * radius + 1;
  const auto table = spatial_table(config.spatial, radius);
  const auto& range = config.range;
  const bool closed_form = !range.truncated();
  const Kernel1D range_kernel = range.generating_kernel();
  const int threads = resolve_thread_count(config.options.threads);

  ImageBuffer out(f.width(), f.height());
  parallel_for(static_cast<std::size_t>(f.height()), threads, [&](std::size_t row) {
    const int r = static_cast<int>(row);
    for (int c = 0; c < f.width(); ++c) {
      const double centre = f(r, c);
      double num = 0.0, den = 0.0, mass = 0.0;
      for (int dr = -radius; dr <= radius; ++dr) {
        const int rr = r + dr;
        if (rr < 0 || rr >= f.height()) continue;
        const double* weights = &table[static_cast<std::size_t>(dr + radius) * side + radius];
        for (int dc = -radius; dc <= radius; ++dc) {
          const int cc = c + dc;
          if (cc < 0 || cc >= f.width()) continue;
          const double v = f(rr, cc);
          const double rk =
              closed_form ? kernel_profile(range_kernel, v - centre) : range.kernel_at(v, centre);
          const double wgt = weights[dc] * rk;
          num += wgt * v;
          den += wgt;
          mass += std::abs(wgt);
        }
      }
      out(r, c) = (std::abs(den) < config.options.eta_floor * mass || den == 0.0) ? centre
                                                                                 : num / den;
    }
  });
  return out;
}

namespace {

ImageBuffer bilateral_shiftable_impl(const ImageBuffer& f, const BilateralConfig& config,
                                     const ShiftableExpansion2D& spatial) {
  const int w = f.width(), h = f.height();
  const int threads = resolve_thread_count(config.options.threads);
  const SpatialPlan plan(spatial, w, h, config.options);
  const RangePlan range(f, config.range);
  const std::size_t n_terms = config.range.order();
  const std::size_t batch = std::max<std::size_t>(4, 2 * static_cast<std::size_t>(threads));

  ImageBuffer num(w, h), den(w, h), spatial_abs(w, h);
  ImageBuffer sb(w, h), sc(w, h);
  // stack[2k] = g, stack[2k+1] = h for the k-th pair of the current batch.
  std::vector<ImageBuffer> stack(2 * std::min(batch, n_terms), ImageBuffer(w, h));

  for (std::size_t m = 0; m < plan.terms(); ++m) {
    plan.basis_image(m, sb);
    plan.coefficient_image(m, sc);
    for (std::size_t i = 0; i < sc.size(); ++i) spatial_abs.data()[i] += std::abs(sc.data()[i]);

    for (std::size_t first = 0; first < n_terms; first += batch) {
      const std::size_t count = std::min(batch, n_terms - first);
      parallel_for(count, threads, [&](std::size_t k) {
        fill_pair(f, sb, range.basis[first + k], stack[2 * k], stack[2 * k + 1]);
      });
      const auto sums =
          moving_sum_stack(std::span<const ImageBuffer>(stack.data(), 2 * count), config.radius, threads);

      parallel_for(static_cast<std::size_t>(h), threads, [&](std::size_t row) {
        const std::size_t begin = row * static_cast<std::size_t>(w);
        const std::size_t end = begin + static_cast<std::size_t>(w);
        auto pn = num.data();
        auto pd = den.data();
        const auto cm = sc.data();
        for (std::size_t k = 0; k < count; ++k) {
          const auto dn = range.coeff[first + k].data();
          const auto s_num = sums[2 * k].data();
          const auto s_den = sums[2 * k + 1].data();
          for (std::size_t i = begin; i < end; ++i) {
            const double a = cm[i] * dn[i];
            pn[i] += a * s_num[i];
            pd[i] += a * s_den[i];
          }
        }
      });
    }
  }

  ImageBuffer abs_coeff(w, h);
  for (std::size_t i = 0; i < abs_coeff.size(); ++i)
    abs_coeff.data()[i] = spatial_abs.data()[i] * range.abs_sum.data()[i];
  return finish_ratio(f, num, den, abs_coeff, config.options.eta_floor);
}

}  // namespace

ImageBuffer bilateral_filter_shiftable(const ImageBuffer& f, const BilateralConfig& config) {
  validate_bilateral(f, config);
  const auto spatial = spatial_expansion(config);
  if (!needs_local_origin(spatial)) return bilateral_shiftable_impl(f, config, spatial);
  return run_tiled(f, config.radius, config.options, [&](const ImageBuffer& sub, const FilterOptions& o) {
    BilateralConfig local = config;
    local.options = o;
    return bilateral_shiftable_impl(sub, local, spatial);
  });
}

}  // namespace shiftkern
