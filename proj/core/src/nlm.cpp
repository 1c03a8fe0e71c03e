#include "shiftkern/nlm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "shiftkern/gaussian_fit.hpp"
#include "shiftkern/moving_sum.hpp"
#include "shiftkern/parallel.hpp"

namespace shiftkern {

namespace {

std::vector<double> resolved_weights(const NlmConfig& config) {
  if (config.patch_weights.empty()) return gaussian_patch_weights(config.offsets, config.sigma_patch);
  return config.patch_weights;
}

void validate(const NlmConfig& config) {
  const std::size_t p = config.offsets.size();
  if (p == 0 || p > kMaxNlmPatchSize) throw std::invalid_argument("NLM patch size must lie in [1, 4]");
  if (config.offsets.front() != PixelOffset{0, 0})
    throw std::invalid_argument("first NLM offset must be (0, 0)");
  if (config.per_dim_order < 1 || config.per_dim_order > kMaxNlmPerDimOrder)
    throw std::invalid_argument("NLM per-dimension order must lie in [1, 5]");
  if (!(config.h > 0.0)) throw std::invalid_argument("NLM smoothing parameter h must be positive");
  if (config.radius < 0) throw std::invalid_argument("NLM radius must be >= 0");
  if (!config.patch_weights.empty()) {
    if (config.patch_weights.size() != p)
      throw std::invalid_argument("NLM patch weight count must match offsets");
    for (double g : config.patch_weights)
      if (!(g > 0.0)) throw std::invalid_argument("NLM patch weights must be positive");
  }
}

void validate_input(const ImageBuffer& f, const NlmConfig& config) {
  if (f.empty() || !f.all_finite()) throw std::invalid_argument("NLM input must be finite and non-empty");
  if (f.max_value() - f.min_value() > config.range_halfwidth * (1.0 + 1e-12))
    throw std::invalid_argument("NLM range half-width is smaller than the input intensity span");
}

int clamp_index(int v, int n) { return std::clamp(v, 0, n - 1); }

// P_k(x) = f(x + u_k), edge-clamped.
std::vector<ImageBuffer> shifted_images(const ImageBuffer& f, std::span<const PixelOffset> offsets) {
  std::vector<ImageBuffer> out;
  out.reserve(offsets.size());
  for (const auto& u : offsets) {
    ImageBuffer s(f.width(), f.height());
    for (int r = 0; r < f.height(); ++r)
      for (int c = 0; c < f.width(); ++c)
        s(r, c) = f(clamp_index(r + u.dy, f.height()), clamp_index(c + u.dx, f.width()));
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<double> gaussian_patch_weights(std::span<const PixelOffset> offsets, double sigma_patch) {
  if (!(sigma_patch > 0.0)) throw std::invalid_argument("patch sigma must be positive");
  std::vector<double> g;
  double total = 0.0;
  for (const auto& u : offsets) {
    const double r2 = double(u.dx) * u.dx + double(u.dy) * u.dy;
    g.push_back(std::exp(-r2 / (2.0 * sigma_patch * sigma_patch)));
    total += g.back();
  }
  for (double& v : g) v /= total;
  return g;
}

std::vector<ShiftableExpansion1D> nlm_dimension_expansions(const NlmConfig& config) {
  validate(config);
  const auto g = resolved_weights(config);
  std::vector<ShiftableExpansion1D> out;
  for (double gk : g) {
    const int power = config.per_dim_order - 1;
    if (power == 0) {
      out.push_back(raised_cosine_expansion(0, config.range_halfwidth));
      continue;
    }
    const double sigma = config.h / std::sqrt(2.0 * gk);
    FitOptions options;
    options.forced_order = power;
    out.push_back(fit_gaussian_raised_cosine(sigma, config.range_halfwidth, 0.0, options).expansion);
  }
  return out;
}

double nlm_kernel_gap(const NlmConfig& config, std::size_t samples) {
  const auto dims = nlm_dimension_expansions(config);
  const auto g = resolved_weights(config);
  std::mt19937_64 rng(0x5EED);
  const double t_max = config.range_halfwidth;
  double worst = 0.0;
  std::vector<double> t(dims.size());
  for (std::size_t s = 0; s < samples; ++s) {
    double approx = 1.0, exponent = 0.0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      t[k] = (2.0 * u - 1.0) * t_max;
      approx *= dims[k].profile(t[k]);
      exponent += g[k] * t[k] * t[k];
    }
    worst = std::max(worst, std::abs(approx - std::exp(-exponent / (config.h * config.h))));
  }
  return worst;
}

NlmResult nlm_shiftable_experimental(const ImageBuffer& f, const NlmConfig& config) {
  validate(config);
  validate_input(f, config);
  const auto dims = nlm_dimension_expansions(config);
  const std::size_t p = dims.size();
  const int w = f.width(), h = f.height();
  const int threads = resolve_thread_count(config.options.threads);
  const auto shifted = shifted_images(f, config.offsets);

  // Per-dimension basis images phi_j(P_k) and coefficient images c_j(P_k).
  std::vector<std::vector<ImageBuffer>> basis(p), coeff(p);
  ImageBuffer abs_coeff(w, h, 1.0);
  for (std::size_t k = 0; k < p; ++k) {
    const auto& e = dims[k];
    basis[k].assign(e.order(), ImageBuffer(w, h));
    coeff[k].assign(e.order(), ImageBuffer(w, h));
    std::vector<double> c(e.order());
    const auto src = shifted[k].data();
    for (std::size_t i = 0; i < src.size(); ++i) {
      e.coefficients(src[i], c);
      double total = 0.0;
      for (std::size_t j = 0; j < e.order(); ++j) {
        basis[k][j].data()[i] = e.basis_value(j, src[i]);
        coeff[k][j].data()[i] = c[j];
        total += std::abs(c[j]);
      }
      abs_coeff.data()[i] *= total;
    }
  }

  std::size_t total = 1;
  for (const auto& e : dims) total *= e.order();

  ImageBuffer num(w, h), den(w, h);
  std::vector<ImageBuffer> stack(2, ImageBuffer(w, h));
  ImageBuffer cj(w, h);
  std::vector<std::size_t> index(p, 0);
  for (std::size_t term = 0; term < total; ++term) {
    // Mixed-radix decode; the last dimension varies fastest.
    std::size_t rest = term;
    for (std::size_t k = p; k-- > 0;) {
      index[k] = rest % dims[k].order();
      rest /= dims[k].order();
    }
    auto hj = stack[1].data();
    auto c = cj.data();
    std::fill(hj.begin(), hj.end(), 1.0);
    std::fill(c.begin(), c.end(), 1.0);
    for (std::size_t k = 0; k < p; ++k) {
      const auto b = basis[k][index[k]].data();
      const auto cc = coeff[k][index[k]].data();
      for (std::size_t i = 0; i < hj.size(); ++i) {
        hj[i] *= b[i];
        c[i] *= cc[i];
      }
    }
    auto gj = stack[0].data();
    const auto src = f.data();
    for (std::size_t i = 0; i < gj.size(); ++i) gj[i] = src[i] * hj[i];

    const auto sums = moving_sum_stack(stack, config.radius, threads);
    auto pn = num.data();
    auto pd = den.data();
    for (std::size_t i = 0; i < pn.size(); ++i) {
      pn[i] += c[i] * sums[0].data()[i];
      pd[i] += c[i] * sums[1].data()[i];
    }
  }

  NlmResult result;
  result.image = ImageBuffer(w, h);
  for (std::size_t i = 0; i < result.image.size(); ++i) {
    const double d = den.data()[i];
    result.image.data()[i] = (std::abs(d) < config.options.eta_floor * abs_coeff.data()[i] || d == 0.0)
                                 ? f.data()[i]
                                 : num.data()[i] / d;
  }
  result.kernel_gap = nlm_kernel_gap(config);
  result.total_order = total;
  return result;
}

ImageBuffer nlm_direct(const ImageBuffer& f, const NlmConfig& config) {
  validate(config);
  validate_input(f, config);
  const auto dims = nlm_dimension_expansions(config);
  const auto shifted = shifted_images(f, config.offsets);
  const int radius = config.radius;
  const int threads = resolve_thread_count(config.options.threads);

  ImageBuffer out(f.width(), f.height());
  parallel_for(static_cast<std::size_t>(f.height()), threads, [&](std::size_t row) {
    const int r = static_cast<int>(row);
    for (int c = 0; c < f.width(); ++c) {
      double num = 0.0, den = 0.0, mass = 0.0;
      for (int rr = std::max(0, r - radius); rr <= std::min(f.height() - 1, r + radius); ++rr) {
        for (int cc = std::max(0, c - radius); cc <= std::min(f.width() - 1, c + radius); ++cc) {
          double wgt = 1.0;
          for (std::size_t k = 0; k < dims.size(); ++k)
            wgt *= dims[k].profile(shifted[k](rr, cc) - shifted[k](r, c));
          num += wgt * f(rr, cc);
          den += wgt;
          mass += std::abs(wgt);
        }
      }
      out(r, c) = (std::abs(den) < config.options.eta_floor * mass || den == 0.0) ? f(r, c) : num / den;
    }
  });
  return out;
}

}  // namespace shiftkern
