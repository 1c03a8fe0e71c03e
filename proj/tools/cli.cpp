#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "bench.hpp"
#include "shiftkern/shiftkern.hpp"

namespace shiftkern::tools {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr double kRangeHalfwidth = 255.0;

struct FilterArgs {
  std::string in, out, mode, kernel = "cosine";
  int radius = 0;
  std::optional<double> sigma_s, sigma_r;
  std::optional<int> order_s, order_r;
  double trunc = 0.0;
  bool oracle = false;
  bool force = false;
  int threads = 0;
  double h = 30.0;
  int patch = 2;
  double sigma_patch = 1.0;
};

struct KernelArgs {
  std::string type;
  std::optional<int> order;
  double halfwidth = 1.0;
  std::optional<double> sigma;
  std::optional<double> scale;
  double trunc = 0.0;
  std::string csv;
  bool metrics = false;
  bool force = false;
};

struct BenchArgs {
  int size = 512;
  std::string radii = "2,4,8,16";
  int runs = 5;
  bool direct = false;
  std::string report;
  int threads = 0;
};

void check_fit(const GaussianFit& fit, bool force, const char* what, std::ostream& out) {
  if (fit.warning) out << "warning: " << *fit.warning << "\n";
  if (fit.valid) return;
  std::ostringstream msg;
  msg << what << " order " << fit.order << " is below the validity threshold " << fit.min_valid_order
      << " (use --force to accept)";
  if (!force) throw ValidityError(msg.str());
  out << "warning: " << msg.str() << "\n";
}

GaussianFit fit_gaussian(bool poly, double sigma, double halfwidth, double epsilon, std::optional<int> order) {
  FitOptions options;
  options.forced_order = order;
  return poly ? fit_gaussian_polynomial(sigma, halfwidth, epsilon, options)
              : fit_gaussian_raised_cosine(sigma, halfwidth, epsilon, options);
}

// Spatial kernel for filter modes; empty means a box window.
std::optional<KernelSpec> spatial_kernel(const FilterArgs& a, std::ostream& out) {
  if (a.kernel == "directional") {
    if (a.sigma_s) throw UsageError("--sigma-s is not supported with --kernel directional");
    if (a.radius == 0) return std::nullopt;
    const int n = a.order_s.value_or(4);
    const auto spec = directional_kernel(n, a.radius);
    out << "spatial kernel: directional N=" << n << " T=" << a.radius
        << " corner_overshoot=" << format_double(corner_overshoot(spec)) << "\n";
    return spec;
  }
  const bool poly = a.kernel == "poly";
  if (a.radius == 0) {
    out << "spatial kernel: box T=0\n";
    return std::nullopt;
  }
  Kernel1D k;
  if (a.sigma_s) {
    const auto fit = fit_gaussian(poly, *a.sigma_s, a.radius, 0.0, a.order_s);
    check_fit(fit, a.force, "spatial", out);
    out << "spatial kernel: " << to_string(fit.variant) << " fit sigma=" << format_double(fit.sigma)
        << " T=" << a.radius << " N=" << fit.order << " sup_error=" << format_double(fit.sup_error) << "\n";
    k = fitted_kernel(fit);
  } else {
    const int n = a.order_s.value_or(0);
    if (n < 0) throw UsageError("--order-s must be >= 0");
    if (n == 0) {
      out << "spatial kernel: box T=" << a.radius << "\n";
      return std::nullopt;
    }
    k = poly ? Kernel1D{poly_window(n, a.radius)} : Kernel1D{raised_cosine(n, a.radius)};
    out << "spatial kernel: " << (poly ? "poly" : "cosine") << " N=" << n << " T=" << a.radius << "\n";
  }
  return separable(k, k);
}

ShiftableExpansion1D range_expansion(const FilterArgs& a, std::ostream& out) {
  const bool poly = a.kernel == "poly";
  if (a.order_r && !a.sigma_r) {
    if (*a.order_r < 0) throw UsageError("--order-r must be >= 0");
    auto e = poly ? polynomial_expansion(*a.order_r, kRangeHalfwidth) : raised_cosine_expansion(*a.order_r, kRangeHalfwidth);
    e = truncate_expansion(e, a.trunc);
    out << "range kernel: " << (poly ? "poly" : "cosine") << " N=" << *a.order_r << " T=" << kRangeHalfwidth
        << " terms=" << e.order() << "\n";
    return e;
  }
  const double sigma = a.sigma_r.value_or(40.0);
  const auto fit = fit_gaussian(poly, sigma, kRangeHalfwidth, a.trunc, a.order_r);
  check_fit(fit, a.force, "range", out);
  out << "range kernel: " << to_string(fit.variant) << " fit sigma=" << format_double(sigma)
      << " T=" << kRangeHalfwidth << " N=" << fit.order << " terms=" << fit.expansion.order()
      << " truncated=" << fit.truncated_terms << " sup_error=" << format_double(fit.sup_error) << "\n";
  return fit.expansion;
}

std::vector<PixelOffset> patch_offsets(int p) {
  static const std::vector<PixelOffset> all{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  if (p < 1 || p > 4) throw UsageError("--patch must lie in [1, 4]");
  return {all.begin(), all.begin() + p};
}

int cmd_filter(const FilterArgs& a, std::ostream& out) {
  if (a.radius < 0) throw UsageError("--T must be >= 0");
  if (!(a.trunc >= 0.0 && a.trunc < 1.0)) throw UsageError("--trunc must lie in [0, 1)");
  const ImageBuffer input = read_pgm(a.in);
  FilterOptions options;
  options.threads = resolve_thread_count(a.threads);
  if (a.kernel == "poly") {
    // Keeps normalized monomials small; the result does not depend on the origin.
    options.origin_x = 0.5 * (input.width() - 1);
    options.origin_y = 0.5 * (input.height() - 1);
  }

  ImageBuffer result;
  std::optional<ImageBuffer> reference;
  if (a.mode == "spatial") {
    const auto spec = spatial_kernel(a, out);
    const auto expansion = spec ? ShiftableExpansion2D::from_spec(*spec) : ShiftableExpansion2D::box(std::max(a.radius, 1));
    result = spatial_filter_shiftable(input, expansion, a.radius, options);
    if (a.oracle) {
      const KernelSpec direct_spec =
          spec ? *spec : KernelSpec{separable(raised_cosine(0, std::max(a.radius, 1)), raised_cosine(0, std::max(a.radius, 1)))};
      reference = spatial_filter_direct(input, direct_spec, a.radius);
    }
  } else if (a.mode == "bilateral") {
    BilateralConfig config;
    config.spatial = spatial_kernel(a, out);
    config.range = range_expansion(a, out);
    config.radius = a.radius;
    config.options = options;
    result = bilateral_filter_shiftable(input, config);
    if (a.oracle) reference = bilateral_filter_direct(input, config);
  } else {
    NlmConfig config;
    config.offsets = patch_offsets(a.patch);
    config.sigma_patch = a.sigma_patch;
    config.h = a.h;
    config.radius = a.radius;
    config.per_dim_order = a.order_r.value_or(3);
    config.options = options;
    const auto nlm = nlm_shiftable_experimental(input, config);
    out << "nlm: p=" << config.offsets.size() << " n=" << config.per_dim_order << " total_order=" << nlm.total_order
        << " kernel_gap=" << format_double(nlm.kernel_gap) << "\n";
    result = nlm.image;
    if (a.oracle) reference = nlm_direct(input, config);
  }

  write_pgm(result, a.out);
  if (reference) out << "max relative deviation: " << format_double(max_relative_deviation(result, *reference)) << "\n";
  return kExitOk;
}

std::string basis_kind(const BasisFunction1D& b) {
  switch (b.kind) {
    case BasisKind::Cosine: return "cosine";
    case BasisKind::Sine: return "sine";
    case BasisKind::Monomial: return "monomial";
  }
  return "?";
}

std::string basis_param(const BasisFunction1D& b) {
  return b.kind == BasisKind::Monomial ? std::to_string(b.degree) : format_double(b.frequency);
}

std::string expansion_csv(const ShiftableExpansion1D& e) {
  std::string csv = "kind,frequency_or_degree,weight\n";
  for (std::size_t n = 0; n < e.order(); ++n)
    csv += basis_kind(e.basis()[n]) + "," + basis_param(e.basis()[n]) + "," + format_double(e.weights()[n]) + "\n";
  return csv;
}

std::string expansion_csv(const ShiftableExpansion2D& e) {
  std::string csv;
  if (e.is_tensor()) {
    csv = "kind_x,frequency_or_degree_x,kind_y,frequency_or_degree_y,weight\n";
    const auto& x = e.x_factor();
    const auto& y = e.y_factor();
    for (std::size_t a = 0; a < x.order(); ++a)
      for (std::size_t b = 0; b < y.order(); ++b)
        csv += basis_kind(x.basis()[a]) + "," + basis_param(x.basis()[a]) + "," + basis_kind(y.basis()[b]) + "," +
               basis_param(y.basis()[b]) + "," + format_double(x.weights()[a] * y.weights()[b]) + "\n";
    return csv;
  }
  csv = "kind,frequency_x,frequency_y,weight\n";
  for (const auto& w : e.waves())
    csv += std::string(w.sine ? "sine" : "cosine") + "," + format_double(w.wx) + "," + format_double(w.wy) + "," +
           format_double(w.weight) + "\n";
  return csv;
}

int cmd_kernel(const KernelArgs& a, std::ostream& out) {
  if (!(a.halfwidth > 0.0)) throw UsageError("--T must be positive");
  if (!(a.trunc >= 0.0 && a.trunc < 1.0)) throw UsageError("--trunc must lie in [0, 1)");
  if (!a.sigma && !a.order) throw UsageError("--N is required unless --sigma is given");
  if (a.order && *a.order < 0) throw UsageError("--N must be >= 0");

  nlohmann::ordered_json metrics;
  metrics["sup_error"] = nullptr;
  metrics["isotropy"] = nullptr;
  metrics["corner_overshoot"] = nullptr;
  metrics["terms"] = nullptr;
  std::string csv;

  if (a.type == "cosine" || a.type == "poly") {
    const bool poly = a.type == "poly";
    ShiftableExpansion1D e;
    if (a.sigma) {
      const auto fit = fit_gaussian(poly, *a.sigma, a.halfwidth, a.trunc, a.order);
      check_fit(fit, a.force, "kernel", out);
      metrics["sup_error"] = fit.sup_error;
      e = fit.expansion;
    } else {
      e = poly ? polynomial_expansion(*a.order, a.halfwidth) : raised_cosine_expansion(*a.order, a.halfwidth);
      e = truncate_expansion(e, a.trunc);
    }
    metrics["terms"] = e.order();
    csv = expansion_csv(e);
  } else if (a.type == "separable") {
    Kernel1D k;
    std::function<double(double, double)> target;
    if (a.sigma) {
      const auto fit = fit_gaussian(false, *a.sigma, a.halfwidth, 0.0, a.order);
      check_fit(fit, a.force, "kernel", out);
      k = fitted_kernel(fit);
      const double s2 = 2.0 * *a.sigma * *a.sigma;
      target = [s2](double x, double y) { return std::exp(-(x * x + y * y) / s2); };
    } else {
      k = raised_cosine(*a.order, a.halfwidth);
    }
    const KernelSpec spec = separable(k, k);
    const auto e = ShiftableExpansion2D::from_spec(spec);
    if (target) metrics["sup_error"] = sup_distance(spec, target);
    metrics["isotropy"] = isotropy_metric(spec);
    metrics["corner_overshoot"] = corner_overshoot(spec);
    metrics["terms"] = e.order();
    csv = expansion_csv(e);
  } else {
    if (a.sigma) throw UsageError("--sigma is not supported with --type directional");
    if (*a.order < 1) throw UsageError("directional kernels need --N >= 1");
    Directional2D spec = directional_kernel(*a.order, a.halfwidth);
    spec.argument_scale = a.scale.value_or(1.0);
    // Gaussian limit of the product: sum_k cos^2(theta_k) = N / 2.
    const double s = spec.argument_scale;
    const double rate = s * s * spec.order * std::numbers::pi * std::numbers::pi / (16.0 * a.halfwidth * a.halfwidth);
    metrics["sup_error"] = sup_distance(spec, [rate](double x, double y) { return std::exp(-rate * (x * x + y * y)); });
    metrics["isotropy"] = isotropy_metric(spec);
    metrics["corner_overshoot"] = corner_overshoot(spec);
    if (spec.order <= ShiftableExpansion2D::kMaxDirectionalOrder) {
      const auto e = ShiftableExpansion2D::from_spec(spec);
      metrics["terms"] = e.order();
      csv = expansion_csv(e);
    } else if (!a.csv.empty()) {
      throw UsageError("directional expansions are limited to N <= 10");
    }
  }

  if (!a.csv.empty()) write_text_file(a.csv, csv);
  if (a.metrics) out << metrics.dump() << "\n";
  return kExitOk;
}

std::vector<int> parse_radii(const std::string& text) {
  std::vector<int> radii;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw UsageError("--T-list must be comma-separated integers");
    }
    if (used != item.size() || value < 0) throw UsageError("--T-list must be comma-separated integers >= 0");
    radii.push_back(value);
  }
  if (radii.empty()) throw UsageError("--T-list is empty");
  return radii;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  BenchConfig config;
  config.size = a.size;
  config.radii = parse_radii(a.radii);
  config.runs = a.runs;
  config.direct = a.direct;
  config.threads = resolve_thread_count(a.threads);
  if (config.size <= 0) throw UsageError("--size must be positive");
  if (config.runs <= 0) throw UsageError("--runs must be positive");
  const auto report = run_bench(config);
  const auto json = to_json(report);
  write_json_report(json, a.report);
  out << json.dump() << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constant-time filtering with shiftable kernels", "shiftkern"};
  app.require_subcommand(1);
  int threads = 0;

  FilterArgs fa;
  auto* filter = app.add_subcommand("filter", "Filter a PGM image");
  filter->set_help_flag("--help", "Print this help message and exit");
  filter->add_option("--in", fa.in, "Input PGM")->required();
  filter->add_option("--out", fa.out, "Output PGM")->required();
  filter->add_option("--mode", fa.mode, "Filter")->required()->check(CLI::IsMember({"spatial", "bilateral", "nlm"}));
  filter->add_option("--T", fa.radius, "Window radius in pixels")->required();
  filter->add_option("--sigma-s", fa.sigma_s, "Spatial Gaussian sigma (pixels)");
  filter->add_option("--sigma-r", fa.sigma_r, "Range Gaussian sigma (intensity)");
  filter->add_option("--order-s", fa.order_s, "Spatial kernel order");
  filter->add_option("--order-r", fa.order_r, "Range kernel order (nlm: basis terms per offset)");
  filter->add_option("--trunc", fa.trunc, "Range truncation tolerance in [0,1)");
  filter->add_option("--kernel", fa.kernel, "Kernel family")->check(CLI::IsMember({"cosine", "poly", "directional"}));
  filter->add_flag("--oracle", fa.oracle, "Also run the brute-force path and report the deviation");
  filter->add_flag("--force", fa.force, "Accept orders below the validity threshold");
  filter->add_option("--h", fa.h, "NLM smoothing parameter");
  filter->add_option("--patch", fa.patch, "NLM patch size p in [1,4]");
  filter->add_option("--sigma-patch", fa.sigma_patch, "NLM patch weight sigma");
  filter->add_option("--threads", threads, "Worker cap (default: SHIFTKERN_THREADS or 1)");

  KernelArgs ka;
  auto* kernel = app.add_subcommand("kernel", "Design and export a shiftable kernel");
  kernel->add_option("--type", ka.type, "Kernel type")
      ->required()
      ->check(CLI::IsMember({"cosine", "poly", "directional", "separable"}));
  kernel->add_option("--N", ka.order, "Kernel order");
  kernel->add_option("--T", ka.halfwidth, "Half-width");
  kernel->add_option("--sigma", ka.sigma, "Fit a Gaussian of this sigma");
  kernel->add_option("--scale", ka.scale, "Directional argument scale (default 1; sqrt(6/N) gives the normalized family)");
  kernel->add_option("--trunc", ka.trunc, "Truncation tolerance in [0,1)");
  kernel->add_option("--csv", ka.csv, "Write the expansion as CSV");
  kernel->add_flag("--metrics", ka.metrics, "Print metrics JSON");
  kernel->add_flag("--force", ka.force, "Accept orders below the validity threshold");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Time the shiftable and direct bilateral paths");
  bench->add_option("--size", ba.size, "Image side length");
  bench->add_option("--T-list", ba.radii, "Comma-separated radii");
  bench->add_option("--runs", ba.runs, "Timed runs per radius");
  bench->add_flag("--direct", ba.direct, "Also time the brute-force path");
  bench->add_option("--report", ba.report, "BenchReport JSON path")->required();
  bench->add_option("--threads", ba.threads, "Worker cap (default: SHIFTKERN_THREADS or 1)");

  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  fa.threads = threads;

  try {
    if (filter->parsed()) return cmd_filter(fa, out);
    if (kernel->parsed()) return cmd_kernel(ka, out);
    return cmd_bench(ba, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitKernelValidity;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace shiftkern::tools
