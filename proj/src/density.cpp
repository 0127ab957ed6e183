#include "plstats/density.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "plstats/csv.hpp"
#include "plstats/errors.hpp"

namespace plstats {

namespace {

std::vector<double> sorted_copy(const Sample& sample) {
  std::vector<double> data = sample.values;
  std::sort(data.begin(), data.end());
  return data;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    s += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
  return s;
}

//! Windowed kernel sums of sorted data at ascending query points.
std::vector<double> kernel_sums(const std::vector<double>& data,
                                const std::vector<double>& queries, double h,
                                const Kernel& kernel) {
  const double radius = kernel.support_radius() * h;
  std::vector<double> sums(queries.size(), 0.0);
  std::size_t lo = 0, hi = 0;
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const double x = queries[q];
    while (lo < data.size() && data[lo] < x - radius) ++lo;
    if (hi < lo) hi = lo;
    while (hi < data.size() && data[hi] <= x + radius) ++hi;
    double s = 0.0;
    for (std::size_t j = lo; j < hi; ++j) s += kernel((x - data[j]) / h);
    sums[q] = s;
  }
  return sums;
}

} // namespace

double DensityEstimate::evaluate(double x) const {
  if (grid.empty() || x < grid.front() || x > grid.back()) return 0.0;
  const auto it = std::upper_bound(grid.begin(), grid.end(), x);
  if (it == grid.begin()) return values.front();
  if (it == grid.end()) return values.back();
  const std::size_t i = static_cast<std::size_t>(it - grid.begin());
  const double x0 = grid[i - 1], x1 = grid[i];
  if (x1 == x0) return values[i];
  const double w = (x - x0) / (x1 - x0);
  return values[i - 1] + w * (values[i] - values[i - 1]);
}

double DensityEstimate::integral() const { return trapezoid(grid, values); }

std::vector<double> kde_grid(const Sample& sample, double h, const Kernel& kernel,
                             std::size_t points) {
  if (sample.values.empty()) throw std::invalid_argument("kde_grid: empty sample");
  if (!(h > 0.0)) throw std::domain_error("kde_grid: bandwidth must be positive");
  points = std::max<std::size_t>(points, 2);
  const auto [mn, mx] = std::minmax_element(sample.values.begin(), sample.values.end());
  const double pad = kernel.grid_pad() * h;
  const double lo = *mn - pad, hi = *mx + pad;
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  return grid;
}

DensityEstimate kde(const Sample& sample, double h, const Kernel& kernel,
                    const std::vector<double>& grid) {
  if (!(h > 0.0)) throw std::domain_error("kde: bandwidth must be positive");
  if (grid.empty()) throw std::invalid_argument("kde: empty grid");
  if (sample.values.empty()) throw std::invalid_argument("kde: empty sample");

  const std::vector<double> data = sorted_copy(sample);
  DensityEstimate est;
  est.grid = grid;
  est.bandwidth = h;
  est.kernel = kernel;
  est.n = data.size();
  est.values = kernel_sums(data, grid, h, kernel);
  const double scale = 1.0 / (static_cast<double>(data.size()) * h);
  for (double& v : est.values) v *= scale;
  return est;
}

double cross_validation_score(const Sample& sample, double h, const Kernel& kernel,
                              std::size_t quad_points) {
  const std::size_t n = sample.values.size();
  if (n < 2) throw std::invalid_argument("cross_validation_score: needs n >= 2");
  if (!(h > 0.0)) throw std::domain_error("cross_validation_score: bandwidth must be positive");

  const DensityEstimate est =
      kde(sample, h, kernel, kde_grid(sample, h, kernel, std::max<std::size_t>(quad_points, 2048)));
  std::vector<double> sq(est.values.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = est.values[i] * est.values[i];
  const double int_fsq = trapezoid(est.grid, sq);

  // exact leave-one-out terms; the window sum includes j == i, whose kernel
  // value K(0) is subtracted
  const std::vector<double> data = sorted_copy(sample);
  const std::vector<double> sums = kernel_sums(data, data, h, kernel);
  const double k0 = kernel(0.0);
  double loo = 0.0;
  for (double s : sums) loo += s - k0;
  loo /= static_cast<double>(n - 1) * h;

  return int_fsq - 2.0 / static_cast<double>(n) * loo;
}

RiskReport select_bandwidth(const Sample& sample, const Kernel& kernel, double h_min,
                            double h_max, double h_step, std::size_t quad_points) {
  if (!(h_min > 0.0) || !(h_step > 0.0) || h_min > h_max)
    throw std::invalid_argument("select_bandwidth: empty bandwidth grid");
  RiskReport report;
  const std::size_t count =
      static_cast<std::size_t>(std::floor((h_max - h_min) / h_step + 1e-9)) + 1;
  report.h_grid.reserve(count);
  report.j_scores.reserve(count);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < count; ++k) {
    const double h = h_min + static_cast<double>(k) * h_step;
    const double score = cross_validation_score(sample, h, kernel, quad_points);
    report.h_grid.push_back(h);
    report.j_scores.push_back(score);
    if (score < best) {
      best = score;
      report.h_cv = h;
    }
  }
  return report;
}

double histogram_optimal_binwidth(std::size_t n, double int_fprime_sq) {
  if (n == 0) throw std::domain_error("histogram_optimal_binwidth: n must be positive");
  if (!(int_fprime_sq > 0.0))
    throw std::domain_error(
        "histogram_optimal_binwidth: int (f')^2 must be positive (uniform densities have no "
        "finite optimum)");
  return std::cbrt(6.0 / int_fprime_sq) / std::cbrt(static_cast<double>(n));
}

double normal_reference_bandwidth(double sigma, std::size_t n, const Kernel& kernel) {
  if (!(sigma > 0.0)) throw std::domain_error("normal_reference_bandwidth: sigma must be positive");
  if (n == 0) throw std::domain_error("normal_reference_bandwidth: n must be positive");
  const double a_f = 3.0 / (8.0 * std::sqrt(std::numbers::pi) * std::pow(sigma, 5));
  const double c1 = kernel.sigma_sq();
  const double c2 = kernel.l2_norm_sq();
  return std::pow(c2 / (c1 * c1 * a_f * static_cast<double>(n)), 0.2);
}

double normal_reference_bandwidth(const Sample& sample, const Kernel& kernel) {
  const std::size_t n = sample.values.size();
  if (n < 2) throw std::invalid_argument("normal_reference_bandwidth: needs n >= 2");
  double mean = 0.0;
  for (double v : sample.values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : sample.values) ss += (v - mean) * (v - mean);
  const double sigma = std::sqrt(ss / static_cast<double>(n - 1));
  if (!(sigma > 0.0))
    throw std::domain_error("normal_reference_bandwidth: zero sample variance");
  return normal_reference_bandwidth(sigma, n, kernel);
}

DerivativeEstimate estimate_density_derivative(const Sample& sample, double h_star,
                                               const DensityEstimate& f_hat) {
  if (!(h_star > 0.0))
    throw std::domain_error("estimate_density_derivative: h_star must be positive");
  const std::vector<double> data = sorted_copy(sample);

  DerivativeEstimate out;
  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double x = data[i];
    while (lo < data.size() && data[lo] <= x - h_star) ++lo;
    if (hi < lo) hi = lo;
    while (hi < data.size() && data[hi] < x + h_star) ++hi;
    double sum = 0.0;
    std::size_t count = 0;
    const double fx = f_hat.evaluate(x);
    for (std::size_t j = lo; j < hi; ++j) {
      if (data[j] == x) continue;
      sum += (fx - f_hat.evaluate(data[j])) / (x - data[j]);
      ++count;
    }
    if (count == 0) {
      ++out.skipped;
      continue;
    }
    out.x.push_back(x);
    out.slope.push_back(sum / static_cast<double>(count));
  }
  return out;
}

double integral_fprime_sq(const DerivativeEstimate& deriv) {
  if (deriv.x.size() < 2) return 0.0;
  std::vector<double> sq(deriv.slope.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = deriv.slope[i] * deriv.slope[i];
  return trapezoid(deriv.x, sq);
}

RiskTerms estimated_risk(std::size_t n, double h, double int_fprime_sq, RiskMode mode,
                         const Kernel* kernel, std::optional<double> int_fsecond_sq) {
  if (n == 0) throw std::domain_error("estimated_risk: n must be positive");
  if (!(h > 0.0)) throw std::domain_error("estimated_risk: h must be positive");
  RiskTerms terms;
  if (mode == RiskMode::histogram) {
    if (int_fprime_sq < 0.0)
      throw std::domain_error("estimated_risk: int (f')^2 must be nonnegative");
    terms.bias = h * h / 12.0 * int_fprime_sq;
    terms.variance = 1.0 / (static_cast<double>(n) * h);
  } else {
    if (kernel == nullptr || !int_fsecond_sq)
      throw std::invalid_argument("estimated_risk: kernel mode needs a kernel and int (f'')^2");
    const double s2 = kernel->sigma_sq();
    terms.bias = 0.25 * s2 * s2 * h * h * h * h * (*int_fsecond_sq);
    terms.variance = kernel->l2_norm_sq() / (static_cast<double>(n) * h);
  }
  terms.total = terms.bias + terms.variance;
  return terms;
}

ConfidenceInterval kde_interval(const DensityEstimate& estimate, double alpha) {
  if (estimate.grid.size() < 2)
    throw std::invalid_argument("kde_interval: degenerate grid");
  if (!(alpha > 0.0) || !(alpha <= 1.0))
    throw std::domain_error("kde_interval: alpha must lie in (0,1]");

  const auto& x = estimate.grid;
  const auto& f = estimate.values;
  std::vector<double> cdf(x.size(), 0.0);
  for (std::size_t i = 1; i < x.size(); ++i)
    cdf[i] = cdf[i - 1] + 0.5 * (f[i] + f[i - 1]) * (x[i] - x[i - 1]);
  const double total = cdf.back();
  if (!(total > 0.0)) throw std::invalid_argument("kde_interval: estimate integrates to zero");

  const auto invert = [&](double p) {
    const double target = p * total;
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), target);
    if (it == cdf.begin()) return x.front();
    if (it == cdf.end()) return x.back();
    const std::size_t i = static_cast<std::size_t>(it - cdf.begin());
    const double c0 = cdf[i - 1], c1 = cdf[i];
    if (c1 == c0) return x[i];
    const double w = (target - c0) / (c1 - c0);
    return x[i - 1] + w * (x[i] - x[i - 1]);
  };

  ConfidenceInterval ci;
  ci.lower = invert(alpha / 2.0);
  ci.upper = invert(1.0 - alpha / 2.0);
  ci.level = 1.0 - alpha;
  ci.method = CiMethod::kde_quantile;
  ci.statistic_value = invert(0.5);
  return ci;
}

double HistogramDensity::evaluate(double x) const {
  if (density.empty()) return 0.0;
  const double span = binwidth * static_cast<double>(density.size());
  if (x < lo || x > lo + span) return 0.0;
  std::size_t k = static_cast<std::size_t>((x - lo) / binwidth);
  if (k >= density.size()) k = density.size() - 1;
  return density[k];
}

HistogramDensity histogram_density(const Sample& sample, double binwidth) {
  if (sample.values.empty()) throw std::invalid_argument("histogram_density: empty sample");
  if (!(binwidth > 0.0)) throw std::domain_error("histogram_density: binwidth must be positive");
  const auto [mn, mx] = std::minmax_element(sample.values.begin(), sample.values.end());
  HistogramDensity hist;
  hist.lo = *mn;
  hist.binwidth = binwidth;
  hist.n = sample.values.size();
  const std::size_t nb =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((*mx - *mn) / binwidth)));
  std::vector<std::size_t> counts(nb, 0);
  for (double v : sample.values) {
    std::size_t k = static_cast<std::size_t>((v - hist.lo) / binwidth);
    if (k >= nb) k = nb - 1;
    ++counts[k];
  }
  hist.density.resize(nb);
  for (std::size_t k = 0; k < nb; ++k)
    hist.density[k] =
        static_cast<double>(counts[k]) / (static_cast<double>(hist.n) * binwidth);
  return hist;
}

void write_density_csv(const DensityEstimate& estimate, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write file: " + path);
  out << "x,density\n";
  for (std::size_t i = 0; i < estimate.grid.size(); ++i)
    out << format_double(estimate.grid[i]) << ',' << format_double(estimate.values[i]) << '\n';
}

} // namespace plstats
