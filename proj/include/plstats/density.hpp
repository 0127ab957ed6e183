#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "plstats/inference.hpp"
#include "plstats/kernels.hpp"
#include "plstats/landscape.hpp"

namespace plstats {

//! Kernel density estimate evaluated on an ascending grid:
//! f_hat(x) = (1/(n h)) sum_i K((x - X_i)/h).
struct DensityEstimate {
  std::vector<double> grid;
  std::vector<double> values;
  double bandwidth = 0.0;
  Kernel kernel;
  std::size_t n = 0;

  //! Linear interpolation between grid nodes, 0 outside the grid.
  [[nodiscard]] double evaluate(double x) const;

  //! Trapezoid integral of the values over the grid.
  [[nodiscard]] double integral() const;
};

//! Ascending grid spanning the data padded by kernel.grid_pad() bandwidths.
std::vector<double> kde_grid(const Sample& sample, double h, const Kernel& kernel,
                             std::size_t points = 1024);

//! Throws std::domain_error for h <= 0, std::invalid_argument for an empty
//! grid or sample.
DensityEstimate kde(const Sample& sample, double h, const Kernel& kernel,
                    const std::vector<double>& grid);

//! J_hat(h) = int f_hat^2 - (2/n) sum_i f_hat_(-i)(X_i). The square integral
//! uses trapezoid quadrature on a padded grid of at least quad_points nodes;
//! the leave-one-out terms are exact. Requires n >= 2, h > 0.
double cross_validation_score(const Sample& sample, double h, const Kernel& kernel,
                              std::size_t quad_points = 2048);

struct RiskTerms {
  double bias = 0.0;
  double variance = 0.0;
  double total = 0.0;
};

//! Cross-validation sweep plus the bandwidth rules and risk decompositions.
//! h_star_hist stays NaN (the undefined marker) until a positive int (f')^2
//! estimate is available.
struct RiskReport {
  std::vector<double> h_grid;
  std::vector<double> j_scores;
  double h_cv = 0.0;
  double h_star_hist = std::numeric_limits<double>::quiet_NaN();
  double h_star_kernel = std::numeric_limits<double>::quiet_NaN();
  double int_fprime_sq = std::numeric_limits<double>::quiet_NaN();
  std::size_t derivative_skipped = 0;
  std::vector<RiskTerms> hist_terms;   // aligned with h_grid when filled
  std::vector<RiskTerms> kernel_terms; // aligned with h_grid when filled
};

//! Evaluates J_hat on the arithmetic grid h_min, h_min+h_step, ..., h_max and
//! records the argmin (ties resolve to the smallest h). Throws
//! std::invalid_argument when the grid is empty.
RiskReport select_bandwidth(const Sample& sample, const Kernel& kernel, double h_min,
                            double h_max, double h_step, std::size_t quad_points = 2048);

//! h* = n^{-1/3} (6 / int (f')^2)^{1/3}; throws std::domain_error when the
//! curvature term is not positive (a uniform density has no finite optimum).
double histogram_optimal_binwidth(std::size_t n, double int_fprime_sq);

//! h* = (c2 / (c1^2 A(f) n))^{1/5} with A(f) = 3/(8 sqrt(pi) sigma^5), the
//! normal reference rule.
double normal_reference_bandwidth(double sigma, std::size_t n, const Kernel& kernel);

//! Same rule with sigma taken as the sample standard deviation
//! ((n-1)-denominator); throws std::domain_error on zero variance.
double normal_reference_bandwidth(const Sample& sample, const Kernel& kernel);

//! Per-point averaged difference quotients of f_hat over the neighbor
//! cluster {x0 : 0 < |x - x0| < h_star}; points with empty clusters are
//! skipped and counted.
struct DerivativeEstimate {
  std::vector<double> x;     // sample points with nonempty clusters, ascending
  std::vector<double> slope; // averaged difference quotient at x
  std::size_t skipped = 0;
};

DerivativeEstimate estimate_density_derivative(const Sample& sample, double h_star,
                                               const DensityEstimate& f_hat);

//! int (f')^2 surrogate: trapezoid of slope^2 over the sorted sample points.
double integral_fprime_sq(const DerivativeEstimate& deriv);

enum class RiskMode { histogram, kernel };

//! Leading-order risk decomposition (bias term, variance term, total):
//! histogram  h^2/12 int(f')^2 + 1/(nh);
//! kernel     (1/4) sigma_K^4 h^4 int(f'')^2 + int K^2 / (nh).
//! The kernel mode requires both a kernel and int_fsecond_sq.
RiskTerms estimated_risk(std::size_t n, double h, double int_fprime_sq, RiskMode mode,
                         const Kernel* kernel = nullptr,
                         std::optional<double> int_fsecond_sq = std::nullopt);

//! Surrogate interval between the alpha/2 and 1-alpha/2 quantiles of the
//! distribution whose density is the normalized estimate (trapezoid CDF
//! inversion on the grid); statistic_value records the KDE median.
ConfidenceInterval kde_interval(const DensityEstimate& estimate, double alpha);

//! Equal-width histogram density on [min, max], for empirical risk studies.
struct HistogramDensity {
  double lo = 0.0;
  double binwidth = 0.0;
  std::vector<double> density;
  std::size_t n = 0;

  [[nodiscard]] double evaluate(double x) const;
};

HistogramDensity histogram_density(const Sample& sample, double binwidth);

//! Two-column CSV x,density.
void write_density_csv(const DensityEstimate& estimate, const std::string& path);

} // namespace plstats
