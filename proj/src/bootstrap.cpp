#include "plstats/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "plstats/csv.hpp"

namespace plstats {

const char* bootstrap_mode_name(BootstrapMode mode) {
  return mode == BootstrapMode::interp_inverse ? "interp_inverse" : "resample";
}

BootstrapMode bootstrap_mode_by_name(std::string_view name) {
  if (name == "interp_inverse") return BootstrapMode::interp_inverse;
  if (name == "resample") return BootstrapMode::resample;
  throw std::invalid_argument("unknown bootstrap mode: " + std::string(name));
}

double interp_inverse_variate(const EcdfModel& ecdf, double r) {
  const auto& y = ecdf.sorted_values();
  const double n = static_cast<double>(y.size());
  std::size_t i = static_cast<std::size_t>(std::ceil(r * n));
  i = std::clamp<std::size_t>(i, 1, y.size());
  const double y_prev = i >= 2 ? y[i - 2] : 0.0; // y_(0) = 0
  const double slope = (y[i - 1] - y_prev) * n;
  return y_prev + slope * (r - static_cast<double>(i - 1) / n);
}

namespace {

void draw_variates(const EcdfModel& ecdf, std::size_t count, BootstrapMode mode, Rng& gen,
                   std::vector<double>& out) {
  out.clear();
  out.reserve(count);
  const auto& y = ecdf.sorted_values();
  for (std::size_t k = 0; k < count; ++k) {
    if (mode == BootstrapMode::interp_inverse)
      out.push_back(interp_inverse_variate(ecdf, gen.next_double()));
    else
      out.push_back(y[gen.below(y.size())]);
  }
}

double statistic_of(const std::vector<double>& values, StatisticKind kind) {
  Sample s;
  s.values = values;
  return plugin_statistic(s, kind);
}

} // namespace

std::vector<double> random_variate(const EcdfModel& ecdf, std::size_t count, RngStream rng) {
  Rng gen(rng);
  std::vector<double> out;
  draw_variates(ecdf, count, BootstrapMode::interp_inverse, gen, out);
  return out;
}

BootstrapRun bootstrap_replicates(const Sample& sample, std::size_t B, BootstrapMode mode,
                                  RngStream rng, StatisticKind statistic) {
  if (B < 1) throw std::invalid_argument("bootstrap_replicates: B must be >= 1");
  const EcdfModel ecdf(sample);

  BootstrapRun run;
  run.B = B;
  run.mode = mode;
  run.statistic = statistic;
  run.rng = rng;
  run.sample_size = sample.size();
  run.replicates.reserve(B);

  std::vector<double> variates;
  for (std::size_t b = 0; b < B; ++b) {
    Rng gen(rng.substream(b).substream(0));
    draw_variates(ecdf, sample.size(), mode, gen, variates);
    try {
      run.replicates.push_back(statistic_of(variates, statistic));
    } catch (const std::exception& e) {
      throw std::domain_error("replicate " + std::to_string(b) + ": " + e.what());
    }
  }
  return run;
}

double bootstrap_variance(const BootstrapRun& run) {
  const std::size_t B = run.replicates.size();
  if (B == 0) throw std::invalid_argument("bootstrap_variance: empty run");
  double mean = 0.0;
  for (double t : run.replicates) mean += t;
  mean /= static_cast<double>(B);
  double v = 0.0;
  for (double t : run.replicates) v += (t - mean) * (t - mean);
  return v / static_cast<double>(B);
}

double quantile(std::span<const double> values, double beta) {
  if (values.empty()) throw std::invalid_argument("quantile: empty vector");
  if (!(beta >= 0.0 && beta <= 1.0))
    throw std::domain_error("quantile: beta must lie in [0,1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::size_t i = static_cast<std::size_t>(std::ceil(beta * n));
  i = std::clamp<std::size_t>(i, 1, sorted.size());
  return sorted[i - 1];
}

ConfidenceInterval ci_boot_normal(const Sample& sample, const BootstrapRun& run, double alpha) {
  const double z = normal_upper_critical(alpha);
  const double t = plugin_statistic(sample, run.statistic);
  const double half = z * std::sqrt(bootstrap_variance(run));
  return {t - half, t + half, 1.0 - alpha, CiMethod::boot_normal, t};
}

ConfidenceInterval ci_boot_pivotal(const Sample& sample, const BootstrapRun& run, double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw std::domain_error("alpha must lie in (0,1)");
  const double t = plugin_statistic(sample, run.statistic);
  const double hi = quantile(run.replicates, 1.0 - alpha / 2.0);
  const double lo = quantile(run.replicates, alpha / 2.0);
  return {2.0 * t - hi, 2.0 * t - lo, 1.0 - alpha, CiMethod::boot_pivotal, t};
}

ConfidenceInterval ci_boot_percentile(const BootstrapRun& run, double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw std::domain_error("alpha must lie in (0,1)");
  const double lo = quantile(run.replicates, alpha / 2.0);
  const double hi = quantile(run.replicates, 1.0 - alpha / 2.0);
  double mean = 0.0;
  for (double t : run.replicates) mean += t;
  mean /= static_cast<double>(run.replicates.size());
  return {lo, hi, 1.0 - alpha, CiMethod::boot_percentile, mean};
}

ConfidenceInterval ci_boot_studentized(const Sample& sample, const BootstrapRun& run,
                                       double alpha, std::size_t inner_B,
                                       std::size_t* dropped) {
  if (inner_B < 2) throw std::invalid_argument("ci_boot_studentized: inner_B must be >= 2");
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw std::domain_error("alpha must lie in (0,1)");

  const EcdfModel ecdf(sample);
  const double t_n = plugin_statistic(sample, run.statistic);
  const double se_boot = std::sqrt(bootstrap_variance(run));
  std::size_t n_dropped = 0;

  std::vector<double> z_values;
  z_values.reserve(run.B);
  std::vector<double> variates, inner_variates, inner_stats;
  for (std::size_t b = 0; b < run.B; ++b) {
    const RngStream rep_stream = run.rng.substream(b);
    Rng gen(rep_stream.substream(0));
    draw_variates(ecdf, run.sample_size, run.mode, gen, variates);

    const EcdfModel inner_ecdf{std::vector<double>(variates)};
    inner_stats.clear();
    for (std::size_t j = 1; j <= inner_B; ++j) {
      Rng inner_gen(rep_stream.substream(j));
      draw_variates(inner_ecdf, run.sample_size, run.mode, inner_gen, inner_variates);
      inner_stats.push_back(statistic_of(inner_variates, run.statistic));
    }
    double mean = 0.0;
    for (double s : inner_stats) mean += s;
    mean /= static_cast<double>(inner_B);
    double v = 0.0;
    for (double s : inner_stats) v += (s - mean) * (s - mean);
    const double se_b = std::sqrt(v / static_cast<double>(inner_B));
    if (se_b == 0.0) {
      ++n_dropped;
      continue;
    }
    z_values.push_back((run.replicates[b] - t_n) / se_b);
  }
  if (dropped) *dropped = n_dropped;

  if (z_values.empty() || se_boot == 0.0)
    return {t_n, t_n, 1.0 - alpha, CiMethod::boot_studentized, t_n};

  const double z_hi = quantile(z_values, 1.0 - alpha / 2.0);
  const double z_lo = quantile(z_values, alpha / 2.0);
  return {t_n - z_hi * se_boot, t_n - z_lo * se_boot, 1.0 - alpha,
          CiMethod::boot_studentized, t_n};
}

void write_replicates_csv(const BootstrapRun& run, const std::string& path) {
  write_value_column_csv(run.replicates, path);
}

} // namespace plstats
