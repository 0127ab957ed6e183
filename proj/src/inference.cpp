#include "plstats/inference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace plstats {

const char* ci_method_name(CiMethod method) {
  switch (method) {
    case CiMethod::normal_theory: return "normal_theory";
    case CiMethod::delta: return "delta";
    case CiMethod::boot_normal: return "boot_normal";
    case CiMethod::boot_pivotal: return "boot_pivotal";
    case CiMethod::boot_studentized: return "boot_studentized";
    case CiMethod::boot_percentile: return "boot_percentile";
    case CiMethod::kde_quantile: return "kde_quantile";
  }
  return "unknown";
}

std::string ConfidenceInterval::to_json() const {
  nlohmann::json j{{"method", ci_method_name(method)},
                   {"level", level},
                   {"lower", lower},
                   {"upper", upper},
                   {"statistic", statistic_value}};
  return j.dump();
}

StatisticKind statistic_by_name(std::string_view name) {
  if (name == "log_sum") return StatisticKind::log_sum;
  if (name == "mean") return StatisticKind::mean;
  throw std::invalid_argument("unknown statistic: " + std::string(name));
}

const char* statistic_name(StatisticKind kind) {
  return kind == StatisticKind::log_sum ? "log_sum" : "mean";
}

double plugin_statistic(const Sample& sample, StatisticKind kind) {
  if (sample.values.empty()) throw std::invalid_argument("plugin_statistic: empty sample");
  double sum = 0.0;
  for (double v : sample.values) sum += v;
  switch (kind) {
    case StatisticKind::log_sum:
      if (!(sum > 0.0))
        throw std::domain_error("plugin_statistic: log_sum needs a positive sum");
      return std::log(sum);
    case StatisticKind::mean:
      return sum / static_cast<double>(sample.values.size());
  }
  throw std::logic_error("unreachable");
}

InfluenceSe influence_se(const Sample& sample, StatisticKind kind, InfluenceMode mode) {
  const double t = plugin_statistic(sample, kind);
  const std::size_t n = sample.values.size();

  double center = t;
  double scale = 1.0;
  if (mode == InfluenceMode::corrected || kind == StatisticKind::mean) {
    double mean = 0.0;
    for (double v : sample.values) mean += v;
    mean /= static_cast<double>(n);
    center = mean;
    scale = kind == StatisticKind::log_sum ? mean : 1.0;
  }

  double tau_sq = 0.0;
  for (double v : sample.values) {
    const double l = (v - center) / scale;
    tau_sq += l * l;
  }
  tau_sq /= static_cast<double>(n);
  return {std::sqrt(tau_sq) / std::sqrt(static_cast<double>(n)), tau_sq};
}

ConfidenceInterval delta_ci(const Sample& sample, double alpha, StatisticKind kind,
                            InfluenceMode mode) {
  const double z = normal_upper_critical(alpha);
  const double t = plugin_statistic(sample, kind);
  const auto se = influence_se(sample, kind, mode);
  return {t - z * se.se_hat, t + z * se.se_hat, 1.0 - alpha, CiMethod::delta, t};
}

ConfidenceInterval normal_theory_ci(const Sample& sample, double alpha) {
  const std::size_t n = sample.values.size();
  if (n < 2)
    throw std::invalid_argument(
        "normal_theory_ci: sample too small, the normal-theory interval needs n >= 2");
  const double z = normal_upper_critical(alpha);
  double mean = 0.0;
  for (double v : sample.values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : sample.values) ss += (v - mean) * (v - mean);
  const double s = std::sqrt(ss / static_cast<double>(n - 1));
  const double half = z * s / std::sqrt(static_cast<double>(n));
  return {mean - half, mean + half, 1.0 - alpha, CiMethod::normal_theory, mean};
}

double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::domain_error("normal_quantile: p must lie in (0,1)");

  // Acklam's rational approximation
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // one Halley step against the exact CDF
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
  x -= u / (1.0 + x * u / 2.0);
  return x;
}

double normal_upper_critical(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error("alpha must lie in (0,1)");
  return normal_quantile(1.0 - alpha / 2.0);
}

} // namespace plstats
