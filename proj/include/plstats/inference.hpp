#pragma once

#include <string>
#include <string_view>

#include "plstats/landscape.hpp"

namespace plstats {

enum class CiMethod {
  normal_theory,
  delta,
  boot_normal,
  boot_pivotal,
  boot_studentized,
  boot_percentile,
  kde_quantile // surrogate interval from KDE-CDF quantiles
};

const char* ci_method_name(CiMethod method);

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.0; // recorded as 1 - alpha
  CiMethod method = CiMethod::normal_theory;
  double statistic_value = 0.0;

  //! {"method","level","lower","upper","statistic"} JSON record.
  [[nodiscard]] std::string to_json() const;
};

//! Differentiable statistical functionals accepted by name.
enum class StatisticKind { log_sum, mean };

StatisticKind statistic_by_name(std::string_view name);
const char* statistic_name(StatisticKind kind);

//! T(F_hat). Default log_sum returns log(sum Y_i) and throws
//! std::domain_error when the sum is not positive.
double plugin_statistic(const Sample& sample, StatisticKind kind = StatisticKind::log_sum);

//! How the empirical influence values L_hat(Y_i) are formed.
//!
//! paper applies the linear-functional rule L_hat = Y_i - T(F_hat) to
//! whichever statistic is selected, exactly as written. For log_sum that rule
//! is not the Gateaux derivative (mean(L_hat) != 0), so corrected offers the
//! delta-method influence of log of the mean functional,
//! L_hat = (Y_i - Ybar)/Ybar. The two modes coincide for the mean statistic.
enum class InfluenceMode { paper, corrected };

struct InfluenceSe {
  double se_hat = 0.0;
  double tau_hat_sq = 0.0;
};

//! tau_hat^2 = mean of L_hat^2, se_hat = tau_hat / sqrt(n).
InfluenceSe influence_se(const Sample& sample, StatisticKind kind = StatisticKind::log_sum,
                         InfluenceMode mode = InfluenceMode::paper);

//! T(F_hat) +- z_{alpha/2} * se_hat.
ConfidenceInterval delta_ci(const Sample& sample, double alpha,
                            StatisticKind kind = StatisticKind::log_sum,
                            InfluenceMode mode = InfluenceMode::paper);

//! Ybar +- z_{alpha/2} * S_n / sqrt(n) with the (n-1)-denominator sample
//! variance. Requires n >= 2.
ConfidenceInterval normal_theory_ci(const Sample& sample, double alpha);

//! Inverse standard normal CDF (Acklam rational approximation polished by one
//! Halley step; absolute error well below 1e-9 on (0,1)).
double normal_quantile(double p);

//! Upper alpha/2 critical value z* = Phi^{-1}(1 - alpha/2); checks alpha in (0,1).
double normal_upper_critical(double alpha);

} // namespace plstats
