#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "plstats/ecdf.hpp"
#include "plstats/inference.hpp"
#include "plstats/rng.hpp"

namespace plstats {

//! How bootstrap variates are drawn from the empirical distribution.
//!
//! interp_inverse is the interpolated inverse-transform construction with
//! the first segment anchored at y_(0) = 0; resample is classic i.i.d.
//! uniform picks with replacement.
enum class BootstrapMode { interp_inverse, resample };

const char* bootstrap_mode_name(BootstrapMode mode);
BootstrapMode bootstrap_mode_by_name(std::string_view name);

//! Replicate statistics T*_{n,1..B} plus the seed lineage needed to
//! regenerate any replicate deterministically (replicate b uses
//! rng.substream(b), its variate draw stream id 0, nested streams 1..).
struct BootstrapRun {
  std::vector<double> replicates;
  std::size_t B = 0;
  BootstrapMode mode = BootstrapMode::interp_inverse;
  StatisticKind statistic = StatisticKind::log_sum;
  RngStream rng;
  std::size_t sample_size = 0;
};

//! X = y_(i-1) + a_i (R - (i-1)/n) on the segment (i-1)/n < R <= i/n with
//! slope a_i = (y_(i) - y_(i-1)) n and y_(0) = 0. Continuous and strictly
//! increasing in r for positive data.
double interp_inverse_variate(const EcdfModel& ecdf, double r);

//! count variates drawn by the interpolated inverse transform.
std::vector<double> random_variate(const EcdfModel& ecdf, std::size_t count, RngStream rng);

//! n variates per replicate in the requested mode, then the plug-in
//! statistic. Statistic failures are rethrown with the replicate index.
BootstrapRun bootstrap_replicates(const Sample& sample, std::size_t B, BootstrapMode mode,
                                  RngStream rng,
                                  StatisticKind statistic = StatisticKind::log_sum);

//! v_boot = (1/B) sum_b (T*_b - mean(T*))^2.
double bootstrap_variance(const BootstrapRun& run);

//! Type-1 empirical quantile: order statistic at index ceil(beta * B),
//! clamped to [1, B]; beta = 0 gives the minimum.
double quantile(std::span<const double> values, double beta);

ConfidenceInterval ci_boot_normal(const Sample& sample, const BootstrapRun& run, double alpha);
ConfidenceInterval ci_boot_pivotal(const Sample& sample, const BootstrapRun& run, double alpha);
ConfidenceInterval ci_boot_percentile(const BootstrapRun& run, double alpha);

//! Studentized pivotal interval with per-replicate standard errors from a
//! nested bootstrap of size inner_B. Replicates whose nested se is zero are
//! dropped; the count lands in *dropped when given. Degenerate runs collapse
//! to [T_n, T_n].
ConfidenceInterval ci_boot_studentized(const Sample& sample, const BootstrapRun& run,
                                       double alpha, std::size_t inner_B = 25,
                                       std::size_t* dropped = nullptr);

//! Single-column CSV of replicate values.
void write_replicates_csv(const BootstrapRun& run, const std::string& path);

} // namespace plstats
