#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plstats/bootstrap.hpp"
#include "plstats/density.hpp"
#include "plstats/inference.hpp"
#include "plstats/rips.hpp"
#include "plstats/sampling.hpp"

namespace plstats {

//! Substream id of the bootstrap stage under the pipeline's root stream
//! RngStream{master_seed, 0}; cloud i uses root.substream(i). Fixed so the
//! pipeline can be reproduced by chaining the CLI subcommands.
inline constexpr std::uint64_t kBootstrapSubstreamId = 1'000'000'000ULL;

struct ExperimentConfig {
  enum class ObjectKind { sphere, torus, csv };
  ObjectKind object = ObjectKind::sphere;
  double radius = 2.0;  // sphere
  double torus_R = 2.0; // torus major radius
  double torus_r = 1.0; // torus minor radius
  std::string csv_path;
  CsvColumns columns;        // csv feature selection
  bool standardize = false;  // csv per-column z-scoring

  std::size_t n_points = 1000;   // points per cloud (csv: subsample size)
  std::size_t n_diagrams = 100;  // independent clouds, one RV each

  double max_scale = 5.0; // Rips filtration limit
  int max_dim = 1;        // highest homology dimension computed
  int landscape_dim = 1;  // homology dimension fed to landscapes

  double t_min = 0.0;
  double t_max = 5.0;
  std::size_t k_levels = 1; // landscape levels in the functional

  std::size_t B = 500;
  BootstrapMode boot_mode = BootstrapMode::interp_inverse;
  std::size_t inner_B = 25;
  InfluenceMode influence = InfluenceMode::paper;
  StatisticKind statistic = StatisticKind::log_sum;

  KernelKind kernel = KernelKind::gaussian;
  double h_min = 0.002;
  double h_max = 0.3;
  double h_step = 0.002;

  double alpha = 0.05;
  std::uint64_t master_seed = 0;
  std::string output_dir = "plstats-out";
  bool emit_svg = true;
  bool emit_diagrams = false;
  std::size_t simplex_cap = kDefaultSimplexCap;
};

struct ManifestEntry {
  std::string path; // relative to output_dir
  std::uint64_t bytes = 0;
  std::string fnv1a64;
};

struct SampleStats {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct ReportBundle {
  Sample sample;
  SampleStats stats;
  std::vector<ConfidenceInterval> intervals; // normal_theory, delta, 4x bootstrap
  ConfidenceInterval kde_ci_sample;          // KDE-CDF quantiles of the Y sample
  ConfidenceInterval kde_ci_replicates;      // same surrogate over the T* replicates
  double v_boot = 0.0;
  std::size_t studentized_dropped = 0;
  RiskReport risk;
  std::vector<ManifestEntry> manifest;
};

//! Full experiment: n_diagrams clouds -> diagrams -> landscape sample -> all
//! CI methods plus KDE/CV/risk, with every artifact written under
//! config.output_dir. Deterministic per master_seed. Failures carry a stage
//! label and remove any partially written outputs.
ReportBundle run_pipeline(const ExperimentConfig& config);

//! CV sweep, KDE at h_cv, derivative-based int (f')^2, both bandwidth rules,
//! and per-h risk decompositions (histogram terms at the estimated curvature,
//! kernel terms at the normal-idealized A(f) from the sample sd).
struct FullRisk {
  RiskReport report;
  DensityEstimate kde;
};

FullRisk compute_full_risk(const Sample& sample, const Kernel& kernel, double h_min,
                           double h_max, double h_step, std::size_t grid_points = 1024,
                           std::size_t quad_points = 2048);

//! Canonical JSON for a RiskReport; shared by the pipeline and the risk
//! subcommand so both emit identical bytes.
std::string risk_report_to_json(const RiskReport& report);

//! FNV-1a 64-bit hash of a file's bytes as 16 hex digits.
std::string hash_file_fnv1a64(const std::string& path);

//! Minimal deterministic SVG line plot (no timestamps).
void write_svg_line_plot(const std::string& path, const std::vector<double>& x,
                         const std::vector<double>& y, const std::string& caption);

} // namespace plstats
