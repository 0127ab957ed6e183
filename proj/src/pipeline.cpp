#include "plstats/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "plstats/csv.hpp"
#include "plstats/errors.hpp"
#include "plstats/persistence.hpp"

namespace plstats {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

//! Rethrow the current module error with a stage label, preserving the type.
template <typename Fn>
auto stage(const char* name, Fn&& fn) {
  try {
    return fn();
  } catch (const io_error& e) {
    throw io_error(std::string(name) + ": " + e.what());
  } catch (const parse_error& e) {
    throw parse_error(std::string(name) + ": " + e.what());
  } catch (const resource_error& e) {
    throw resource_error(std::string(name) + ": " + e.what());
  } catch (const std::domain_error& e) {
    throw std::domain_error(std::string(name) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(name) + ": " + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string(name) + ": " + e.what());
  }
}

SampleStats compute_stats(const Sample& sample) {
  SampleStats s;
  s.n = sample.size();
  if (s.n == 0) return s;
  s.min = s.max = sample.values.front();
  for (double v : sample.values) {
    s.mean += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.mean /= static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : sample.values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  return s;
}

json number_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

json ci_json(const ConfidenceInterval& ci) {
  return json{{"method", ci_method_name(ci.method)},
              {"level", ci.level},
              {"lower", ci.lower},
              {"upper", ci.upper},
              {"statistic", ci.statistic_value}};
}

const char* object_name(ExperimentConfig::ObjectKind kind) {
  switch (kind) {
    case ExperimentConfig::ObjectKind::sphere: return "sphere";
    case ExperimentConfig::ObjectKind::torus: return "torus";
    case ExperimentConfig::ObjectKind::csv: return "csv";
  }
  return "unknown";
}

json config_json(const ExperimentConfig& c) {
  json j;
  j["object"] = object_name(c.object);
  j["radius"] = c.radius;
  j["torus_R"] = c.torus_R;
  j["torus_r"] = c.torus_r;
  j["csv_path"] = c.csv_path;
  j["standardize"] = c.standardize;
  j["n_points"] = c.n_points;
  j["n_diagrams"] = c.n_diagrams;
  j["max_scale"] = c.max_scale;
  j["max_dim"] = c.max_dim;
  j["landscape_dim"] = c.landscape_dim;
  j["t_min"] = c.t_min;
  j["t_max"] = c.t_max;
  j["k_levels"] = c.k_levels;
  j["B"] = c.B;
  j["boot_mode"] = bootstrap_mode_name(c.boot_mode);
  j["inner_B"] = c.inner_B;
  j["influence"] = c.influence == InfluenceMode::paper ? "paper" : "corrected";
  j["statistic"] = statistic_name(c.statistic);
  j["kernel"] = Kernel{c.kernel}.name();
  j["h_min"] = c.h_min;
  j["h_max"] = c.h_max;
  j["h_step"] = c.h_step;
  j["alpha"] = c.alpha;
  j["master_seed"] = c.master_seed;
  j["simplex_cap"] = c.simplex_cap;
  return j;
}

//! Collects written files and removes them if the run fails mid-write.
class OutputTracker {
public:
  explicit OutputTracker(fs::path root) : root_(std::move(root)) {}

  std::string file(const std::string& rel) {
    written_.push_back(rel);
    const fs::path p = root_ / rel;
    fs::create_directories(p.parent_path());
    return p.string();
  }

  void rollback() {
    for (const auto& rel : written_) {
      std::error_code ec;
      fs::remove(root_ / rel, ec);
    }
  }

  [[nodiscard]] std::vector<ManifestEntry> manifest() const {
    std::vector<ManifestEntry> entries;
    for (const auto& rel : written_) {
      ManifestEntry e;
      e.path = rel;
      e.bytes = fs::file_size(root_ / rel);
      e.fnv1a64 = hash_file_fnv1a64((root_ / rel).string());
      entries.push_back(std::move(e));
    }
    return entries;
  }

private:
  fs::path root_;
  std::vector<std::string> written_;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot write file: " + path);
  out << text;
}

} // namespace

FullRisk compute_full_risk(const Sample& sample, const Kernel& kernel, double h_min,
                           double h_max, double h_step, std::size_t grid_points,
                           std::size_t quad_points) {
  FullRisk full;
  full.report = select_bandwidth(sample, kernel, h_min, h_max, h_step, quad_points);
  full.kde = kde(sample, full.report.h_cv, kernel,
                 kde_grid(sample, full.report.h_cv, kernel, grid_points));

  const auto deriv = estimate_density_derivative(sample, full.report.h_cv, full.kde);
  full.report.derivative_skipped = deriv.skipped;
  full.report.int_fprime_sq = integral_fprime_sq(deriv);
  if (full.report.int_fprime_sq > 0.0)
    full.report.h_star_hist =
        histogram_optimal_binwidth(sample.size(), full.report.int_fprime_sq);

  const SampleStats stats = compute_stats(sample);
  if (stats.sd > 0.0 && sample.size() >= 2)
    full.report.h_star_kernel = normal_reference_bandwidth(sample, kernel);

  const double a_normal =
      stats.sd > 0.0 ? 3.0 / (8.0 * std::sqrt(std::numbers::pi) * std::pow(stats.sd, 5))
                     : std::numeric_limits<double>::quiet_NaN();
  for (double h : full.report.h_grid) {
    full.report.hist_terms.push_back(estimated_risk(
        sample.size(), h, std::max(full.report.int_fprime_sq, 0.0), RiskMode::histogram));
    if (std::isnan(a_normal)) {
      full.report.kernel_terms.push_back({std::numeric_limits<double>::quiet_NaN(),
                                          std::numeric_limits<double>::quiet_NaN(),
                                          std::numeric_limits<double>::quiet_NaN()});
    } else {
      full.report.kernel_terms.push_back(
          estimated_risk(sample.size(), h, 0.0, RiskMode::kernel, &kernel, a_normal));
    }
  }
  return full;
}

std::string risk_report_to_json(const RiskReport& report) {
  json risk;
  risk["h_grid"] = report.h_grid;
  risk["j_scores"] = report.j_scores;
  risk["h_cv"] = report.h_cv;
  risk["h_star_hist"] = number_or_null(report.h_star_hist);
  risk["h_star_kernel"] = number_or_null(report.h_star_kernel);
  risk["int_fprime_sq"] = number_or_null(report.int_fprime_sq);
  risk["derivative_skipped"] = report.derivative_skipped;
  json terms = json::array();
  for (std::size_t i = 0; i < report.h_grid.size(); ++i) {
    const RiskTerms ht = i < report.hist_terms.size() ? report.hist_terms[i] : RiskTerms{};
    const RiskTerms kt = i < report.kernel_terms.size() ? report.kernel_terms[i] : RiskTerms{};
    terms.push_back(json{{"h", report.h_grid[i]},
                         {"histogram", json{{"bias", number_or_null(ht.bias)},
                                            {"variance", number_or_null(ht.variance)},
                                            {"total", number_or_null(ht.total)}}},
                         {"kernel", json{{"bias", number_or_null(kt.bias)},
                                         {"variance", number_or_null(kt.variance)},
                                         {"total", number_or_null(kt.total)}}}});
  }
  risk["risk_terms"] = terms;
  return risk.dump(2) + "\n";
}

std::string hash_file_fnv1a64(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open file for hashing: " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[4096];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
    if (!in) break;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

void write_svg_line_plot(const std::string& path, const std::vector<double>& x,
                         const std::vector<double>& y, const std::string& caption) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("write_svg_line_plot: need two or more points");
  const double w = 640.0, h = 400.0, margin = 40.0;
  const auto [xmin_it, xmax_it] = std::minmax_element(x.begin(), x.end());
  const auto [ymin_it, ymax_it] = std::minmax_element(y.begin(), y.end());
  const double xmin = *xmin_it, xmax = *xmax_it;
  const double ymin = std::min(*ymin_it, 0.0), ymax = *ymax_it;
  const double xspan = xmax > xmin ? xmax - xmin : 1.0;
  const double yspan = ymax > ymin ? ymax - ymin : 1.0;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
         "viewBox=\"0 0 640 400\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"400\" fill=\"white\"/>\n";
  svg += "<text x=\"320\" y=\"20\" text-anchor=\"middle\" font-family=\"monospace\" "
         "font-size=\"13\">" + caption + "</text>\n";
  svg += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
  char buf[64];
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double px = margin + (x[i] - xmin) / xspan * (w - 2 * margin);
    const double py = h - margin - (y[i] - ymin) / yspan * (h - 2 * margin);
    std::snprintf(buf, sizeof buf, "%.3f,%.3f ", px, py);
    svg += buf;
  }
  svg += "\"/>\n</svg>\n";
  write_text(path, svg);
}

ReportBundle run_pipeline(const ExperimentConfig& config) {
  if (config.n_diagrams == 0)
    throw std::invalid_argument("pipeline: n_diagrams must be >= 1");
  const RngStream root{config.master_seed, 0};

  // all computation happens before any file is written
  std::vector<PersistenceDiagram> diagrams;
  diagrams.reserve(config.n_diagrams);
  std::vector<PointCloud> clouds = stage("sample", [&] {
    std::vector<PointCloud> out;
    out.reserve(config.n_diagrams);
    for (std::size_t i = 0; i < config.n_diagrams; ++i) {
      const RngStream s = root.substream(i);
      switch (config.object) {
        case ExperimentConfig::ObjectKind::sphere:
          out.push_back(sample_sphere(config.n_points, config.radius, s));
          break;
        case ExperimentConfig::ObjectKind::torus:
          out.push_back(sample_torus(config.n_points, config.torus_R, config.torus_r, s));
          break;
        case ExperimentConfig::ObjectKind::csv:
          out.push_back(
              load_csv(config.csv_path, config.columns, config.n_points, s, config.standardize));
          break;
      }
    }
    return out;
  });

  stage("persistence", [&] {
    for (const auto& cloud : clouds) {
      const DistanceMatrix dm = distance_matrix(cloud);
      const FilteredComplex fc =
          build_rips(dm, config.max_scale, config.max_dim, config.simplex_cap);
      diagrams.push_back(compute_persistence(fc));
    }
    return 0;
  });
  clouds.clear();
  clouds.shrink_to_fit();

  ReportBundle bundle;
  const double bound = std::max(std::abs(config.t_min), std::abs(config.t_max));
  bundle.sample = stage("landscape", [&] {
    return sample_from_diagrams(diagrams, config.landscape_dim, config.k_levels, bound,
                                config.t_min, config.t_max);
  });
  bundle.stats = compute_stats(bundle.sample);

  BootstrapRun run;
  stage("ci", [&] {
    bundle.intervals.push_back(normal_theory_ci(bundle.sample, config.alpha));
    bundle.intervals.push_back(
        delta_ci(bundle.sample, config.alpha, config.statistic, config.influence));
    run = bootstrap_replicates(bundle.sample, config.B, config.boot_mode,
                               root.substream(kBootstrapSubstreamId), config.statistic);
    bundle.v_boot = bootstrap_variance(run);
    bundle.intervals.push_back(ci_boot_normal(bundle.sample, run, config.alpha));
    bundle.intervals.push_back(ci_boot_pivotal(bundle.sample, run, config.alpha));
    bundle.intervals.push_back(ci_boot_studentized(bundle.sample, run, config.alpha,
                                                   config.inner_B,
                                                   &bundle.studentized_dropped));
    bundle.intervals.push_back(ci_boot_percentile(run, config.alpha));
    return 0;
  });

  const Kernel kernel{config.kernel};
  DensityEstimate kde_sample, kde_replicates;
  stage("density", [&] {
    FullRisk full = compute_full_risk(bundle.sample, kernel, config.h_min, config.h_max,
                                      config.h_step);
    bundle.risk = std::move(full.report);
    kde_sample = std::move(full.kde);
    bundle.kde_ci_sample = kde_interval(kde_sample, config.alpha);

    Sample replicate_sample;
    replicate_sample.values = run.replicates;
    replicate_sample.meta = "bootstrap replicates";
    const RiskReport rep_cv = select_bandwidth(replicate_sample, kernel, config.h_min,
                                               config.h_max, config.h_step);
    kde_replicates = kde(replicate_sample, rep_cv.h_cv, kernel,
                         kde_grid(replicate_sample, rep_cv.h_cv, kernel));
    bundle.kde_ci_replicates = kde_interval(kde_replicates, config.alpha);
    return 0;
  });

  // write stage: anything partially written is removed on failure
  OutputTracker tracker{fs::path(config.output_dir)};
  try {
    stage("write", [&] {
      fs::create_directories(config.output_dir);
      write_text(tracker.file("run_config.json"), config_json(config).dump(2) + "\n");
      write_sample_csv(bundle.sample, tracker.file("sample.csv"));
      write_replicates_csv(run, tracker.file("replicates.csv"));
      if (config.emit_diagrams) {
        char name[48];
        for (std::size_t i = 0; i < diagrams.size(); ++i) {
          std::snprintf(name, sizeof name, "diagrams/diagram_%04zu.csv", i);
          write_diagram_csv(diagrams[i], tracker.file(name));
        }
      }

      json intervals;
      intervals["alpha"] = config.alpha;
      intervals["statistic"] = statistic_name(config.statistic);
      intervals["statistic_value"] = plugin_statistic(bundle.sample, config.statistic);
      intervals["influence_mode"] =
          config.influence == InfluenceMode::paper ? "paper" : "corrected";
      intervals["sample_stats"] = json{{"n", bundle.stats.n},
                                       {"mean", bundle.stats.mean},
                                       {"sd", bundle.stats.sd},
                                       {"min", bundle.stats.min},
                                       {"max", bundle.stats.max}};
      intervals["bootstrap"] = json{{"B", run.B},
                                    {"mode", bootstrap_mode_name(run.mode)},
                                    {"inner_B", config.inner_B},
                                    {"v_boot", bundle.v_boot},
                                    {"studentized_dropped", bundle.studentized_dropped}};
      json arr = json::array();
      for (const auto& ci : bundle.intervals) arr.push_back(ci_json(ci));
      json kde_s = ci_json(bundle.kde_ci_sample);
      kde_s["target"] = "sample";
      json kde_r = ci_json(bundle.kde_ci_replicates);
      kde_r["target"] = "bootstrap_replicates";
      arr.push_back(kde_s);
      arr.push_back(kde_r);
      intervals["intervals"] = arr;
      write_text(tracker.file("intervals.json"), intervals.dump(2) + "\n");

      std::string summary = "method,lower,upper,width\n";
      const auto add_row = [&summary](const char* name, const ConfidenceInterval& ci) {
        summary += std::string(name) + "," + format_double(ci.lower) + "," +
                   format_double(ci.upper) + "," + format_double(ci.upper - ci.lower) + "\n";
      };
      for (const auto& ci : bundle.intervals) add_row(ci_method_name(ci.method), ci);
      add_row("kde_quantile_sample", bundle.kde_ci_sample);
      add_row("kde_quantile_replicates", bundle.kde_ci_replicates);
      write_text(tracker.file("summary.csv"), summary);

      write_density_csv(kde_sample, tracker.file("density_sample.csv"));
      write_density_csv(kde_replicates, tracker.file("density_replicates.csv"));

      std::string cv = "h,j_score\n";
      for (std::size_t i = 0; i < bundle.risk.h_grid.size(); ++i)
        cv += format_double(bundle.risk.h_grid[i]) + "," +
              format_double(bundle.risk.j_scores[i]) + "\n";
      write_text(tracker.file("cv_scores.csv"), cv);

      json risk;
      risk["h_grid"] = bundle.risk.h_grid;
      risk["j_scores"] = bundle.risk.j_scores;
      risk["h_cv"] = bundle.risk.h_cv;
      risk["h_star_hist"] = number_or_null(bundle.risk.h_star_hist);
      risk["h_star_kernel"] = number_or_null(bundle.risk.h_star_kernel);
      risk["int_fprime_sq"] = number_or_null(bundle.risk.int_fprime_sq);
      risk["derivative_skipped"] = bundle.risk.derivative_skipped;
      json terms = json::array();
      for (std::size_t i = 0; i < bundle.risk.h_grid.size(); ++i) {
        const auto& ht = bundle.risk.hist_terms[i];
        const auto& kt = bundle.risk.kernel_terms[i];
        terms.push_back(json{
            {"h", bundle.risk.h_grid[i]},
            {"histogram", json{{"bias", number_or_null(ht.bias)},
                               {"variance", number_or_null(ht.variance)},
                               {"total", number_or_null(ht.total)}}},
            {"kernel", json{{"bias", number_or_null(kt.bias)},
                            {"variance", number_or_null(kt.variance)},
                            {"total", number_or_null(kt.total)}}}});
      }
      risk["risk_terms"] = terms;
      write_text(tracker.file("risk.json"), risk.dump(2) + "\n");

      if (config.emit_svg) {
        write_svg_line_plot(tracker.file("density.svg"), kde_sample.grid, kde_sample.values,
                            "kernel density of landscape sample");
        write_svg_line_plot(tracker.file("cv.svg"), bundle.risk.h_grid, bundle.risk.j_scores,
                            "cross-validation score by bandwidth");
      }

      bundle.manifest = tracker.manifest();
      json manifest;
      json files = json::array();
      for (const auto& e : bundle.manifest)
        files.push_back(json{{"path", e.path}, {"bytes", e.bytes}, {"fnv1a64", e.fnv1a64}});
      manifest["files"] = files;
      write_text((fs::path(config.output_dir) / "manifest.json").string(),
                 manifest.dump(2) + "\n");
      return 0;
    });
  } catch (...) {
    tracker.rollback();
    throw;
  }

  return bundle;
}

} // namespace plstats
