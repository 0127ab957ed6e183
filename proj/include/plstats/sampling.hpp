#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plstats/point_cloud.hpp"
#include "plstats/rng.hpp"

namespace plstats {

//! n points uniform on the sphere of given radius in R^3
//! (normalized Gaussian triples, rejection-free).
PointCloud sample_sphere(std::size_t n, double radius, RngStream rng);

//! n points uniform w.r.t. surface area on the torus
//! (R - sqrt(x^2+y^2))^2 + z^2 = r^2, 0 < r < R. The tube angle is drawn
//! by rejection against the density proportional to 1 + (r/R) cos(theta).
PointCloud sample_torus(std::size_t n, double R, double r, RngStream rng);

//! Column selector for CSV ingestion.
//!
//! auto_detect keeps every column whose cells all parse as finite reals and
//! additionally drops a leading id-like column (all integral, all distinct,
//! at least two other columns remain). This makes WDBC-style files load as
//! their 30 feature columns without flags; use all/indices to override.
struct CsvColumns {
  enum class Mode { auto_detect, all, indices };
  Mode mode = Mode::auto_detect;
  std::vector<std::size_t> indices;

  static CsvColumns auto_detect() { return {}; }
  static CsvColumns all() { return {Mode::all, {}}; }
  static CsvColumns at(std::vector<std::size_t> idx) { return {Mode::indices, std::move(idx)}; }
};

//! Rows of a CSV file become points. An optional header row is auto-detected
//! (non-numeric first row). When subsample is given and smaller than the row
//! count, rows are drawn uniformly without replacement using rng, keeping
//! input order. standardize applies per-column z-scoring after selection.
//!
//! Errors: io_error (missing file), parse_error (unparsable selected cell),
//! std::invalid_argument (subsample > rows).
PointCloud load_csv(const std::string& path, const CsvColumns& columns,
                    std::optional<std::size_t> subsample, RngStream rng,
                    bool standardize = false);

//! One point per row, coordinates only, locale-free %.17g formatting.
void write_cloud_csv(const PointCloud& cloud, const std::string& path);

} // namespace plstats
