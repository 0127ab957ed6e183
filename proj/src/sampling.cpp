#include "plstats/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "plstats/csv.hpp"
#include "plstats/errors.hpp"

namespace plstats {

PointCloud sample_sphere(std::size_t n, double radius, RngStream rng) {
  if (!(radius > 0.0)) throw std::domain_error("sample_sphere: radius must be positive");
  PointCloud cloud(3, "sphere(radius=" + format_double(radius) + ")");
  cloud.seed = rng.key();
  Rng gen(rng);
  for (std::size_t i = 0; i < n; ++i) {
    double x, y, z, norm;
    do {
      x = gen.normal();
      y = gen.normal();
      z = gen.normal();
      norm = std::sqrt(x * x + y * y + z * z);
    } while (norm < 1e-12);
    const double s = radius / norm;
    const double p[3] = {x * s, y * s, z * s};
    cloud.add_point(p);
  }
  return cloud;
}

PointCloud sample_torus(std::size_t n, double R, double r, RngStream rng) {
  if (!(R > 0.0) || !(r > 0.0)) throw std::domain_error("sample_torus: radii must be positive");
  if (r >= R)
    throw std::domain_error("sample_torus: requires r < R (self-intersecting torus unsupported)");
  PointCloud cloud(3, "torus(R=" + format_double(R) + ",r=" + format_double(r) + ")");
  cloud.seed = rng.key();
  Rng gen(rng);
  const double ratio = r / R;
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i) {
    // tube angle by rejection against 1 + (r/R) cos(theta)
    double theta;
    for (;;) {
      theta = gen.uniform(0.0, two_pi);
      const double u = gen.uniform(0.0, 1.0 + ratio);
      if (u <= 1.0 + ratio * std::cos(theta)) break;
    }
    const double phi = gen.uniform(0.0, two_pi);
    const double w = R + r * std::cos(theta);
    const double p[3] = {w * std::cos(phi), w * std::sin(phi), r * std::sin(theta)};
    cloud.add_point(p);
  }
  return cloud;
}

namespace {

bool integral_valued(double v) { return v == std::floor(v); }

//! auto_detect rule: keep columns that are numeric everywhere; drop a leading
//! id-like column (all integral and distinct) when >= 2 columns remain.
std::vector<std::size_t> resolve_columns(const CsvTable& table, const CsvColumns& sel) {
  const std::size_t ncols = table.rows.empty() ? 0 : table.rows[0].size();
  switch (sel.mode) {
    case CsvColumns::Mode::indices:
      return sel.indices;
    case CsvColumns::Mode::all: {
      std::vector<std::size_t> idx(ncols);
      for (std::size_t c = 0; c < ncols; ++c) idx[c] = c;
      return idx;
    }
    case CsvColumns::Mode::auto_detect:
      break;
  }
  std::vector<std::size_t> numeric;
  for (std::size_t c = 0; c < ncols; ++c) {
    bool ok = true;
    for (const auto& row : table.rows) {
      if (c >= row.size() || !cell_is_numeric(row[c])) { ok = false; break; }
    }
    if (ok) numeric.push_back(c);
  }
  if (numeric.size() >= 3 && !numeric.empty() && numeric.front() == 0) {
    bool id_like = true;
    std::vector<double> seen;
    seen.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size() && id_like; ++i) {
      const double v = parse_cell(table.rows[i][0], i, 0);
      if (!integral_valued(v)) id_like = false;
      seen.push_back(v);
    }
    if (id_like) {
      std::sort(seen.begin(), seen.end());
      id_like = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
    }
    if (id_like) numeric.erase(numeric.begin());
  }
  return numeric;
}

} // namespace

PointCloud load_csv(const std::string& path, const CsvColumns& columns,
                    std::optional<std::size_t> subsample, RngStream rng, bool standardize) {
  CsvTable table = read_csv(path);
  const std::size_t nrows = table.rows.size();
  const std::vector<std::size_t> cols = resolve_columns(table, columns);
  if (cols.empty()) throw parse_error("no usable feature columns in " + path);

  std::vector<std::size_t> row_idx(nrows);
  for (std::size_t i = 0; i < nrows; ++i) row_idx[i] = i;
  if (subsample && *subsample < nrows) {
    // partial Fisher-Yates, then restore input order
    Rng gen(rng);
    for (std::size_t i = 0; i < *subsample; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(gen.below(nrows - i));
      std::swap(row_idx[i], row_idx[j]);
    }
    row_idx.resize(*subsample);
    std::sort(row_idx.begin(), row_idx.end());
  } else if (subsample && *subsample > nrows) {
    throw std::invalid_argument("subsample (" + std::to_string(*subsample) +
                                ") exceeds row count (" + std::to_string(nrows) + ")");
  }

  PointCloud cloud(cols.size(), path);
  cloud.seed = rng.key();
  std::vector<double> point(cols.size());
  for (std::size_t i : row_idx) {
    const auto& row = table.rows[i];
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const std::size_t c = cols[k];
      if (c >= row.size())
        throw parse_error("row " + std::to_string(i) + " has no column " + std::to_string(c));
      point[k] = parse_cell(row[c], i, c);
    }
    cloud.add_point(point);
  }

  if (standardize && cloud.size() > 0) {
    const std::size_t n = cloud.size(), d = cloud.dim();
    PointCloud scaled(d, cloud.label());
    scaled.seed = cloud.seed;
    std::vector<double> mean(d, 0.0), sd(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      auto p = cloud.point(i);
      for (std::size_t k = 0; k < d; ++k) mean[k] += p[k];
    }
    for (std::size_t k = 0; k < d; ++k) mean[k] /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto p = cloud.point(i);
      for (std::size_t k = 0; k < d; ++k) sd[k] += (p[k] - mean[k]) * (p[k] - mean[k]);
    }
    for (std::size_t k = 0; k < d; ++k)
      sd[k] = n > 1 ? std::sqrt(sd[k] / static_cast<double>(n - 1)) : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      auto p = cloud.point(i);
      for (std::size_t k = 0; k < d; ++k)
        point[k] = sd[k] > 0.0 ? (p[k] - mean[k]) / sd[k] : 0.0;
      scaled.add_point(point);
    }
    return scaled;
  }
  return cloud;
}

void write_cloud_csv(const PointCloud& cloud, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write file: " + path);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto p = cloud.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) out << ',';
      out << format_double(p[k]);
    }
    out << '\n';
  }
}

} // namespace plstats
