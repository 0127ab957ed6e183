#pragma once

#include <string>
#include <vector>

#include "plstats/persistence.hpp"

namespace plstats {

struct LandscapePoint {
  double t = 0.0;
  double value = 0.0;
};

//! Exact piecewise-linear persistence landscape: levels[k-1] holds the
//! critical points of lambda_k sorted by t. Levels are pointwise ordered
//! (lambda_k >= lambda_{k+1}) and 1-Lipschitz; the value is 0 at and outside
//! the support endpoints.
struct PersistenceLandscape {
  std::vector<std::vector<LandscapePoint>> levels;
  double t_min = 0.0;
  double t_max = 0.0;
  int homology_dim = 0;
};

//! Levels 1..k_max of the landscape of the given homology dimension,
//! restricted to [t_min, t_max]. Infinite deaths are truncated to the
//! diagram's max_scale before tents are formed. Exact critical points,
//! no grid discretization.
PersistenceLandscape landscape_from_diagram(const PersistenceDiagram& diag, int dim,
                                            std::size_t k_max, double t_min, double t_max);

//! lambda_k(t) by linear interpolation; 0 for k beyond stored levels or t
//! outside the support.
double evaluate(const PersistenceLandscape& ls, std::size_t k, double t);

//! Y = sum_{k<=k_levels} integral of lambda_k over [-bound, bound].
//! Trapezoid on the critical points, which is exact for piecewise-linear
//! levels.
double landscape_functional(const PersistenceLandscape& ls, double bound,
                            std::size_t k_levels);

//! Ordered vector of landscape random variables with provenance notes.
struct Sample {
  std::vector<double> values;
  std::string meta;

  [[nodiscard]] std::size_t size() const { return values.size(); }
};

//! Y_i = landscape_functional(landscape_from_diagram(diagrams[i], ...)).
//! Throws std::invalid_argument on an empty list; per-diagram failures are
//! rethrown with the diagram index prepended.
Sample sample_from_diagrams(const std::vector<PersistenceDiagram>& diagrams, int dim,
                            std::size_t k_levels, double bound, double t_min, double t_max);

//! CSV of k,t,value critical points.
void write_landscape_csv(const PersistenceLandscape& ls, const std::string& path);

//! Single-column CSV of Y values.
void write_sample_csv(const Sample& sample, const std::string& path);
Sample read_sample_csv(const std::string& path);

} // namespace plstats
