#include "plstats/ecdf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace plstats {

EcdfModel::EcdfModel(std::vector<double> values) : sorted_(std::move(values)) {
  if (sorted_.empty()) throw std::invalid_argument("EcdfModel: empty sample");
  for (double v : sorted_)
    if (!std::isfinite(v)) throw std::invalid_argument("EcdfModel: non-finite value");
  std::sort(sorted_.begin(), sorted_.end());
}

double EcdfModel::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

} // namespace plstats
