#include "plstats/distance.hpp"

#include <cmath>
#include <stdexcept>

namespace plstats {

DistanceMatrix distance_matrix(const PointCloud& cloud) {
  if (cloud.empty()) throw std::invalid_argument("distance_matrix: empty point cloud");
  const std::size_t n = cloud.size();
  DistanceMatrix dm(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto pi = cloud.point(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto pj = cloud.point(j);
      double s = 0.0;
      for (std::size_t k = 0; k < pi.size(); ++k) {
        const double d = pi[k] - pj[k];
        s += d * d;
      }
      dm.set(i, j, std::sqrt(s));
    }
  }
  return dm;
}

} // namespace plstats
