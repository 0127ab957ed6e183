#include "plstats/point_cloud.hpp"

#include <cmath>
#include <stdexcept>

namespace plstats {

PointCloud::PointCloud(std::size_t dim, std::string label)
    : dim_(dim), label_(std::move(label)) {
  if (dim == 0) throw std::invalid_argument("PointCloud: dimension must be positive");
}

void PointCloud::add_point(std::span<const double> coords) {
  if (dim_ == 0) dim_ = coords.size();
  if (coords.size() != dim_)
    throw std::invalid_argument("PointCloud: point dimension mismatch");
  for (double c : coords)
    if (!std::isfinite(c))
      throw std::invalid_argument("PointCloud: non-finite coordinate");
  coords_.insert(coords_.end(), coords.begin(), coords.end());
}

std::span<const double> PointCloud::point(std::size_t i) const {
  return {coords_.data() + i * dim_, dim_};
}

} // namespace plstats
