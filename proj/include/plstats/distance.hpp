#pragma once

#include <cstddef>
#include <vector>

#include "plstats/point_cloud.hpp"

namespace plstats {

//! Symmetric matrix of pairwise Euclidean distances, exactly zero diagonal.
class DistanceMatrix {
public:
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

  //! Set both (i,j) and (j,i); the diagonal stays zero.
  void set(std::size_t i, std::size_t j, double v) {
    d_[i * n_ + j] = v;
    d_[j * n_ + i] = v;
  }

private:
  std::size_t n_;
  std::vector<double> d_;
};

//! Throws std::invalid_argument on an empty cloud.
DistanceMatrix distance_matrix(const PointCloud& cloud);

} // namespace plstats
