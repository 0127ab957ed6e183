#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace plstats {

//! Finite set of points in R^dim, flat row-major storage.
//! All points share the dimension and every coordinate is a finite real.
class PointCloud {
public:
  PointCloud() = default;
  PointCloud(std::size_t dim, std::string label);

  //! Append one point; throws std::invalid_argument on dimension mismatch
  //! or non-finite coordinates.
  void add_point(std::span<const double> coords);

  [[nodiscard]] std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] bool empty() const { return coords_.empty(); }
  [[nodiscard]] std::span<const double> point(std::size_t i) const;
  [[nodiscard]] const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  //! Seed lineage of the sampler that produced this cloud, if any.
  std::optional<std::uint64_t> seed;

private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
  std::string label_;
};

} // namespace plstats
