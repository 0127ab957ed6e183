#pragma once

#include <vector>

#include "plstats/landscape.hpp"

namespace plstats {

//! Empirical CDF: right-continuous step function putting mass 1/n at each
//! data point. Ties are handled by <= counting.
class EcdfModel {
public:
  explicit EcdfModel(std::vector<double> values);
  explicit EcdfModel(const Sample& sample) : EcdfModel(sample.values) {}

  //! F(x) = (#values <= x) / n.
  [[nodiscard]] double operator()(double x) const;

  [[nodiscard]] const std::vector<double>& sorted_values() const { return sorted_; }
  [[nodiscard]] std::size_t size() const { return sorted_.size(); }

private:
  std::vector<double> sorted_;
};

} // namespace plstats
