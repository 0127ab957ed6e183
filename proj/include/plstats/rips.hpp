#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "plstats/distance.hpp"

namespace plstats {

//! One simplex of dimension <= 2: vertices ascending, Rips filtration value
//! (max pairwise distance; 0 for vertices).
struct Simplex {
  std::array<std::uint32_t, 3> v{0, 0, 0};
  std::uint8_t dim = 0;
  double value = 0.0;
};

//! Rips-filtered complex. Simplices are sorted by (value, dim, lex vertices),
//! which puts every face before or at the filtration value of its cofaces.
struct FilteredComplex {
  std::vector<Simplex> simplices;
  double max_scale = 0.0;
  std::size_t n_vertices = 0;
  int max_simplex_dim = 0; // highest simplex dimension materialized
};

inline constexpr std::size_t kDefaultSimplexCap = 5'000'000;

//! All simplices of dimension <= max_homology_dim + 1 with diameter <= max_scale.
//! Throws resource_error (naming the cap) if the simplex count would exceed
//! simplex_cap; throws std::domain_error for max_scale <= 0 or a homology
//! dimension outside {0,1}.
FilteredComplex build_rips(const DistanceMatrix& dm, double max_scale, int max_homology_dim,
                           std::size_t simplex_cap = kDefaultSimplexCap);

} // namespace plstats
