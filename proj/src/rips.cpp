#include "plstats/rips.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "plstats/errors.hpp"

namespace plstats {

namespace {

bool simplex_less(const Simplex& a, const Simplex& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.dim != b.dim) return a.dim < b.dim;
  return a.v < b.v;
}

[[noreturn]] void throw_cap(std::size_t cap) {
  throw resource_error("Rips complex exceeds the simplex cap of " + std::to_string(cap) +
                       "; lower max_scale, reduce points, or raise the cap");
}

} // namespace

FilteredComplex build_rips(const DistanceMatrix& dm, double max_scale, int max_homology_dim,
                           std::size_t simplex_cap) {
  if (!(max_scale > 0.0)) throw std::domain_error("build_rips: max_scale must be positive");
  if (max_homology_dim < 0 || max_homology_dim > 1)
    throw std::domain_error("build_rips: max_homology_dim must be 0 or 1");

  const std::size_t n = dm.size();
  FilteredComplex fc;
  fc.max_scale = max_scale;
  fc.n_vertices = n;
  fc.max_simplex_dim = max_homology_dim + 1;

  std::size_t count = n;
  if (count > simplex_cap) throw_cap(simplex_cap);
  fc.simplices.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i)
    fc.simplices.push_back(Simplex{{i, 0, 0}, 0, 0.0});

  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      const double d = dm(i, j);
      if (d <= max_scale) {
        if (++count > simplex_cap) throw_cap(simplex_cap);
        fc.simplices.push_back(Simplex{{i, j, 0}, 1, d});
      }
    }
  }

  if (max_homology_dim >= 1) {
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = i + 1; j < n; ++j) {
        const double dij = dm(i, j);
        if (dij > max_scale) continue;
        for (std::uint32_t k = j + 1; k < n; ++k) {
          const double diam = std::max(dij, std::max(dm(i, k), dm(j, k)));
          if (diam <= max_scale) {
            if (++count > simplex_cap) throw_cap(simplex_cap);
            fc.simplices.push_back(Simplex{{i, j, k}, 2, diam});
          }
        }
      }
    }
  }

  std::sort(fc.simplices.begin(), fc.simplices.end(), simplex_less);
  return fc;
}

} // namespace plstats
