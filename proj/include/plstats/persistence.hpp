#pragma once

#include <limits>
#include <string>
#include <vector>

#include "plstats/rips.hpp"

namespace plstats {

//! Death value standing for a class that never dies within the filtration.
inline constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

struct PersistenceInterval {
  double birth = 0.0;
  double death = kInfiniteDeath;
  int dim = 0;
};

//! Multiset of birth/death intervals per homology dimension. Zero-length
//! intervals are discarded at construction. max_scale is carried along so
//! infinite bars can be truncated consistently at landscape time.
struct PersistenceDiagram {
  std::vector<PersistenceInterval> intervals;
  double max_scale = 0.0;
};

enum class ReductionMode {
  clearing, // dimension-by-dimension with cleared birth columns (default)
  naive     // single left-to-right pass, kept for oracle cross-checks
};

//! Boundary-matrix reduction over GF(2) in filtration order. Reports homology
//! dimensions strictly below the highest simplex dimension materialized in fc
//! (dim 0 only when fc stops at edges, dims 0 and 1 when it has triangles).
PersistenceDiagram compute_persistence(const FilteredComplex& fc,
                                       ReductionMode mode = ReductionMode::clearing);

//! Number of intervals of the given dimension with birth <= b and death >= d;
//! the infinite death counts as >= any d. Throws std::domain_error if b > d.
std::size_t betti_rank(const PersistenceDiagram& diag, double b, double d, int dim);

//! CSV with header dim,birth,death; infinite deaths use the literal token inf.
void write_diagram_csv(const PersistenceDiagram& diag, const std::string& path);
PersistenceDiagram read_diagram_csv(const std::string& path);

} // namespace plstats
