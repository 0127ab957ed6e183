#include "plstats/persistence.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include "plstats/csv.hpp"
#include "plstats/errors.hpp"

namespace plstats {

namespace {

using Column = std::vector<std::uint32_t>;

//! GF(2) column addition: symmetric difference of sorted row-index lists.
void add_into(Column& a, const Column& b, Column& scratch) {
  scratch.clear();
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) scratch.push_back(a[i++]);
    else if (b[j] < a[i]) scratch.push_back(b[j++]);
    else { ++i; ++j; }
  }
  scratch.insert(scratch.end(), a.begin() + i, a.end());
  scratch.insert(scratch.end(), b.begin() + j, b.end());
  a.swap(scratch);
}

struct Reducer {
  std::unordered_map<std::uint32_t, std::uint32_t> owner; // pivot row -> stored column slot
  std::vector<Column> stored;
  Column scratch;

  //! Reduce col in place; returns true if a pivot remains (col kills its low).
  bool reduce(Column& col) {
    while (!col.empty()) {
      auto it = owner.find(col.back());
      if (it == owner.end()) return true;
      add_into(col, stored[it->second], scratch);
    }
    return false;
  }

  void keep(Column&& col) {
    owner.emplace(col.back(), static_cast<std::uint32_t>(stored.size()));
    stored.push_back(std::move(col));
  }
};

struct BoundaryIndex {
  const FilteredComplex& fc;
  std::unordered_map<std::uint64_t, std::uint32_t> edge_index;

  explicit BoundaryIndex(const FilteredComplex& f) : fc(f) {
    for (std::uint32_t g = 0; g < fc.simplices.size(); ++g) {
      const Simplex& s = fc.simplices[g];
      if (s.dim == 1) edge_index.emplace(edge_key(s.v[0], s.v[1]), g);
    }
  }

  std::uint64_t edge_key(std::uint32_t u, std::uint32_t v) const {
    return static_cast<std::uint64_t>(u) * fc.n_vertices + v;
  }

  Column boundary(std::uint32_t g) const {
    const Simplex& s = fc.simplices[g];
    if (s.dim == 0) return {};
    if (s.dim == 1) return {s.v[0], s.v[1]}; // vertex u occupies global slot u
    Column col = {edge_index.at(edge_key(s.v[0], s.v[1])),
                  edge_index.at(edge_key(s.v[0], s.v[2])),
                  edge_index.at(edge_key(s.v[1], s.v[2]))};
    std::sort(col.begin(), col.end());
    return col;
  }
};

void emit(PersistenceDiagram& diag, double birth, double death, int dim) {
  if (birth == death) return; // zero-length intervals contribute nothing downstream
  diag.intervals.push_back({birth, death, dim});
}

void canonical_sort(PersistenceDiagram& diag) {
  std::sort(diag.intervals.begin(), diag.intervals.end(),
            [](const PersistenceInterval& a, const PersistenceInterval& b) {
              if (a.dim != b.dim) return a.dim < b.dim;
              if (a.birth != b.birth) return a.birth < b.birth;
              return a.death < b.death;
            });
}

PersistenceDiagram reduce_clearing(const FilteredComplex& fc, const BoundaryIndex& bd) {
  const std::uint32_t m = static_cast<std::uint32_t>(fc.simplices.size());
  PersistenceDiagram diag;
  diag.max_scale = fc.max_scale;

  // dimension 2 first; its pivots are exactly the edges that create 1-cycles
  std::vector<char> edge_is_birth(m, 0);
  if (fc.max_simplex_dim >= 2) {
    Reducer r2;
    for (std::uint32_t g = 0; g < m; ++g) {
      if (fc.simplices[g].dim != 2) continue;
      Column col = bd.boundary(g);
      if (r2.reduce(col)) {
        const std::uint32_t low = col.back();
        edge_is_birth[low] = 1;
        emit(diag, fc.simplices[low].value, fc.simplices[g].value, 1);
        r2.keep(std::move(col));
      }
    }
  }

  // dimension 1: cleared birth columns are skipped, the rest pair vertices
  std::vector<char> vertex_dies(fc.n_vertices, 0);
  Reducer r1;
  for (std::uint32_t g = 0; g < m; ++g) {
    if (fc.simplices[g].dim != 1) continue;
    if (edge_is_birth[g]) continue;
    Column col = bd.boundary(g);
    if (r1.reduce(col)) {
      const std::uint32_t low = col.back();
      vertex_dies[low] = 1;
      emit(diag, 0.0, fc.simplices[g].value, 0);
      r1.keep(std::move(col));
    } else if (fc.max_simplex_dim >= 2) {
      emit(diag, fc.simplices[g].value, kInfiniteDeath, 1); // 1-cycle no triangle kills
    }
  }

  for (std::uint32_t v = 0; v < fc.n_vertices; ++v)
    if (!vertex_dies[v]) emit(diag, 0.0, kInfiniteDeath, 0);

  canonical_sort(diag);
  return diag;
}

PersistenceDiagram reduce_naive(const FilteredComplex& fc, const BoundaryIndex& bd) {
  const std::uint32_t m = static_cast<std::uint32_t>(fc.simplices.size());
  PersistenceDiagram diag;
  diag.max_scale = fc.max_scale;

  Reducer r;
  std::vector<char> is_birth(m, 0); // simplex became the pivot of a later column
  std::vector<char> is_creator(m, 0);
  for (std::uint32_t g = 0; g < m; ++g) {
    Column col = bd.boundary(g);
    if (r.reduce(col)) {
      const std::uint32_t low = col.back();
      is_birth[low] = 1;
      emit(diag, fc.simplices[low].value, fc.simplices[g].value, fc.simplices[low].dim);
      r.keep(std::move(col));
    } else {
      is_creator[g] = 1;
    }
  }
  for (std::uint32_t g = 0; g < m; ++g) {
    if (!is_creator[g] || is_birth[g]) continue;
    const int dim = fc.simplices[g].dim;
    if (dim < fc.max_simplex_dim) emit(diag, fc.simplices[g].value, kInfiniteDeath, dim);
  }

  canonical_sort(diag);
  return diag;
}

} // namespace

PersistenceDiagram compute_persistence(const FilteredComplex& fc, ReductionMode mode) {
  BoundaryIndex bd(fc);
  return mode == ReductionMode::clearing ? reduce_clearing(fc, bd) : reduce_naive(fc, bd);
}

std::size_t betti_rank(const PersistenceDiagram& diag, double b, double d, int dim) {
  if (b > d) throw std::domain_error("betti_rank: requires b <= d");
  std::size_t count = 0;
  for (const auto& iv : diag.intervals)
    if (iv.dim == dim && iv.birth <= b && iv.death >= d) ++count;
  return count;
}

void write_diagram_csv(const PersistenceDiagram& diag, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write file: " + path);
  out << "dim,birth,death\n";
  for (const auto& iv : diag.intervals) {
    out << iv.dim << ',' << format_double(iv.birth) << ',';
    if (iv.death == kInfiniteDeath) out << "inf";
    else out << format_double(iv.death);
    out << '\n';
  }
}

PersistenceDiagram read_diagram_csv(const std::string& path) {
  CsvTable table = read_csv(path);
  PersistenceDiagram diag;
  double max_finite = 0.0;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    if (row.size() != 3)
      throw parse_error("diagram CSV " + path + ": row " + std::to_string(i) +
                        " needs exactly dim,birth,death");
    PersistenceInterval iv;
    iv.dim = static_cast<int>(parse_cell(row[0], i, 0));
    iv.birth = parse_cell(row[1], i, 1);
    std::string death = row[2];
    std::transform(death.begin(), death.end(), death.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (death == "inf" || death == "+inf" || death == "infinity") {
      iv.death = kInfiniteDeath;
    } else {
      iv.death = parse_cell(row[2], i, 2);
      max_finite = std::max(max_finite, iv.death);
    }
    max_finite = std::max(max_finite, iv.birth);
    diag.intervals.push_back(iv);
  }
  diag.max_scale = max_finite; // callers may override when the true scale is known
  return diag;
}

} // namespace plstats
