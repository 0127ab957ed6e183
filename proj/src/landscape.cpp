#include "plstats/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <list>
#include <stdexcept>

#include "plstats/csv.hpp"
#include "plstats/errors.hpp"

namespace plstats {

namespace {

struct Bar {
  double b, d;
};

bool bar_less(const Bar& x, const Bar& y) {
  if (x.b != y.b) return x.b < y.b;
  return x.d > y.d; // earlier birth first; among equals, longer bar first
}

//! Level-by-level sweep over bars sorted by (birth asc, death desc).
//! Each level walks the chain of overlapping tents, re-queueing the
//! overhang (b', d) of the current bar for deeper levels.
std::vector<std::vector<LandscapePoint>> sweep_levels(std::vector<Bar> bars,
                                                      std::size_t k_max) {
  std::sort(bars.begin(), bars.end(), bar_less);
  std::list<Bar> pool(bars.begin(), bars.end());
  std::vector<std::vector<LandscapePoint>> levels;

  while (!pool.empty() && levels.size() < k_max) {
    std::vector<LandscapePoint> level;
    Bar cur = pool.front();
    pool.pop_front();
    level.push_back({cur.b, 0.0});
    level.push_back({(cur.b + cur.d) / 2.0, (cur.d - cur.b) / 2.0});

    for (;;) {
      auto next = pool.begin();
      while (next != pool.end() && next->d <= cur.d) ++next;
      if (next == pool.end()) {
        level.push_back({cur.d, 0.0});
        break;
      }
      const Bar take = *next;
      pool.erase(next);
      if (take.b > cur.d) {
        level.push_back({cur.d, 0.0});
        level.push_back({take.b, 0.0});
      } else if (take.b == cur.d) {
        level.push_back({cur.d, 0.0});
      } else {
        level.push_back({(take.b + cur.d) / 2.0, (cur.d - take.b) / 2.0});
        const Bar overhang{take.b, cur.d};
        auto pos = pool.begin();
        while (pos != pool.end() && bar_less(*pos, overhang)) ++pos;
        pool.insert(pos, overhang);
      }
      level.push_back({(take.b + take.d) / 2.0, (take.d - take.b) / 2.0});
      cur = take;
    }
    levels.push_back(std::move(level));
  }
  return levels;
}

double interpolate(const std::vector<LandscapePoint>& pts, double t) {
  if (pts.empty() || t < pts.front().t || t > pts.back().t) return 0.0;
  auto it = std::upper_bound(pts.begin(), pts.end(), t,
                             [](double x, const LandscapePoint& p) { return x < p.t; });
  if (it == pts.begin()) return pts.front().value;
  if (it == pts.end()) return pts.back().value;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  if (hi.t == lo.t) return std::max(lo.value, hi.value);
  const double w = (t - lo.t) / (hi.t - lo.t);
  return lo.value + w * (hi.value - lo.value);
}

std::vector<LandscapePoint> clip_level(const std::vector<LandscapePoint>& pts, double t_min,
                                       double t_max) {
  if (pts.empty() || pts.back().t <= t_min || pts.front().t >= t_max) {
    // at most a single touching point survives; that is identically zero
    return {};
  }
  const double lo = std::max(t_min, pts.front().t);
  const double hi = std::min(t_max, pts.back().t);
  std::vector<LandscapePoint> out;
  out.push_back({lo, interpolate(pts, lo)});
  for (const auto& p : pts)
    if (p.t > lo && p.t < hi) out.push_back(p);
  out.push_back({hi, interpolate(pts, hi)});
  return out;
}

} // namespace

PersistenceLandscape landscape_from_diagram(const PersistenceDiagram& diag, int dim,
                                            std::size_t k_max, double t_min, double t_max) {
  if (k_max < 1) throw std::invalid_argument("landscape_from_diagram: k_max must be >= 1");
  if (!(t_min < t_max))
    throw std::invalid_argument("landscape_from_diagram: support must be a proper interval");

  std::vector<Bar> bars;
  for (const auto& iv : diag.intervals) {
    if (iv.dim != dim) continue;
    const double death = iv.death == kInfiniteDeath ? diag.max_scale : iv.death;
    if (death > iv.birth) bars.push_back({iv.birth, death});
  }

  PersistenceLandscape ls;
  ls.t_min = t_min;
  ls.t_max = t_max;
  ls.homology_dim = dim;
  for (auto& level : sweep_levels(std::move(bars), k_max)) {
    auto clipped = clip_level(level, t_min, t_max);
    ls.levels.push_back(std::move(clipped));
  }
  return ls;
}

double evaluate(const PersistenceLandscape& ls, std::size_t k, double t) {
  if (k < 1 || k > ls.levels.size()) return 0.0;
  if (t < ls.t_min || t > ls.t_max) return 0.0;
  return interpolate(ls.levels[k - 1], t);
}

double landscape_functional(const PersistenceLandscape& ls, double bound,
                            std::size_t k_levels) {
  if (!(bound > 0.0)) throw std::invalid_argument("landscape_functional: bound must be positive");
  if (k_levels < 1) throw std::invalid_argument("landscape_functional: k_levels must be >= 1");
  const double lo = std::max(-bound, ls.t_min);
  const double hi = std::min(bound, ls.t_max);
  if (!(lo < hi)) return 0.0;

  double total = 0.0;
  const std::size_t k_top = std::min(k_levels, ls.levels.size());
  for (std::size_t k = 0; k < k_top; ++k) {
    const auto& pts = ls.levels[k];
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double a = std::max(lo, pts[i].t);
      const double b = std::min(hi, pts[i + 1].t);
      if (a >= b) continue;
      const double va = interpolate(pts, a);
      const double vb = interpolate(pts, b);
      total += 0.5 * (va + vb) * (b - a);
    }
  }
  return total;
}

Sample sample_from_diagrams(const std::vector<PersistenceDiagram>& diagrams, int dim,
                            std::size_t k_levels, double bound, double t_min, double t_max) {
  if (diagrams.empty())
    throw std::invalid_argument("sample_from_diagrams: empty diagram list");
  Sample sample;
  sample.values.reserve(diagrams.size());
  for (std::size_t i = 0; i < diagrams.size(); ++i) {
    try {
      const auto ls = landscape_from_diagram(diagrams[i], dim, k_levels, t_min, t_max);
      sample.values.push_back(landscape_functional(ls, bound, k_levels));
    } catch (const std::exception& e) {
      throw std::invalid_argument("diagram " + std::to_string(i) + ": " + e.what());
    }
  }
  sample.meta = "Y = sum_{k<=" + std::to_string(k_levels) + "} int_{-" + format_double(bound) +
                "}^{" + format_double(bound) + "} lambda_k(t) dt; homology_dim=" +
                std::to_string(dim) + "; t in [" + format_double(t_min) + "," +
                format_double(t_max) + "]; n=" + std::to_string(diagrams.size());
  return sample;
}

void write_landscape_csv(const PersistenceLandscape& ls, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write file: " + path);
  out << "k,t,value\n";
  for (std::size_t k = 0; k < ls.levels.size(); ++k)
    for (const auto& p : ls.levels[k])
      out << (k + 1) << ',' << format_double(p.t) << ',' << format_double(p.value) << '\n';
}

void write_sample_csv(const Sample& sample, const std::string& path) {
  write_value_column_csv(sample.values, path);
}

Sample read_sample_csv(const std::string& path) {
  Sample s;
  s.values = read_value_column_csv(path);
  s.meta = "loaded from " + path;
  return s;
}

} // namespace plstats
