#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "delone/exact.hpp"

namespace delone {

/// Smallest pairwise distance of a finite set (uniform-discreteness probe).
struct MinGap {
  double gap = 0;
  double error = 0;  ///< |gap - exact| <= error
  std::size_t first = 0;   ///< indices into the point set, first < second
  std::size_t second = 0;
  SurdSum squared;   ///< exact squared gap
};

/// Randomised incremental grid search (cell size = current best gap, grid
/// rebuilt on improvement) followed by an exact comparison of all near-minimal
/// candidate pairs. Ties resolve to the lexicographically smallest index pair.
/// Throws kSize for fewer than two points.
MinGap min_gap(const PointSet& ps);

/// Reference O(n²) implementation with exact comparisons.
MinGap min_gap_brute_force(const PointSet& ps);

struct Window {
  double x0 = 0;
  double y0 = 0;
  double x1 = 0;
  double y1 = 0;
};

/// Largest distance from a candidate centre to the set (relative-density probe).
struct CoveringRadius {
  double radius = 0;
  double cx = 0;
  double cy = 0;
  double resolution = 0;
};

/// Maximises the distance to the nearest point over grid centres with the
/// given spacing inside the window (both window edges included). The true
/// supremum over the window exceeds the reported radius by at most
/// resolution / sqrt(2). Ties go to the lexicographically smallest centre.
CoveringRadius covering_radius(const PointSet& ps, Window window, double resolution);

struct GrowthCounts {
  std::vector<double> radii;
  std::vector<std::size_t> counts;        ///< N(R)
  std::vector<double> coefficients;       ///< N(R) / R²
  bool non_quadratic = false;  ///< max/min coefficient > 4 over the upper half of radii
};

using PointGenerator = std::function<PointSet(double)>;

/// N(R) = size of generator(R) for each radius (strictly increasing).
GrowthCounts growth_counts(const PointGenerator& generator, const std::vector<double>& radii);
/// N(R) = number of points of `ps` with norm <= R.
GrowthCounts growth_counts(const PointSet& ps, const std::vector<double>& radii);

struct DeloneReport {
  std::string label = "finite-window estimate";
  std::size_t size = 0;
  MinGap min_gap;
  bool has_min_gap = false;
  CoveringRadius covering;
  Window window;
  GrowthCounts growth;
};

DeloneReport delone_report(const PointSet& ps, Window window, double resolution,
                           const std::vector<double>& radii);

std::string report_to_json(const DeloneReport& report, const PointSet& ps, int indent = 2);
std::string counts_to_csv(const GrowthCounts& counts);

}  // namespace delone
