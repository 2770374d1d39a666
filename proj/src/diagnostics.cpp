#include "delone/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <thread>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "delone/error.hpp"

namespace delone {

namespace {

struct Coords {
  std::vector<double> x;
  std::vector<double> y;
  double max_abs = 0;
};

Coords approximate(const PointSet& ps) {
  Coords c;
  c.x.reserve(ps.size());
  c.y.reserve(ps.size());
  for (const auto& p : ps) {
    c.x.push_back(to_double(p.x));
    c.y.push_back(to_double(p.y));
    c.max_abs = std::max({c.max_abs, std::abs(c.x.back()), std::abs(c.y.back())});
  }
  return c;
}

struct CellKey {
  long long cx;
  long long cy;
  bool operator==(const CellKey&) const = default;
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const noexcept {
    return std::hash<long long>()(k.cx * 0x9E3779B97F4A7C15LL ^ k.cy);
  }
};

class BucketGrid {
 public:
  BucketGrid(const Coords& c, double cell) : c_(&c), cell_(cell) {}

  CellKey key(std::size_t i) const {
    return {static_cast<long long>(std::floor(c_->x[i] / cell_)),
            static_cast<long long>(std::floor(c_->y[i] / cell_))};
  }
  void insert(std::size_t i) { cells_[key(i)].push_back(i); }

  template <typename Fn>
  void for_neighbours(std::size_t i, Fn&& fn) const {
    const CellKey k = key(i);
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = cells_.find({k.cx + dx, k.cy + dy});
        if (it == cells_.end()) continue;
        for (std::size_t j : it->second) fn(j);
      }
  }

 private:
  const Coords* c_;
  double cell_;
  std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> cells_;
};

double dist(const Coords& c, std::size_t i, std::size_t j) {
  return std::hypot(c.x[i] - c.x[j], c.y[i] - c.y[j]);
}

double candidate_tolerance(const Coords& c, double best) {
  return 1e-9 * (1 + best) + 1e-12 * c.max_abs;
}

// Exact minimum over candidate pairs, smallest (first, second) on ties.
MinGap resolve_exact(const PointSet& ps, std::vector<std::pair<std::size_t, std::size_t>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  MinGap best;
  bool have = false;
  for (const auto& [i, j] : pairs) {
    SurdSum sq = squared_distance(ps[i], ps[j]);
    if (have) {
      SurdSum diff = sq;
      diff -= best.squared;
      if (diff.sign() >= 0) continue;
    }
    best.first = i;
    best.second = j;
    best.squared = std::move(sq);
    have = true;
  }
  FloatEnclosure enc = best.squared.evaluate(113);
  BigFloat lo(113), hi(113);
  mpfr_sub(lo.raw(), enc.value.raw(), enc.error.raw(), MPFR_RNDD);
  if (lo.sign() < 0) mpfr_set_zero(lo.raw(), 1);
  mpfr_sqrt(lo.raw(), lo.raw(), MPFR_RNDD);
  mpfr_add(hi.raw(), enc.value.raw(), enc.error.raw(), MPFR_RNDU);
  mpfr_sqrt(hi.raw(), hi.raw(), MPFR_RNDU);
  const double l = lo.to_double(MPFR_RNDD);
  const double h = hi.to_double(MPFR_RNDU);
  best.gap = l + (h - l) / 2;
  best.error = std::nextafter(std::max(h - best.gap, best.gap - l), INFINITY);
  return best;
}

void require_two(const PointSet& ps) {
  if (ps.size() < 2) throw Error(ErrorCode::kSize, "min_gap needs at least two points");
}

}  // namespace

MinGap min_gap(const PointSet& ps) {
  require_two(ps);
  const Coords c = approximate(ps);
  const std::size_t n = ps.size();
  const double floor_cell = 1e-12 * (1 + c.max_abs);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(0x5eedULL);
  std::shuffle(order.begin(), order.end(), rng);

  double best = dist(c, order[0], order[1]);
  auto rebuild = [&](std::size_t upto) {
    BucketGrid g(c, std::max(best, floor_cell));
    for (std::size_t k = 0; k <= upto; ++k) g.insert(order[k]);
    return g;
  };
  BucketGrid grid = rebuild(1);
  for (std::size_t k = 2; k < n; ++k) {
    const std::size_t p = order[k];
    double local = best;
    grid.for_neighbours(p, [&](std::size_t j) { local = std::min(local, dist(c, p, j)); });
    if (local < best) {
      best = local;
      grid = rebuild(k);
    } else {
      grid.insert(p);
    }
  }

  const double tol = candidate_tolerance(c, best);
  BucketGrid fine(c, std::max(best + tol, floor_cell));
  for (std::size_t i = 0; i < n; ++i) fine.insert(i);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    fine.for_neighbours(i, [&](std::size_t j) {
      if (j > i && dist(c, i, j) <= best + tol) pairs.emplace_back(i, j);
    });
  return resolve_exact(ps, std::move(pairs));
}

MinGap min_gap_brute_force(const PointSet& ps) {
  require_two(ps);
  const Coords c = approximate(ps);
  double best = INFINITY;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) best = std::min(best, dist(c, i, j));
  const double tol = candidate_tolerance(c, best);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      if (dist(c, i, j) <= best + tol) pairs.emplace_back(i, j);
  return resolve_exact(ps, std::move(pairs));
}

namespace {

// Uniform bucket grid for nearest-neighbour queries from arbitrary points.
class NearestIndex {
 public:
  explicit NearestIndex(const Coords& c) : c_(c) {
    const std::size_t n = c.x.size();
    minx_ = *std::min_element(c.x.begin(), c.x.end());
    miny_ = *std::min_element(c.y.begin(), c.y.end());
    const double w = *std::max_element(c.x.begin(), c.x.end()) - minx_;
    const double h = *std::max_element(c.y.begin(), c.y.end()) - miny_;
    const double area = std::max(w, 1e-9) * std::max(h, 1e-9);
    // the second bound keeps near-collinear data from exploding the grid
    cell_ = std::max({std::sqrt(area / static_cast<double>(n)), std::max(w, h) / static_cast<double>(n), 1e-9});
    if (w == 0 && h == 0) cell_ = 1;
    nx_ = static_cast<long>(w / cell_) + 1;
    ny_ = static_cast<long>(h / cell_) + 1;
    start_.assign(static_cast<std::size_t>(nx_ * ny_) + 1, 0);
    std::vector<std::size_t> cell_of(n);
    for (std::size_t i = 0; i < n; ++i) {
      cell_of[i] = index(cell_x(c.x[i]), cell_y(c.y[i]));
      ++start_[cell_of[i] + 1];
    }
    std::partial_sum(start_.begin(), start_.end(), start_.begin());
    members_.resize(n);
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < n; ++i) members_[fill[cell_of[i]]++] = i;
  }

  double nearest(double qx, double qy) const {
    const long qcx = static_cast<long>(std::floor((qx - minx_) / cell_));
    const long qcy = static_cast<long>(std::floor((qy - miny_) / cell_));
    long k = std::max({0L, -qcx, qcx - (nx_ - 1), -qcy, qcy - (ny_ - 1)});
    double best2 = INFINITY;
    for (;; ++k) {
      visit_ring(qcx, qcy, k, [&](std::size_t cell) {
        for (std::size_t m = start_[cell]; m < start_[cell + 1]; ++m) {
          const std::size_t i = members_[m];
          const double dx = c_.x[i] - qx;
          const double dy = c_.y[i] - qy;
          best2 = std::min(best2, dx * dx + dy * dy);
        }
      });
      const double reach = static_cast<double>(k) * cell_;
      const bool covers_all = qcx - k <= 0 && qcx + k >= nx_ - 1 && qcy - k <= 0 && qcy + k >= ny_ - 1;
      if (covers_all || best2 <= reach * reach) break;
    }
    return std::sqrt(best2);
  }

 private:
  long cell_x(double x) const { return std::clamp(static_cast<long>((x - minx_) / cell_), 0L, nx_ - 1); }
  long cell_y(double y) const { return std::clamp(static_cast<long>((y - miny_) / cell_), 0L, ny_ - 1); }
  std::size_t index(long cx, long cy) const { return static_cast<std::size_t>(cx * ny_ + cy); }

  template <typename Fn>
  void visit_ring(long qcx, long qcy, long k, Fn&& fn) const {
    auto visit = [&](long cx, long cy) {
      if (cx >= 0 && cx < nx_ && cy >= 0 && cy < ny_) fn(index(cx, cy));
    };
    if (k == 0) {
      visit(qcx, qcy);
      return;
    }
    for (long cx = qcx - k; cx <= qcx + k; ++cx) {
      visit(cx, qcy - k);
      visit(cx, qcy + k);
    }
    for (long cy = qcy - k + 1; cy <= qcy + k - 1; ++cy) {
      visit(qcx - k, cy);
      visit(qcx + k, cy);
    }
  }

  const Coords& c_;
  double minx_ = 0, miny_ = 0, cell_ = 1;
  long nx_ = 1, ny_ = 1;
  std::vector<std::size_t> start_;
  std::vector<std::size_t> members_;
};

std::vector<double> axis_samples(double lo, double hi, double step) {
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  if (hi - out.back() > 1e-9 * step) out.push_back(hi);
  return out;
}

bool better(double r, double x, double y, const CoveringRadius& cur) {
  if (r != cur.radius) return r > cur.radius;
  if (x != cur.cx) return x < cur.cx;
  return y < cur.cy;
}

}  // namespace

CoveringRadius covering_radius(const PointSet& ps, Window window, double resolution) {
  if (ps.empty()) throw Error(ErrorCode::kSize, "covering_radius needs a nonempty set");
  if (!(resolution > 0)) throw Error(ErrorCode::kInvalidArgument, "resolution must be positive");
  if (!(window.x1 >= window.x0) || !(window.y1 >= window.y0))
    throw Error(ErrorCode::kInvalidArgument, "window must be nonempty");
  const auto xs = axis_samples(window.x0, window.x1, resolution);
  const auto ys = axis_samples(window.y0, window.y1, resolution);
  if (static_cast<double>(xs.size()) * static_cast<double>(ys.size()) > 5e7)
    throw Error(ErrorCode::kInvalidArgument, "window/resolution gives too many candidate centres");

  const Coords c = approximate(ps);
  const NearestIndex index(c);

  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  std::vector<CoveringRadius> partial(workers, CoveringRadius{-1, 0, 0, resolution});
  auto run = [&](std::size_t w) {
    CoveringRadius& best = partial[w];
    for (std::size_t i = w; i < xs.size(); i += workers)
      for (double y : ys) {
        const double r = index.nearest(xs[i], y);
        if (best.radius < 0 || better(r, xs[i], y, best)) best = {r, xs[i], y, resolution};
      }
  };
  std::vector<std::thread> threads;
  for (std::size_t w = 1; w < workers; ++w) threads.emplace_back(run, w);
  run(0);
  for (auto& t : threads) t.join();

  CoveringRadius out{-1, 0, 0, resolution};
  for (const auto& p : partial)
    if (p.radius >= 0 && (out.radius < 0 || better(p.radius, p.cx, p.cy, out))) out = p;
  return out;
}

namespace {

GrowthCounts finish_counts(std::vector<double> radii, std::vector<std::size_t> counts) {
  GrowthCounts g;
  g.radii = std::move(radii);
  g.counts = std::move(counts);
  for (std::size_t i = 0; i < g.radii.size(); ++i)
    g.coefficients.push_back(static_cast<double>(g.counts[i]) / (g.radii[i] * g.radii[i]));
  if (!g.coefficients.empty()) {
    auto first = g.coefficients.begin() + static_cast<long>(g.coefficients.size() / 2);
    auto [lo, hi] = std::minmax_element(first, g.coefficients.end());
    g.non_quadratic = *lo <= 0 || *hi / *lo > 4;
  }
  return g;
}

void require_increasing(const std::vector<double>& radii) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0)) throw Error(ErrorCode::kInvalidArgument, "radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw Error(ErrorCode::kInvalidArgument, "radii must be strictly increasing");
  }
}

}  // namespace

GrowthCounts growth_counts(const PointGenerator& generator, const std::vector<double>& radii) {
  require_increasing(radii);
  std::vector<std::size_t> counts;
  for (double r : radii) counts.push_back(generator(r).size());
  return finish_counts(radii, std::move(counts));
}

GrowthCounts growth_counts(const PointSet& ps, const std::vector<double>& radii) {
  require_increasing(radii);
  const Coords c = approximate(ps);
  std::vector<std::size_t> counts(radii.size(), 0);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double n2 = c.x[i] * c.x[i] + c.y[i] * c.y[i];
    for (std::size_t k = 0; k < radii.size(); ++k) {
      const double r2 = radii[k] * radii[k];
      bool inside;
      if (std::abs(n2 - r2) > 1e-9 * (1 + r2))
        inside = n2 < r2;
      else
        inside = compare_norm(ps[i], radii[k]) <= 0;
      if (inside) ++counts[k];
    }
  }
  return finish_counts(radii, std::move(counts));
}

DeloneReport delone_report(const PointSet& ps, Window window, double resolution,
                           const std::vector<double>& radii) {
  DeloneReport report;
  report.size = ps.size();
  report.window = window;
  if (ps.size() >= 2) {
    report.min_gap = min_gap(ps);
    report.has_min_gap = true;
  }
  report.covering = covering_radius(ps, window, resolution);
  report.growth = growth_counts(ps, radii);
  return report;
}

std::string report_to_json(const DeloneReport& report, const PointSet& ps, int indent) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["label"] = report.label;
  doc["size"] = report.size;
  if (report.has_min_gap) {
    const auto& g = report.min_gap;
    auto exact = [&](std::size_t i) {
      return ordered_json::array({to_string(ps[i].x), to_string(ps[i].y)});
    };
    doc["min_gap"] = {{"value", g.gap},
                      {"error", g.error},
                      {"pair", ordered_json::array({exact(g.first), exact(g.second)})},
                      {"tags", ordered_json::array({ps[g.first].tag, ps[g.second].tag})}};
  } else {
    doc["min_gap"] = nullptr;
  }
  doc["covering_radius"] = {
      {"value", report.covering.radius},
      {"center", ordered_json::array({report.covering.cx, report.covering.cy})},
      {"resolution", report.covering.resolution},
      {"error_bound", report.covering.resolution / std::sqrt(2.0)},
      {"window", ordered_json::array({report.window.x0, report.window.y0, report.window.x1,
                                      report.window.y1})}};
  ordered_json counts = ordered_json::array();
  for (std::size_t i = 0; i < report.growth.radii.size(); ++i)
    counts.push_back({{"R", report.growth.radii[i]}, {"N", report.growth.counts[i]}});
  doc["counts"] = counts;
  doc["density_coefficients"] = report.growth.coefficients;
  doc["non_quadratic"] = report.growth.non_quadratic;
  return doc.dump(indent);
}

std::string counts_to_csv(const GrowthCounts& counts) {
  std::string out = "R,N,coefficient\n";
  char buf[96];
  for (std::size_t i = 0; i < counts.radii.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.12g,%zu,%.12g\n", counts.radii[i], counts.counts[i],
                  counts.coefficients[i]);
    out += buf;
  }
  return out;
}

}  // namespace delone
