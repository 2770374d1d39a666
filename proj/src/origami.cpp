#include "delone/origami.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "delone/error.hpp"

namespace delone {

Permutation inverse(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<int>(i);
  return out;
}

Permutation compose(const Permutation& f, const Permutation& g) {
  Permutation out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = f[g[i]];
  return out;
}

bool is_permutation(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  for (int x : p) {
    if (x < 0 || static_cast<std::size_t>(x) >= p.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

Origami::Origami(Permutation h, Permutation v) : h_(std::move(h)), v_(std::move(v)) {
  if (h_.empty() || h_.size() != v_.size())
    throw Error(ErrorCode::kNotPermutation, "h and v must be nonempty and of equal size");
  if (!is_permutation(h_)) throw Error(ErrorCode::kNotPermutation, "h is not a permutation");
  if (!is_permutation(v_)) throw Error(ErrorCode::kNotPermutation, "v is not a permutation");

  std::vector<bool> seen(h_.size(), false);
  std::vector<int> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (int t : {h_[s], v_[s]}) {
      if (!seen[t]) {
        seen[t] = true;
        ++reached;
        stack.push_back(t);
      }
    }
  }
  if (reached != h_.size())
    throw Error(ErrorCode::kDisconnected, "origami is disconnected: <h, v> is not transitive");
}

Permutation Origami::commutator() const {
  return compose(h_, compose(v_, compose(inverse(h_), inverse(v_))));
}

Origami origami_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("malformed origami JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("h") || !doc.contains("v"))
    throw Error(ErrorCode::kParse, "origami JSON needs keys n, h, v");
  if (!doc["n"].is_number_integer() || doc["n"].get<long>() < 1)
    throw Error(ErrorCode::kParse, "n must be a positive integer");
  const auto n = doc["n"].get<std::size_t>();
  auto read = [&](const char* key) {
    const auto& arr = doc[key];
    if (!arr.is_array() || arr.size() != n)
      throw Error(ErrorCode::kParse, std::string(key) + " must be an array of length n");
    Permutation p;
    for (const auto& x : arr) {
      if (!x.is_number_integer()) throw Error(ErrorCode::kParse, std::string(key) + " entries must be integers");
      p.push_back(x.get<int>());
    }
    return p;
  };
  return Origami(read("h"), read("v"));
}

std::string origami_to_json(const Origami& o) {
  nlohmann::json doc;
  doc["n"] = o.n();
  doc["h"] = o.h();
  doc["v"] = o.v();
  return doc.dump();
}

std::vector<VertexClass> vertex_classes(const Origami& o) {
  const Permutation c = o.commutator();
  std::vector<bool> seen(c.size(), false);
  std::vector<VertexClass> out;
  for (int start = 0; start < o.n(); ++start) {
    if (seen[start]) continue;
    VertexClass vc;
    for (int s = start; !seen[s]; s = c[s]) {
      seen[s] = true;
      vc.sheets.push_back(s);
    }
    vc.cone_order = static_cast<int>(vc.sheets.size());
    vc.singular = vc.cone_order >= 2;
    out.push_back(std::move(vc));
  }
  return out;
}

bool Direction::is_primitive() const {
  if (p == 0 && q == 0) return false;
  return std::gcd(p, q) == 1;
}

namespace {

void require_first_quadrant(Direction dir) {
  if (dir.p < 0 || dir.q < 0)
    throw Error(ErrorCode::kInvalidArgument, "direction must lie in the first quadrant");
  if (!dir.is_primitive())
    throw Error(ErrorCode::kNonPrimitive,
                "direction (" + std::to_string(dir.p) + "," + std::to_string(dir.q) +
                    ") is not primitive");
}

// true where the lower-left corner of a sheet counts as a saddle endpoint
std::vector<bool> vertex_mask(const Origami& o, bool marked) {
  std::vector<bool> mask(o.n(), marked);
  if (!marked)
    for (const auto& vc : vertex_classes(o))
      for (int s : vc.sheets) mask[s] = vc.singular;
  return mask;
}

}  // namespace

std::vector<Crossing> crossing_word(Direction dir) {
  require_first_quadrant(dir);
  std::vector<Crossing> word;
  word.reserve(static_cast<std::size_t>(dir.p + dir.q));
  long k = 1, m = 1;
  while (k <= dir.p || m <= dir.q) {
    // x = k is crossed at time k/p, y = m at time m/q; ties go to H.
    if (m > dir.q || (k <= dir.p && k * dir.q <= m * dir.p)) {
      word.push_back(Crossing::kH);
      ++k;
    } else {
      word.push_back(Crossing::kV);
      ++m;
    }
  }
  return word;
}

Permutation monodromy(const Origami& o, Direction dir) {
  const auto word = crossing_word(dir);
  Permutation sigma(o.n());
  for (int i = 0; i < o.n(); ++i) {
    int s = i;
    for (Crossing c : word) s = c == Crossing::kH ? o.h()[s] : o.v()[s];
    sigma[i] = s;
  }
  return sigma;
}

DirectionSaddles saddle_connections_in_direction(const Origami& o, Direction dir,
                                                 bool marked) {
  DirectionSaddles out;
  const auto mask = vertex_mask(o, marked);
  if (std::none_of(mask.begin(), mask.end(), [](bool b) { return b; })) {
    out.unsingular_cover = true;
    return out;
  }
  const Permutation sigma = monodromy(o, dir);
  for (int i = 0; i < o.n(); ++i) {
    if (!mask[i]) continue;
    int steps = 1;
    int s = sigma[i];
    while (!mask[s]) {
      s = sigma[s];
      ++steps;
      if (steps > o.n())
        throw std::logic_error("saddle connection longer than N periods");
    }
    out.steps.push_back(steps);
  }
  std::sort(out.steps.begin(), out.steps.end());
  return out;
}

std::optional<int> ray_trace_oracle(const Origami& o, int start_sheet, Direction dir,
                                    int s_max, bool marked) {
  require_first_quadrant(dir);
  if (start_sheet < 0 || start_sheet >= o.n())
    throw Error(ErrorCode::kInvalidArgument, "start sheet out of range");
  const auto mask = vertex_mask(o, marked);
  // (cx, cy): integer cell in the universal cover of the torus; the segment
  // is t * (p, q) for t >= 0 and `sheet` is the square it currently runs in
  // (for axis directions, the square to its upper right).
  long cx = 0, cy = 0;
  int sheet = start_sheet;
  const long limit_x = static_cast<long>(s_max) * dir.p;
  const long limit_y = static_cast<long>(s_max) * dir.q;
  while (cx <= limit_x && cy <= limit_y) {
    bool corner = false;
    if (dir.p == 0) {
      sheet = o.v()[sheet];
      ++cy;
      corner = true;
    } else if (dir.q == 0) {
      sheet = o.h()[sheet];
      ++cx;
      corner = true;
    } else {
      long right = (cx + 1) * dir.q;  // exit time through x = cx+1, scaled by p*q
      long top = (cy + 1) * dir.p;
      if (right < top) {
        sheet = o.h()[sheet];
        ++cx;
      } else if (top < right) {
        sheet = o.v()[sheet];
        ++cy;
      } else {
        // Through the upper-right corner: step up, then right.
        sheet = o.h()[o.v()[sheet]];
        ++cx;
        ++cy;
        corner = true;
      }
    }
    if (corner) {
      long periods = dir.p != 0 ? cx / dir.p : cy / dir.q;
      if (periods > s_max) break;
      if (mask[sheet]) return static_cast<int>(periods);
    }
  }
  return std::nullopt;
}

std::vector<Direction> primitive_directions(double radius) {
  std::vector<Direction> out;
  const Rational r2 = rational_from_double(radius) * rational_from_double(radius);
  auto inside = [&](long p, long q) { return Rational(p * p + q * q) <= r2; };
  if (!inside(1, 0)) return out;
  out.push_back({1, 0});
  out.push_back({0, 1});
  struct Node {
    long lp, lq, rp, rq;
  };
  std::vector<Node> stack{{1, 0, 0, 1}};
  while (!stack.empty()) {
    Node n = stack.back();
    stack.pop_back();
    long mp = n.lp + n.rp;
    long mq = n.lq + n.rq;
    if (!inside(mp, mq)) continue;  // both subtrees only grow in norm
    out.push_back({mp, mq});
    stack.push_back({n.lp, n.lq, mp, mq});
    stack.push_back({mp, mq, n.rp, n.rq});
  }
  std::sort(out.begin(), out.end(), [](const Direction& a, const Direction& b) {
    long na = a.p * a.p + a.q * a.q;
    long nb = b.p * b.p + b.q * b.q;
    return na != nb ? na < nb : a.p < b.p;
  });
  return out;
}

PointSet enumerate_holonomies(const Origami& o, double radius, bool marked) {
  const Rational r2 = rational_from_double(radius) * rational_from_double(radius);
  const auto directions = primitive_directions(radius);
  std::vector<PlanarPoint> points;
  for (int sx : {1, -1}) {
    for (int sy : {1, -1}) {
      Origami image = o;
      if (sx < 0) image = image.reflect_x();
      if (sy < 0) image = image.reflect_y();
      for (Direction dir : directions) {
        // Axis directions are shared by two quadrants; visit each once.
        if ((dir.p == 0 && sx < 0) || (dir.q == 0 && sy < 0)) continue;
        auto saddles = saddle_connections_in_direction(image, dir, marked);
        if (saddles.unsingular_cover) return PointSet{};
        int last = 0;
        for (int s : saddles.steps) {
          if (s == last) continue;
          last = s;
          long x = sx * s * dir.p;
          long y = sy * s * dir.q;
          if (Rational(x * x + y * y) > r2) break;
          points.push_back({QuadExt::integer(x), QuadExt::integer(y), {}});
        }
      }
    }
  }
  return PointSet(std::move(points), 1, 1);
}

}  // namespace delone
