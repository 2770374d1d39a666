#include "delone/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "delone/error.hpp"

namespace delone {

namespace {

const char* kHeader = "x_exact,y_exact,x_float,y_float,tag";

std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  std::string s = buf;
  if (s == "-0.0000") s = "0.0000";
  return s;
}

// Colour-blind safe palette; tags beyond it cycle.
const char* kPalette[] = {"#0072b2", "#d55e00", "#009e73", "#cc79a7",
                          "#e69f00", "#56b4e9", "#f0e442", "#000000"};

}  // namespace

std::string points_to_csv(const PointSet& ps) {
  std::string out = kHeader;
  out += '\n';
  char buf[128];
  for (const auto& p : ps) {
    std::snprintf(buf, sizeof(buf), ",%.12g,%.12g,", to_double(p.x), to_double(p.y));
    out += to_string(p.x);
    out += ',';
    out += to_string(p.y);
    out += buf;
    out += p.tag;
    out += '\n';
  }
  return out;
}

PointSet points_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<PlanarPoint> points;
  std::vector<std::size_t> bad;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (lineno == 1 && trim(line) == kHeader) continue;
    std::vector<std::string> cols;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cols.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cols.emplace_back();
    if (cols.size() != 5) {
      bad.push_back(lineno);
      continue;
    }
    try {
      points.push_back({parse_quad(cols[0]), parse_quad(cols[1]), cols[4]});
    } catch (const Error&) {
      bad.push_back(lineno);
    }
  }
  if (!bad.empty()) {
    std::string msg = "unparseable rows at line";
    msg += bad.size() > 1 ? "s " : " ";
    for (std::size_t i = 0; i < bad.size(); ++i) {
      if (i) msg += ", ";
      msg += std::to_string(bad[i]);
    }
    throw Error(ErrorCode::kParse, msg);
  }
  return PointSet::from_points(std::move(points));
}

std::string render_svg(const PointSet& ps, const PlotStyle& style) {
  std::vector<double> xs, ys;
  for (const auto& p : ps) {
    xs.push_back(to_double(p.x));
    ys.push_back(to_double(p.y));
  }
  double x0, x1, y0, y1;
  if (style.axis_range) {
    x0 = y0 = -*style.axis_range;
    x1 = y1 = *style.axis_range;
  } else if (ps.empty()) {
    x0 = y0 = -1;
    x1 = y1 = 1;
  } else {
    x0 = *std::min_element(xs.begin(), xs.end());
    x1 = *std::max_element(xs.begin(), xs.end());
    y0 = *std::min_element(ys.begin(), ys.end());
    y1 = *std::max_element(ys.begin(), ys.end());
    const double span = std::max({x1 - x0, y1 - y0, 1e-9});
    const double pad = 0.05 * span;
    x0 -= pad;
    x1 += pad;
    y0 -= pad;
    y1 += pad;
  }
  const double w = x1 - x0;
  const double h = y1 - y0;
  const double unit = std::max(w, h) / 800;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"" +
         fixed(x0) + " " + fixed(-y1) + " " + fixed(w) + " " + fixed(h) + "\">\n";
  out += "<rect x=\"" + fixed(x0) + "\" y=\"" + fixed(-y1) + "\" width=\"" + fixed(w) +
         "\" height=\"" + fixed(h) + "\" fill=\"#ffffff\"/>\n";
  out += "<g id=\"axes\" stroke=\"#999999\" stroke-width=\"" + fixed(unit) + "\">\n";
  if (y0 <= 0 && 0 <= y1)
    out += "<line x1=\"" + fixed(x0) + "\" y1=\"0.0000\" x2=\"" + fixed(x1) + "\" y2=\"0.0000\"/>\n";
  if (x0 <= 0 && 0 <= x1)
    out += "<line x1=\"0.0000\" y1=\"" + fixed(-y1) + "\" x2=\"0.0000\" y2=\"" + fixed(-y0) + "\"/>\n";
  out += "</g>\n";

  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < ps.size(); ++i) groups[ps[i].tag].push_back(i);
  const std::string r = fixed(style.point_size * unit);
  std::size_t colour = 0;
  for (const auto& [tag, members] : groups) {
    const std::string id = tag.empty() ? "untagged" : tag;
    out += "<g id=\"tag-" + id + "\" fill=\"" + kPalette[colour++ % std::size(kPalette)] + "\">\n";
    for (std::size_t i : members) {
      if (xs[i] < x0 || xs[i] > x1 || ys[i] < y0 || ys[i] > y1) continue;
      out += "<circle cx=\"" + fixed(xs[i]) + "\" cy=\"" + fixed(-ys[i]) + "\" r=\"" + r + "\"/>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
    out << content;
    if (!out.flush()) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  }
}

}  // namespace delone
