#pragma once

#include <optional>
#include <string>

#include "delone/exact.hpp"

namespace delone {

/// Header plus one row per point: x_exact,y_exact,x_float,y_float,tag.
/// Floats carry 12 significant digits.
std::string points_to_csv(const PointSet& ps);

/// Inverse of points_to_csv. Only the exact columns are authoritative.
/// Unparseable rows raise kParse with their 1-based line numbers.
PointSet points_from_csv(const std::string& text);

struct PlotStyle {
  double point_size = 3;  ///< marker radius in canvas pixels
  std::optional<double> axis_range;  ///< fixed view [-a, a]^2
};

/// 800x800 scatter, one marker group per tag in tag order, y axis pointing up.
std::string render_svg(const PointSet& ps, const PlotStyle& style);

std::string read_text_file(const std::string& path);
/// Writes via a sibling temp file and rename.
void write_text_file_atomic(const std::string& path, const std::string& content);

}  // namespace delone
