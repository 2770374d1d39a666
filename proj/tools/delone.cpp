// delone: command-line front end.
//
// Exit codes: 0 success, 1 certificate failed verification, 2 invalid input,
// 3 disconnected origami, 4 rational circumference ratio, 5 precondition or
// size cap.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "delone/close_pair.hpp"
#include "delone/coprime.hpp"
#include "delone/diagnostics.hpp"
#include "delone/error.hpp"
#include "delone/example_surface.hpp"
#include "delone/io.hpp"
#include "delone/origami.hpp"

namespace {

using namespace delone;

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDisconnected:
      return 3;
    case ErrorCode::kRatioRational:
      return 4;
    case ErrorCode::kPrecondition:
    case ErrorCode::kCapExceeded:
    case ErrorCode::kIncompleteExpansion:
      return 5;
    default:
      return 2;
  }
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-")
    std::cout << content;
  else
    write_text_file_atomic(out_path, content);
}

std::vector<double> parse_doubles(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, std::string("bad number in ") + what + ": " + item);
    }
    if (!std::isfinite(out.back()))
      throw Error(ErrorCode::kInvalidArgument, std::string("non-finite value in ") + what);
  }
  return out;
}

Window parse_window(const std::string& text) {
  const auto v = parse_doubles(text, "--window");
  if (v.size() != 4) throw Error(ErrorCode::kInvalidArgument, "--window needs x0,y0,x1,y1");
  return {v[0], v[1], v[2], v[3]};
}

void require_positive(double v, const char* what) {
  if (!(v > 0) || !std::isfinite(v))
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be positive");
}

std::string hole_report_json(const HoleCertificate& cert, const HoleReport& report) {
  nlohmann::ordered_json doc;
  doc["certificate"] = nlohmann::ordered_json::parse(certificate_to_json(cert));
  nlohmann::ordered_json v;
  v["pass"] = report.pass;
  v["grid_ok"] = report.grid_ok;
  v["ball_ok"] = report.ball_ok;
  v["grid_points_checked"] = report.grid_points_checked;
  v["ball_points_checked"] = report.ball_points_checked;
  if (report.counterexample) {
    v["counterexample_offset"] = {report.counterexample->first, report.counterexample->second};
    v["counterexample_gcd"] = report.counterexample_gcd;
  }
  v["message"] = report.message;
  doc["verification"] = v;
  return doc.dump(2) + "\n";
}

// Default diagnose window: bounding box of the data.
Window bounding_window(const PointSet& ps) {
  Window w{INFINITY, INFINITY, -INFINITY, -INFINITY};
  for (const auto& p : ps) {
    const double x = to_double(p.x), y = to_double(p.y);
    w.x0 = std::min(w.x0, x);
    w.y0 = std::min(w.y0, y);
    w.x1 = std::max(w.x1, x);
    w.y1 = std::max(w.y1, y);
  }
  return w;
}

std::vector<double> default_radii(const PointSet& ps) {
  double reach = 0;
  for (const auto& p : ps) reach = std::max(reach, std::sqrt(squared_norm(p).approx()));
  if (reach <= 0) reach = 1;
  return {reach / 4, reach / 2, 3 * reach / 4, reach};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saddle-connection holonomy sets and Delone diagnostics"};
  app.require_subcommand(1);

  double radius = 0;
  long max_gcd = 0;
  bool marked = false;
  bool oracle = false;
  std::string input;
  std::string out;
  std::string window_text;
  std::string radii_text;
  std::string counts_out;
  std::string certificate;
  std::string shift_text;
  double resolution = 0.01;
  double point_size = 3;
  double axis_range = 0;
  double max_digits = 1000;

  auto* enumerate = app.add_subcommand("enumerate", "holonomies of a square-tiled surface");
  enumerate->add_option("origami", input, "origami JSON {n, h, v}")->required();
  enumerate->add_option("--radius", radius, "ball radius")->required();
  enumerate->add_flag("--marked", marked, "treat every branch-point preimage as a vertex");
  enumerate->add_option("--out", out, "output CSV (default stdout)");

  auto* coprime = app.add_subcommand("coprime", "coprime (or gcd <= N) integer points");
  coprime->add_option("--radius", radius, "ball radius")->required();
  coprime->add_option("--max-gcd", max_gcd, "keep gcd <= N instead of gcd = 1");
  coprime->add_option("--out", out, "output CSV (default stdout)");

  auto* hole = app.add_subcommand("hole", "CRT empty-ball certificate");
  hole->add_option("--max-gcd", max_gcd, "gcd bound N");
  hole->add_option("--radius", radius, "hole radius R");
  hole->add_option("--certificate", certificate, "verify an existing certificate instead");
  hole->add_option("--max-digits", max_digits, "refuse certificates whose coordinates exceed this many digits");
  hole->add_option("--out", out, "output JSON (default stdout)");

  auto* example = app.add_subcommand("example", "holonomies of the two-branch-point example");
  example->add_option("--radius", radius, "ball radius")->required();
  example->add_flag("--oracle", oracle, "use the geometric enumeration");
  example->add_option("--shift", shift_text, "branch point tx,ty as exact numbers");
  example->add_option("--out", out, "output CSV (default stdout)");

  auto* close = app.add_subcommand("close-pair", "two Dehn-twist holonomies closer than r");
  close->add_option("config", input, "cylinder JSON")->required();
  close->add_option("--radius", radius, "target distance r")->required();
  close->add_option("--out", out, "output JSON (default stdout)");

  auto* diagnose = app.add_subcommand("diagnose", "finite-window Delone estimates");
  diagnose->add_option("points", input, "points CSV")->required();
  diagnose->add_option("--window", window_text, "x0,y0,x1,y1 (default: data bounds)");
  diagnose->add_option("--resolution", resolution, "candidate-centre spacing");
  diagnose->add_option("--radii", radii_text, "comma-separated increasing radii");
  diagnose->add_option("--counts-out", counts_out, "also write the R,N(R) table as CSV");
  diagnose->add_option("--out", out, "output JSON (default stdout)");

  auto* plot = app.add_subcommand("plot", "SVG scatter of a points CSV");
  plot->add_option("points", input, "points CSV")->required();
  plot->add_option("--out", out, "output SVG (default stdout)");
  plot->add_option("--point-size", point_size, "marker radius in pixels");
  plot->add_option("--axis-range", axis_range, "fixed view [-a, a]^2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (enumerate->parsed()) {
      require_positive(radius, "--radius");
      const Origami o = origami_from_json(read_text_file(input));
      const auto classes = vertex_classes(o);
      if (!marked && std::none_of(classes.begin(), classes.end(), [](const VertexClass& c) { return c.singular; }))
        std::cerr << "notice: torus cover, no singularities; use --marked to count branch-point preimages\n";
      emit(out, points_to_csv(enumerate_holonomies(o, radius, marked)));
    } else if (coprime->parsed()) {
      require_positive(radius, "--radius");
      if (coprime->count("--max-gcd") && max_gcd < 1)
        throw Error(ErrorCode::kInvalidArgument, "--max-gcd must be >= 1");
      emit(out, points_to_csv(coprime->count("--max-gcd") ? gcd_filtered_points(max_gcd, radius)
                                                          : coprime_points(radius)));
    } else if (hole->parsed()) {
      HoleCertificate cert;
      if (!certificate.empty()) {
        cert = certificate_from_json(read_text_file(certificate));
      } else {
        if (!hole->count("--max-gcd") || !hole->count("--radius"))
          throw Error(ErrorCode::kInvalidArgument, "hole needs --max-gcd and --radius");
        if (max_gcd < 1) throw Error(ErrorCode::kInvalidArgument, "--max-gcd must be >= 1");
        require_positive(radius, "--radius");
        const double digits = estimated_certificate_digits(max_gcd, radius) / 2;
        if (digits > max_digits) {
          std::ostringstream msg;
          msg << "certificate too large: about " << std::llround(std::min(digits, 1e15))
              << " digits per coordinate exceeds the cap of " << max_digits;
          throw Error(ErrorCode::kCapExceeded, msg.str());
        }
        cert = crt_hole(max_gcd, radius);
      }
      const HoleReport report = verify_hole(cert);
      emit(out, hole_report_json(cert, report));
      if (!report.pass) {
        std::cerr << "error: " << report.message << "\n";
        return 1;
      }
    } else if (example->parsed()) {
      require_positive(radius, "--radius");
      BranchConfig cfg;
      if (!shift_text.empty()) {
        const auto comma = shift_text.find(',');
        if (comma == std::string::npos)
          throw Error(ErrorCode::kInvalidArgument, "--shift needs tx,ty");
        cfg.shift.tx = parse_quad(shift_text.substr(0, comma));
        cfg.shift.ty = parse_quad(shift_text.substr(comma + 1));
      }
      emit(out, points_to_csv(oracle ? geometric_oracle(cfg, radius) : closed_form(cfg, radius)));
    } else if (close->parsed()) {
      require_positive(radius, "--radius");
      const auto [ci, cj] = cylinders_from_json(read_text_file(input));
      emit(out, close_pair_to_json(close_pair(ci, cj, radius), radius) + "\n");
    } else if (diagnose->parsed()) {
      require_positive(resolution, "--resolution");
      const PointSet ps = points_from_csv(read_text_file(input));
      if (ps.empty()) throw Error(ErrorCode::kSize, "no points to diagnose");
      const Window window = window_text.empty() ? bounding_window(ps) : parse_window(window_text);
      const auto radii = radii_text.empty() ? default_radii(ps) : parse_doubles(radii_text, "--radii");
      const DeloneReport report = delone_report(ps, window, resolution, radii);
      if (!counts_out.empty()) write_text_file_atomic(counts_out, counts_to_csv(report.growth));
      emit(out, report_to_json(report, ps) + "\n");
    } else if (plot->parsed()) {
      PlotStyle style;
      require_positive(point_size, "--point-size");
      style.point_size = point_size;
      if (plot->count("--axis-range")) {
        require_positive(axis_range, "--axis-range");
        style.axis_range = axis_range;
      }
      emit(out, render_svg(points_from_csv(read_text_file(input)), style));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
