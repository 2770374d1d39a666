#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <tuple>

#include "delone/close_pair.hpp"
#include "delone/coprime.hpp"
#include "delone/diagnostics.hpp"
#include "delone/error.hpp"
#include "delone/example_surface.hpp"
#include "delone/io.hpp"
#include "delone/origami.hpp"

namespace py = pybind11;
using namespace delone;

namespace {

using Row = std::tuple<std::string, std::string, double, double, std::string>;

std::vector<Row> rows(const PointSet& ps) {
  std::vector<Row> out;
  out.reserve(ps.size());
  for (const auto& p : ps)
    out.emplace_back(to_string(p.x), to_string(p.y), to_double(p.x), to_double(p.y), p.tag);
  return out;
}

PointSet from_pairs(const std::vector<std::pair<std::string, std::string>>& pts) {
  std::vector<PlanarPoint> v;
  for (const auto& [x, y] : pts) v.push_back({parse_quad(x), parse_quad(y), {}});
  return PointSet::from_points(std::move(v));
}

py::int_ to_py(const mpz_class& z) { return py::int_(py::str(z.get_str())); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Holonomy sets of square-tiled and two-branch-point surfaces, with Delone diagnostics";
  py::register_exception<Error>(m, "DeloneError", PyExc_ValueError);

  m.def("quad_sign", [](const std::string& u) { return quad_sign(parse_quad(u)); },
        "Exact sign of a quadratic-field number given as text.");
  m.def("quad_compare",
        [](const std::string& u, const std::string& v) { return quad_compare(parse_quad(u), parse_quad(v)); });
  m.def("quad_canonical", [](const std::string& u) { return to_string(parse_quad(u)); });

  m.def("coprime_points", [](double r) { return rows(coprime_points(r)); }, py::arg("radius"));
  m.def("gcd_filtered_points", [](long n, double r) { return rows(gcd_filtered_points(n, r)); },
        py::arg("max_gcd"), py::arg("radius"));

  m.def("vertex_classes", [](const Permutation& h, const Permutation& v) {
    std::vector<std::vector<int>> out;
    for (const auto& c : vertex_classes(Origami(h, v))) out.push_back(c.sheets);
    return out;
  });
  m.def("crossing_word", [](long p, long q) {
    std::string s;
    for (Crossing c : crossing_word({p, q})) s.push_back(static_cast<char>(c));
    return s;
  });
  m.def("monodromy", [](const Permutation& h, const Permutation& v, long p, long q) {
    return monodromy(Origami(h, v), {p, q});
  });
  m.def("enumerate_holonomies",
        [](const Permutation& h, const Permutation& v, double r, bool marked) {
          return rows(enumerate_holonomies(Origami(h, v), r, marked));
        },
        py::arg("h"), py::arg("v"), py::arg("radius"), py::arg("marked") = false);

  m.def("crt_hole", [](long n, double r) { return certificate_to_json(crt_hole(n, r)); },
        py::arg("max_gcd"), py::arg("radius"), "Certificate as JSON text.");
  m.def("verify_hole", [](const std::string& cert_json) {
    const HoleReport r = verify_hole(certificate_from_json(cert_json));
    py::dict d;
    d["pass"] = r.pass;
    d["grid_ok"] = r.grid_ok;
    d["ball_ok"] = r.ball_ok;
    d["message"] = r.message;
    return d;
  });

  m.def("example_points",
        [](double r, bool oracle) {
          BranchConfig cfg;
          return rows(oracle ? geometric_oracle(cfg, r) : closed_form(cfg, r));
        },
        py::arg("radius"), py::arg("oracle") = false);

  m.def("continued_fraction", [](const std::string& value) {
    const auto cf = cf_expand(QuadIrrational::from_value(parse_quad(value)));
    py::list pre, per;
    for (const auto& a : cf.preperiod) pre.append(to_py(a));
    for (const auto& a : cf.period) per.append(to_py(a));
    return py::make_tuple(to_py(cf.a0), pre, per);
  });
  m.def("inhom_approx",
        [](const std::string& lambda, const std::string& c, double eps) {
          const auto s = inhom_approx(parse_quad(lambda), parse_quad(c), eps);
          return py::make_tuple(to_py(s.m), to_py(s.mp));
        },
        py::arg("lam"), py::arg("c"), py::arg("eps"), "(m, m') with |c + m - m' lam| < eps.");
  m.def("close_pair",
        [](const std::string& config_json, double r) {
          const auto [ci, cj] = cylinders_from_json(config_json);
          return close_pair_to_json(close_pair(ci, cj, r), r);
        },
        py::arg("config_json"), py::arg("r"));

  m.def("min_gap",
        [](const std::vector<std::pair<std::string, std::string>>& pts) {
          const PointSet ps = from_pairs(pts);
          const MinGap g = min_gap(ps);
          return py::make_tuple(g.gap, g.error, rows(ps)[g.first], rows(ps)[g.second]);
        },
        "(gap, error, row_a, row_b) for exact (x, y) strings.");
  m.def("diagnose",
        [](const std::string& csv, std::tuple<double, double, double, double> window,
           double resolution, const std::vector<double>& radii) {
          const PointSet ps = points_from_csv(csv);
          const auto [x0, y0, x1, y1] = window;
          return report_to_json(delone_report(ps, {x0, y0, x1, y1}, resolution, radii), ps);
        },
        py::arg("csv"), py::arg("window"), py::arg("resolution"), py::arg("radii"));
  m.def("points_to_csv", [](const std::vector<std::pair<std::string, std::string>>& pts) {
    return points_to_csv(from_pairs(pts));
  });
  m.def("render_svg", [](const std::string& csv, double point_size) {
    PlotStyle style;
    style.point_size = point_size;
    return render_svg(points_from_csv(csv), style);
  }, py::arg("csv"), py::arg("point_size") = 3.0);
}
