#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "perc/arms.hpp"
#include "perc/crossings.hpp"
#include "perc/montecarlo.hpp"
#include "perc/shortcuts.hpp"
#include "perc/version.hpp"

namespace py = pybind11;
using namespace perc;

namespace {

py::dict estimate_dict(const EstimateRecord& r) {
  py::dict d;
  d["name"] = r.name;
  d["n"] = r.n;
  d["samples"] = r.samples;
  d["attempts"] = r.attempts;
  d["mean"] = r.mean;
  d["se"] = r.se;
  d["ci"] = py::make_tuple(r.ci_lo, r.ci_hi);
  return d;
}

py::dict fit_dict(const FitResult& f) {
  py::dict d;
  d["slope"] = f.slope;
  d["intercept"] = f.intercept;
  d["slope_se"] = f.slope_se;
  d["ci"] = py::make_tuple(f.ci_lo, f.ci_hi);
  return d;
}

std::vector<std::pair<int, int>> path_vertices(const LatticePath& p) {
  std::vector<std::pair<int, int>> out;
  out.reserve(p.vertices.size());
  for (const Pt& v : p.vertices) out.push_back({v.x, v.y});
  return out;
}

}  // namespace

PYBIND11_MODULE(_perclab, m) {
  m.doc() = "critical bond percolation crossing-geometry laboratory";
  m.attr("__version__") = kVersion;

  py::class_<BoxGeometry>(m, "BoxGeometry")
      .def(py::init<int>(), py::arg("n"))
      .def_readonly("n", &BoxGeometry::n)
      .def_property_readonly("vertex_count", &BoxGeometry::vertex_count)
      .def_property_readonly("edge_count", &BoxGeometry::edge_count);

  py::class_<Config>(m, "Config")
      .def_readonly("p", &Config::p)
      .def_readonly("seed", &Config::seed)
      .def_property_readonly("n", [](const Config& c) { return c.geom.n; })
      .def("open", [](const Config& c, long long e) { return c.open(e); })
      .def("open_fraction", [](const Config& c) {
        long long open = 0;
        for (auto s : c.states) open += s;
        return double(open) / double(c.states.size());
      });

  m.def("sample_config",
        [](int n, double p, std::uint64_t seed) { return sample_config(BoxGeometry(n), p, seed); },
        py::arg("n"), py::arg("p") = 0.5, py::arg("seed") = 1);

  m.def("has_horizontal_crossing", &has_horizontal_crossing);
  m.def("lowest_crossing",
        [](const Config& c) { return path_vertices(lowest_crossing(c)); });
  m.def("shortest_crossing",
        [](const Config& c) { return path_vertices(shortest_crossing(c)); });
  m.def("crossing_lengths", [](const Config& c) {
    CrossingRecord r = analyze_crossing(c);
    return py::make_tuple(r.crossed, r.S, r.L);
  });
  m.def("three_arm_characterization", &three_arm_characterization);
  m.def("three_arm_edge_set", &three_arm_edge_set);

  m.def("detect_three_arm", &detect_three_arm, py::arg("config"), py::arg("center_edge"),
        py::arg("outer_radius"));
  m.def("estimate_pi3",
        [](int n, long long samples, std::uint64_t seed, double p, int workers) {
          return estimate_dict(estimate_pi3(n, samples, seed, p, workers));
        },
        py::arg("n"), py::arg("samples"), py::arg("seed") = 1, py::arg("p") = 0.5,
        py::arg("workers") = 0);

  m.def("min_defect_circuit",
        [](const Config& c, int inner, int outer, bool closed_dual) {
          auto r = min_defect_circuit(c, inner, outer,
                                      closed_dual ? EdgeColor::ClosedDual : EdgeColor::Open);
          return py::make_tuple(r.defects, path_vertices(r.witness.circuit));
        },
        py::arg("config"), py::arg("inner"), py::arg("outer"), py::arg("closed_dual") = true);

  m.def("fit_power_law", [](const std::vector<std::tuple<double, double, double>>& pts) {
    std::vector<FitPoint> fp;
    for (auto& [n, est, se] : pts) fp.push_back({n, est, se});
    return fit_dict(fit_power_law(fp));
  });

  m.def("run_ratio_experiment",
        [](std::vector<int> ns, long long samples, std::uint64_t seed, double p, int workers) {
          ExperimentSpec spec;
          spec.kind = ExperimentSpec::Kind::Ratio;
          spec.n_list = std::move(ns);
          spec.samples = samples;
          spec.master_seed = seed;
          spec.p = p;
          spec.workers = workers;
          RatioResult r = run_ratio_experiment(spec);
          py::list rows;
          for (const auto& row : r.rows) {
            py::dict d;
            d["n"] = row.n;
            d["chem"] = estimate_dict(row.chem);
            d["lowest"] = estimate_dict(row.lowest);
            d["ratio"] = estimate_dict(row.ratio);
            rows.append(d);
          }
          py::dict out;
          out["rows"] = rows;
          out["ratio_fit"] = fit_dict(r.ratio_fit);
          out["chem_fit"] = fit_dict(r.chem_fit);
          out["lowest_fit"] = fit_dict(r.lowest_fit);
          return out;
        },
        py::arg("n_list"), py::arg("samples"), py::arg("seed") = 1, py::arg("p") = 0.5,
        py::arg("workers") = 0);

  py::register_exception<DegenerateStatistics>(m, "DegenerateStatistics");
}
