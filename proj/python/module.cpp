#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gmtk/carleson.hpp"
#include "gmtk/choquet.hpp"
#include "gmtk/content.hpp"
#include "gmtk/cubes.hpp"
#include "gmtk/fractals.hpp"
#include "gmtk/io.hpp"
#include "gmtk/martingale.hpp"
#include "gmtk/net.hpp"

namespace py = pybind11;
using namespace gmtk;

PYBIND11_MODULE(_gmtk, m) {
  m.doc() = "multiscale content / packing toolkit for weighted point clouds";

  py::class_<PointCloud>(m, "PointCloud")
      .def_property_readonly("size", &PointCloud::size)
      .def_readonly("s", &PointCloud::s)
      .def_readonly("label", &PointCloud::label)
      .def_readonly("weights", &PointCloud::weights)
      .def_readonly("coords", &PointCloud::coords)
      .def("total_mass", &PointCloud::total_mass)
      .def("diameter", &PointCloud::diameter)
      .def("dist", &PointCloud::dist)
      .def("to_json", [](const PointCloud& c) { return point_cloud_to_json(c); })
      .def_static("from_json",
                  [](const std::string& t) { return point_cloud_from_json(t); });

  py::class_<ContentEstimate>(m, "ContentEstimate")
      .def_readonly("value", &ContentEstimate::value)
      .def_readonly("lower", &ContentEstimate::lower_bound)
      .def_readonly("upper", &ContentEstimate::upper_bound)
      .def("to_json", [](const ContentEstimate& e) { return content_estimate_to_json(e); });

  py::class_<Net>(m, "Net")
      .def_readonly("scale_index", &Net::scale_index)
      .def_readonly("separation", &Net::separation)
      .def_readonly("members", &Net::members);

  py::class_<NetHierarchy>(m, "NetHierarchy")
      .def_readonly("nets", &NetHierarchy::nets)
      .def_readonly("nested", &NetHierarchy::nested);

  py::class_<Cube>(m, "Cube")
      .def_readonly("id", &Cube::id)
      .def_readonly("level", &Cube::level)
      .def_readonly("center", &Cube::center)
      .def_readonly("scale", &Cube::scale)
      .def_readonly("members", &Cube::members)
      .def_readonly("children", &Cube::children)
      .def_readonly("parent", &Cube::parent);

  py::class_<CubeTree>(m, "CubeTree")
      .def_readonly("cubes", &CubeTree::cubes)
      .def_readonly("roots", &CubeTree::roots)
      .def("to_json", [](const CubeTree& t) { return cube_tree_to_json(t); });

  py::class_<CubeAxiomReport>(m, "CubeAxiomReport")
      .def_readonly("violations", &CubeAxiomReport::violations)
      .def_readonly("min_inner_ratio", &CubeAxiomReport::min_inner_ratio)
      .def_readonly("max_outer_ratio", &CubeAxiomReport::max_outer_ratio)
      .def("ok", &CubeAxiomReport::ok);

  py::class_<CounterexampleRow>(m, "CounterexampleRow")
      .def_readonly("n", &CounterexampleRow::n)
      .def_readonly("exact_integral", &CounterexampleRow::exact_integral)
      .def_readonly("sampled_integral", &CounterexampleRow::sampled_integral)
      .def_readonly("flagged", &CounterexampleRow::flagged)
      .def_readonly("pairs", &CounterexampleRow::pairs)
      .def_readonly("fully_flagged", &CounterexampleRow::fully_flagged);

  py::class_<TheoremMainReport>(m, "TheoremMainReport")
      .def_readonly("sum", &TheoremMainReport::sum)
      .def_readonly("total_mass", &TheoremMainReport::total_mass)
      .def_readonly("ratio", &TheoremMainReport::ratio);

  m.def(
      "generate",
      [](const std::string& kind, int depth, double lam, double h, int npoints) {
        FractalSpec spec;
        spec.kind = parse_fractal_kind(kind);
        spec.depth = depth;
        spec.lambda = lam;
        spec.h = h;
        spec.npoints = npoints;
        return generate_fractal(spec).cloud;
      },
      py::arg("kind"), py::arg("depth") = 4, py::arg("lam") = 1.0 / 3.0,
      py::arg("h") = 1.0 / 32.0, py::arg("npoints") = 1024,
      "generate a test set as a weighted point cloud");

  m.def(
      "content",
      [](const PointCloud& cloud, std::vector<int> region, double s, double delta) {
        return content_greedy(cloud, region, s, delta);
      },
      py::arg("cloud"), py::arg("region"), py::arg("s"),
      py::arg("delta") = std::numeric_limits<double>::infinity(),
      "greedy two-sided capped content estimate over a point subset");

  m.def(
      "build_nets",
      [](const PointCloud& cloud, int n_min, int n_max, bool nested, std::uint64_t seed) {
        return build_net_hierarchy(cloud, n_min, n_max, nested, seed);
      },
      py::arg("cloud"), py::arg("n_min") = 0, py::arg("n_max") = 6,
      py::arg("nested") = true, py::arg("seed") = 0);

  m.def(
      "build_cubes",
      [](const PointCloud& cloud, int levels, std::uint64_t seed) {
        return build_christ_david_cubes(cloud,
                                        build_net_hierarchy(cloud, 0, levels, true, seed));
      },
      py::arg("cloud"), py::arg("levels") = 6, py::arg("seed") = 0);

  m.def("verify_cubes", [](const CubeTree& tree, const PointCloud& cloud) {
    return verify_cube_axioms(tree, cloud);
  });

  m.def(
      "counterexample_scan",
      [](std::vector<int> n_list, double eps, double R, double x) {
        return counterexample_scan(n_list, eps, R, x, nullptr);
      },
      py::arg("n_list"), py::arg("eps") = 0.2, py::arg("R") = 0.5, py::arg("x") = 0.5);

  m.def(
      "theorem_main",
      [](const PointCloud& cloud, double A, double eps, double rho, int levels) {
        return theorem_main_sum(cloud, cloud.s, A, eps, rho,
                                build_net_hierarchy(cloud, 0, levels, true));
      },
      py::arg("cloud"), py::arg("A") = 1.0, py::arg("eps") = 0.5, py::arg("rho") = 0.25,
      py::arg("levels") = 6);

  m.def(
      "choquet_integral",
      [](const PointCloud& cloud, std::vector<double> f, const std::string& backend,
         double delta) {
        MonotoneSetFunction mu =
            backend == "mass" ? mass_set_function(cloud)
                              : greedy_content_set_function(cloud, cloud.s, delta);
        return choquet_integral(mu, f, cloud.size());
      },
      py::arg("cloud"), py::arg("f"), py::arg("backend") = "mass",
      py::arg("delta") = std::numeric_limits<double>::infinity());
}
