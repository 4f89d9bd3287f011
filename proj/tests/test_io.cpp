#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>

#include "gmtk/carleson.hpp"
#include "gmtk/cubes.hpp"
#include "gmtk/fractals.hpp"
#include "gmtk/io.hpp"
#include "gmtk/net.hpp"

using namespace gmtk;

TEST_CASE("point cloud json round trip is bit exact") {
  FractalSpec s;
  s.kind = FractalKind::cantor_1d;
  s.depth = 4;
  s.lambda = 1.0 / 3.0;
  auto g = generate_fractal(s);
  auto back = point_cloud_from_json(point_cloud_to_json(g.cloud));
  REQUIRE(back.size() == g.cloud.size());
  CHECK(back.s == g.cloud.s);
  CHECK(back.label == g.cloud.label);
  for (std::size_t i = 0; i < g.cloud.size(); ++i) {
    CHECK(back.weights[i] == g.cloud.weights[i]);
    CHECK(back.coords[i][0] == g.cloud.coords[i][0]);
    CHECK(back.atom(int(i)) == g.cloud.atom(int(i)));
  }
  CHECK(back.kappa(0.01) == g.cloud.kappa(0.01));
}

TEST_CASE("matrix-form cloud survives the round trip") {
  auto c = build_point_cloud_from_matrix({{0.0, 1.0}, {1.0, 0.0}}, {0.25, 0.75}, 1.0,
                                         "pair");
  auto back = point_cloud_from_json(point_cloud_to_json(c));
  CHECK(!back.has_coords());
  CHECK(back.dist(0, 1) == 1.0);
  CHECK(back.weights[1] == 0.75);
}

TEST_CASE("content estimate json keeps the certificate") {
  ContentEstimate est;
  est.value = 0.5;
  est.s = std::log(2.0) / std::log(3.0);
  est.delta = 0.125;
  est.method = ContentMethod::oracle_exact;
  est.lower_bound = 0.5;
  est.upper_bound = 0.5;
  auto back = content_estimate_from_json(content_estimate_to_json(est));
  CHECK(back.value == est.value);
  CHECK(back.s == est.s);
  CHECK(back.delta == est.delta);
  CHECK(back.method == est.method);
  CHECK(back.lower_bound == est.lower_bound);
  CHECK(back.upper_bound == est.upper_bound);
  // uncapped delta serializes as null and reloads as infinity
  est.delta = std::numeric_limits<double>::infinity();
  auto inf_back = content_estimate_from_json(content_estimate_to_json(est));
  CHECK(std::isinf(inf_back.delta));
}

TEST_CASE("cube tree json round trip") {
  FractalSpec s;
  s.kind = FractalKind::interval_grid;
  s.npoints = 64;
  auto g = generate_fractal(s);
  auto tree = build_christ_david_cubes(g.cloud, build_net_hierarchy(g.cloud, 0, 3, true));
  auto back = cube_tree_from_json(cube_tree_to_json(tree));
  REQUIRE(back.cubes.size() == tree.cubes.size());
  CHECK(back.kind == tree.kind);
  CHECK(back.roots == tree.roots);
  for (std::size_t i = 0; i < tree.cubes.size(); ++i) {
    CHECK(back.cubes[i].id == tree.cubes[i].id);
    CHECK(back.cubes[i].level == tree.cubes[i].level);
    CHECK(back.cubes[i].center == tree.cubes[i].center);
    CHECK(back.cubes[i].scale == tree.cubes[i].scale);
    CHECK(back.cubes[i].members == tree.cubes[i].members);
    CHECK(back.cubes[i].children == tree.cubes[i].children);
    CHECK(back.cubes[i].parent == tree.cubes[i].parent);
  }
}

TEST_CASE("simple function json and pointwise values") {
  SimpleFunction f;
  f.levels = {2.0, -1.0};
  f.carriers = {{0, 2}, {3}};
  auto back = simple_function_from_json(simple_function_to_json(f));
  CHECK(back.levels == f.levels);
  CHECK(back.carriers == f.carriers);
  auto vals = f.values(5);
  CHECK(vals == std::vector<double>{2.0, 0.0, 2.0, -1.0, 0.0});
}

TEST_CASE("pair grid csv carries one row per pair") {
  FractalSpec s;
  s.kind = FractalKind::interval_grid;
  s.npoints = 16;
  auto g = generate_fractal(s);
  auto pg = make_pair_grid(g.cloud, 0.25, 1.0);
  std::ostringstream os;
  write_pair_grid_csv(os, pg, g.cloud);
  auto text = os.str();
  CHECK(text.rfind("point,radius,flag,witness_y,witness_t", 0) == 0);
  std::size_t rows = std::count(text.begin(), text.end(), '\n') - 1;
  CHECK(rows == pg.xs.size() * pg.radii.size());
}

TEST_CASE("plot data is two columns at full precision") {
  std::ostringstream os;
  std::vector<double> xs = {1.0, 2.0}, ys = {0.1, 0.2};
  write_plot_data(os, xs, ys);
  std::istringstream in(os.str());
  double a, b;
  in >> a >> b;
  CHECK(a == 1.0);
  CHECK(b == 0.1);
}

TEST_CASE("text file round trip") {
  std::string path = "gmtk_io_test.tmp";
  write_text_file(path, "hello\n");
  CHECK(read_text_file(path) == "hello\n");
  std::remove(path.c_str());
  CHECK_THROWS(read_text_file(path));
}
