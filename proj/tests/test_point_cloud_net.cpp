#include "doctest.h"

#include <cmath>
#include <vector>

#include "gmtk/fractals.hpp"
#include "gmtk/net.hpp"
#include "gmtk/point_cloud.hpp"

using namespace gmtk;

namespace {

PointCloud line_cloud(std::vector<double> xs) {
  std::vector<std::vector<double>> pts;
  for (double x : xs) pts.push_back({x});
  return build_point_cloud(pts, std::vector<double>(xs.size(), 1.0), 1.0, "line");
}

}  // namespace

TEST_CASE("point cloud validation names the offending index") {
  CHECK_THROWS_AS(build_point_cloud({{0.0}, {1.0}}, {1.0, -1.0}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_point_cloud({{0.0}, {1.0}}, {1.0}, 1.0), std::invalid_argument);
  // asymmetric matrix
  CHECK_THROWS_AS(build_point_cloud_from_matrix({{0.0, 1.0}, {2.0, 0.0}}, {1.0, 1.0}, 1.0),
                  std::invalid_argument);
  // triangle inequality violation
  CHECK_THROWS_AS(build_point_cloud_from_matrix(
                      {{0.0, 1.0, 5.0}, {1.0, 0.0, 1.0}, {5.0, 1.0, 0.0}},
                      {1.0, 1.0, 1.0}, 1.0),
                  std::invalid_argument);
}

TEST_CASE("mass, diameter and distance basics") {
  auto c = line_cloud({0.0, 0.3, 0.6, 1.0});
  CHECK(c.total_mass() == doctest::Approx(4.0));
  CHECK(c.diameter() == doctest::Approx(1.0));
  CHECK(c.dist(0, 2) == doctest::Approx(0.6));
  std::vector<int> sub = {1, 3};
  CHECK(c.mass(sub) == doctest::Approx(2.0));
}

TEST_CASE("kahan sum matches exact rational sums") {
  std::vector<double> terms(1 << 12, 1.0 / (1 << 12));
  CHECK(kahan_sum(terms) == 1.0);
}

TEST_CASE("greedy net on a short line") {
  auto c = line_cloud({0.0, 0.3, 0.6, 1.0});
  auto net = greedy_maximal_net(c, 0.5);
  CHECK(net.members == std::vector<int>{0, 2});
  CHECK(net_invariants_hold(c, net));
}

TEST_CASE("seed members are admitted first") {
  auto c = line_cloud({0.0, 0.3, 0.6, 1.0});
  std::vector<int> seed = {3};
  auto net = greedy_maximal_net(c, 0.5, 0, seed);
  REQUIRE(!net.members.empty());
  CHECK(net.members.front() == 3);
  CHECK(net_invariants_hold(c, net));
}

TEST_CASE("nested hierarchy on a fine grid satisfies the net invariants") {
  FractalSpec g;
  g.kind = FractalKind::interval_grid;
  g.npoints = 256;
  auto c = generate_fractal(g);
  auto h = build_net_hierarchy(c.cloud, 0, 5, true);
  REQUIRE(h.nets.size() == 6);
  CHECK(h.nested);
  for (std::size_t k = 0; k < h.nets.size(); ++k) {
    CHECK(h.nets[k].separation == doctest::Approx(std::ldexp(1.0, -int(k))));
    CHECK(net_invariants_hold(c.cloud, h.nets[k]));
  }
  // nesting: every coarser member appears in the finer net
  for (std::size_t k = 1; k < h.nets.size(); ++k)
    for (int m : h.nets[k - 1].members) {
      bool found = false;
      for (int f : h.nets[k].members) found = found || f == m;
      CHECK(found);
    }
}

TEST_CASE("doubling witness on interval and planar grids") {
  FractalSpec g;
  g.kind = FractalKind::interval_grid;
  g.npoints = 256;
  auto c = generate_fractal(g);
  std::vector<double> scales = {0.25, 1.0 / 16};
  CHECK(estimate_doubling_constant(c.cloud, scales) <= 3.0);

  std::vector<std::vector<double>> pts;
  std::vector<double> w;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      pts.push_back({i / 15.0, j / 15.0});
      w.push_back(1.0 / 256);
    }
  auto c2 = build_point_cloud(pts, w, 2.0, "grid2d");
  std::vector<double> sc2 = {0.25};
  CHECK(estimate_doubling_constant(c2, sc2) <= 9.0);
}

TEST_CASE("normalized set distance inside a ball") {
  auto c = line_cloud({0.0, 0.5, 1.0});
  Ball b{1, 0.5};  // covers everything
  std::vector<int> e = {0}, f = {2};
  // both one-sided sups are 1, diam B = 1
  CHECK(set_distance_normalized(e, f, b, c) == doctest::Approx(2.0));
  std::vector<int> same = {0, 1, 2};
  CHECK(set_distance_normalized(same, same, b, c) == doctest::Approx(0.0));
  // a set missing the ball throws
  Ball left{0, 0.1};
  CHECK_THROWS_AS(set_distance_normalized(e, f, left, c), std::domain_error);
}
