#include "gmtk/fractals.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace gmtk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

GeneratedSet make_every_other_dyadic(int n) {
  if (n < 1) throw std::invalid_argument("fractal: E_n needs depth >= 1");
  if (n > 30) throw std::invalid_argument("fractal: E_n depth too large");
  GeneratedSet out;
  std::vector<std::vector<double>> coords;
  std::vector<double> weights;
  std::vector<DyadicInterval> parts;
  double cell = std::ldexp(1.0, -n);
  std::int64_t count = std::int64_t(1) << (n - 1);
  for (std::int64_t k = 1; k <= count; ++k) {
    Dyadic lo(2 * k - 1, n), hi(2 * k, n);
    parts.push_back({lo, hi});
    coords.push_back({(lo.to_double() + hi.to_double()) / 2.0});
    weights.push_back(cell);
  }
  out.cloud = build_point_cloud(std::move(coords), std::move(weights), 1.0,
                                "every_other_dyadic:depth=" + std::to_string(n));
  out.cloud.atom_diameters.assign(out.cloud.size(), cell);
  out.cloud.kappa_profile = {{kInf, 1.0}};
  out.intervals = normalize_intervals(std::move(parts));
  return out;
}

GeneratedSet make_cantor_1d(double lambda, int depth) {
  if (!(lambda > 0.0 && lambda <= 0.5))
    throw std::invalid_argument("fractal: cantor lambda must be in (0, 1/2]");
  if (depth < 1 || depth > 24) throw std::invalid_argument("fractal: bad cantor depth");
  double s = std::log(2.0) / std::log(1.0 / lambda);
  std::vector<double> lefts = {0.0};
  double len = 1.0;
  for (int d = 0; d < depth; ++d) {
    std::vector<double> next;
    next.reserve(lefts.size() * 2);
    double child = len * lambda;
    for (double a : lefts) {
      next.push_back(a);
      next.push_back(a + len - child);
    }
    lefts = std::move(next);
    len = child;
  }
  GeneratedSet out;
  std::vector<std::vector<double>> coords;
  std::vector<double> weights;
  double w = std::ldexp(1.0, -depth);
  for (double a : lefts) {
    coords.push_back({a + len / 2.0});
    weights.push_back(w);
  }
  out.cloud = build_point_cloud(std::move(coords), std::move(weights), s,
                                "cantor_1d:depth=" + std::to_string(depth) +
                                    ":lambda=" + fmt_param(lambda));
  out.cloud.atom_diameters.assign(out.cloud.size(), len);
  // The natural-measure mass distribution mu(U) <= (diam U)^s is the
  // classical normalization for lambda <= 1/3; for larger ratios the
  // comparability constant is not 1 and we leave the bound unavailable.
  if (lambda <= 1.0 / 3.0 + 1e-15) out.cloud.kappa_profile = {{kInf, 1.0}};
  return out;
}

GeneratedSet make_four_corner(int depth) {
  if (depth < 1 || depth > 10) throw std::invalid_argument("fractal: bad four_corner depth");
  std::vector<std::pair<double, double>> corners = {{0.0, 0.0}};
  double side = 1.0;
  for (int d = 0; d < depth; ++d) {
    std::vector<std::pair<double, double>> next;
    next.reserve(corners.size() * 4);
    double child = side / 4.0;
    for (auto [x, y] : corners) {
      next.push_back({x, y});
      next.push_back({x + side - child, y});
      next.push_back({x, y + side - child});
      next.push_back({x + side - child, y + side - child});
    }
    corners = std::move(next);
    side = child;
  }
  GeneratedSet out;
  std::vector<std::vector<double>> coords;
  std::vector<double> weights;
  double w = std::pow(0.25, depth);
  for (auto [x, y] : corners) {
    coords.push_back({x + side / 2.0, y + side / 2.0});
    weights.push_back(w);
  }
  out.cloud = build_point_cloud(std::move(coords), std::move(weights), 1.0,
                                "four_corner:depth=" + std::to_string(depth));
  out.cloud.atom_diameters.assign(out.cloud.size(), side * std::sqrt(2.0));
  // No classical equality between natural measure and H^1 content here;
  // kappa_profile stays empty and mass lower bounds report 0.
  return out;
}

GeneratedSet make_parallel_segments(double h, int depth) {
  if (!(h > 0.0)) throw std::invalid_argument("fractal: segment separation must be positive");
  if (depth < 1 || depth > 20) throw std::invalid_argument("fractal: bad segment depth");
  std::int64_t cells = std::int64_t(1) << depth;
  double cell = 1.0 / double(cells);
  GeneratedSet out;
  std::vector<std::vector<double>> coords;
  std::vector<double> weights;
  for (int seg = 0; seg < 2; ++seg) {
    double y = seg == 0 ? 0.0 : h;
    for (std::int64_t i = 0; i < cells; ++i) {
      coords.push_back({(double(i) + 0.5) * cell, y});
      weights.push_back(cell);
    }
  }
  out.cloud = build_point_cloud(std::move(coords), std::move(weights), 1.0,
                                "parallel_segments:depth=" + std::to_string(depth) +
                                    ":h=" + fmt_param(h));
  out.cloud.atom_diameters.assign(out.cloud.size(), cell);
  // A cover set of diameter < h meets one segment only, where mass is
  // length; at or above h it can meet both.
  out.cloud.kappa_profile = {{h * (1.0 - 1e-12), 1.0}, {kInf, 2.0}};
  return out;
}

GeneratedSet make_interval_grid(int npoints) {
  if (npoints < 1) throw std::invalid_argument("fractal: interval grid needs >= 1 cell");
  GeneratedSet out;
  std::vector<std::vector<double>> coords;
  std::vector<double> weights;
  double cell = 1.0 / double(npoints);
  for (int i = 0; i < npoints; ++i) {
    coords.push_back({(double(i) + 0.5) * cell});
    weights.push_back(cell);
  }
  out.cloud = build_point_cloud(std::move(coords), std::move(weights), 1.0,
                                "interval_grid:npoints=" + std::to_string(npoints));
  out.cloud.atom_diameters.assign(out.cloud.size(), cell);
  out.cloud.kappa_profile = {{kInf, 1.0}};
  out.intervals = normalize_intervals({{Dyadic(0, 0), Dyadic(1, 0)}});
  return out;
}

}  // namespace

GeneratedSet generate_fractal(const FractalSpec& spec) {
  switch (spec.kind) {
    case FractalKind::every_other_dyadic:
      return make_every_other_dyadic(spec.depth);
    case FractalKind::cantor_1d:
      return make_cantor_1d(spec.lambda, spec.depth);
    case FractalKind::four_corner:
      return make_four_corner(spec.depth);
    case FractalKind::parallel_segments:
      return make_parallel_segments(spec.h, spec.depth);
    case FractalKind::interval_grid:
      return make_interval_grid(spec.npoints);
  }
  throw std::invalid_argument("fractal: unknown kind");
}

FractalKind parse_fractal_kind(const std::string& name) {
  if (name == "en" || name == "every_other_dyadic") return FractalKind::every_other_dyadic;
  if (name == "cantor" || name == "cantor_1d") return FractalKind::cantor_1d;
  if (name == "four_corner") return FractalKind::four_corner;
  if (name == "segments" || name == "parallel_segments") return FractalKind::parallel_segments;
  if (name == "interval" || name == "grid" || name == "interval_grid") return FractalKind::interval_grid;
  throw std::invalid_argument("fractal: unknown kind '" + name + "'");
}

RegularityReport check_ahlfors_regularity(const PointCloud& cloud, double s,
                                          std::span<const double> radius_grid) {
  RegularityReport report;
  for (double r : radius_grid) {
    for (std::size_t x = 0; x < cloud.size(); ++x) {
      double mass = 0.0, c = 0.0;
      for (std::size_t p = 0; p < cloud.size(); ++p) {
        if (cloud.dist(int(x), int(p)) <= r) {
          double y = cloud.weights[p] - c;
          double t = mass + y;
          c = (t - mass) - y;
          mass = t;
        }
      }
      double rs = std::pow(r, s);
      double ratio = mass > 0.0 ? std::max(rs / mass, mass / rs)
                                : std::numeric_limits<double>::infinity();
      if (ratio > report.c0_witness) {
        report.c0_witness = ratio;
        report.worst_radius = r;
        report.worst_center = int(x);
      }
    }
  }
  return report;
}

}  // namespace gmtk
