#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gmtk/intervals.hpp"
#include "gmtk/point_cloud.hpp"

namespace gmtk {

enum class FractalKind {
  every_other_dyadic,  // E_n: every other dyadic interval of length 2^-n in [0,1]
  cantor_1d,           // two contractions of ratio lambda at the ends of [0,1]
  four_corner,         // 4 corner squares of side 1/4 per iteration
  parallel_segments,   // two unit segments at vertical separation h
  interval_grid        // [0,1] split into npoints cells
};

struct FractalSpec {
  FractalKind kind = FractalKind::interval_grid;
  int depth = 1;         // generation depth (E_n: n; parallel_segments: cells = 2^depth)
  double lambda = 1.0 / 3.0;  // cantor_1d contraction ratio, in (0, 1/2]
  double h = 0.0;        // parallel_segments separation
  int npoints = 1024;    // interval_grid cell count
};

/// A generated test set: cell-center point cloud with natural-measure
/// weights, plus the exact interval-union form when the set is 1D with
/// dyadic endpoints.
struct GeneratedSet {
  PointCloud cloud;
  std::optional<IntervalUnion> intervals;
};

/// Every point samples a generation-depth cell at its center; weights carry
/// the cell's natural measure so the total equals the declared H^s
/// normalization (E_n: 1/2; cantor and interval grid: 1; four_corner: 1;
/// parallel_segments: 2).
GeneratedSet generate_fractal(const FractalSpec& spec);

FractalKind parse_fractal_kind(const std::string& name);

struct RegularityReport {
  double c0_witness = 0.0;  // max over sampled (x, r) of max(r^s/mu(B), mu(B)/r^s)
  double worst_radius = 0.0;
  int worst_center = -1;
};

RegularityReport check_ahlfors_regularity(const PointCloud& cloud, double s,
                                          std::span<const double> radius_grid);

}  // namespace gmtk
