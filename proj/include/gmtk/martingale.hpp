#pragma once

#include <iosfwd>
#include <vector>

#include "gmtk/cubes.hpp"
#include "gmtk/point_cloud.hpp"

namespace gmtk {

/// Ids of cubes whose certified content lower bound at cap
/// cap_factor * diam Q clears the high-density threshold
/// alpha * (diam Q)^s, alpha = 1 + epsilon/4.
std::vector<int> select_high_content_cubes(const CubeTree& tree, const PointCloud& cloud,
                                           double s, double epsilon, double cap_factor);

/// Stopping-time decomposition of a selected family: Stop(Q) lists the
/// maximal selected cubes strictly below Q, region(Q) the member cells kept
/// by Q itself, m(Q) the mixed mass mu(region) + sum of (diam R)^s over
/// stops. tops are the selected cubes with no selected ancestor.
struct StopForest {
  double s = 1.0;
  std::vector<int> family;  // sorted cube ids
  std::vector<int> tops;
  // all indexed by cube id; empty entries for unselected cubes
  std::vector<char> selected;
  std::vector<std::vector<int>> stops;
  std::vector<std::vector<int>> region;
  std::vector<double> diam;
  std::vector<double> mass;  // mu(Q)
  std::vector<double> m;
};

StopForest build_stop_forest(const CubeTree& tree, const PointCloud& cloud, double s,
                             const std::vector<int>& family);

/// Martingale reweighting under one top cube. Stage 0 is the flat density
/// (diam T)^s / mu(T) on T; each stage replaces the flat density on a
/// stopped cube R by lambda_Q * (its own flat density), lambda_Q =
/// (diam Q)^s / m(Q). Requires m(Q) >= alpha (diam Q)^s along the forest
/// (throws naming the first offending cube otherwise), which makes every
/// final value < alpha^-depth.
struct WeightStage {
  int stage = 0;
  std::vector<double> values;  // per cloud point, 0 outside the top cube
};

struct WeightSequence {
  int top = -1;
  double alpha = 1.0;
  std::vector<WeightStage> stages;  // stage 0 .. max chain depth (final)
  std::vector<int> depth_at;        // stop-chain depth per point, -1 outside

  const WeightStage& final_stage() const { return stages.back(); }
};

WeightSequence build_weight_sequence(const CubeTree& tree, const PointCloud& cloud,
                                     const StopForest& forest, int top, double alpha);

struct PackingBoundReport {
  double lhs = 0.0;            // sum of (diam Q)^s over the selected family
  double per_top_bound = 0.0;  // (alpha/(alpha-1)) * sum of top masses
  double global_bound = 0.0;   // N * J * (alpha/(alpha-1)) * mu(X)
  bool holds_per_top = false;
  bool holds_global = false;
};

/// The packing estimate the weights certify: integrating every cube's
/// weight reproduces (diam Q)^s, and the stacked geometric bound caps the
/// family sum by (alpha/(alpha-1)) per top cube mass.
PackingBoundReport packing_bound_via_weights(const CubeTree& tree, const PointCloud& cloud,
                                             const StopForest& forest, double alpha,
                                             int n_families, int j_levels);

/// Rows: cube_id,stage,cell,cell_mass,value for every nonzero value.
void write_weights_csv(std::ostream& os, const WeightSequence& seq,
                       const PointCloud& cloud);

}  // namespace gmtk
