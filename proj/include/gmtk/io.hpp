#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gmtk/carleson.hpp"
#include "gmtk/content.hpp"
#include "gmtk/cubes.hpp"
#include "gmtk/point_cloud.hpp"

namespace gmtk {

/// JSON forms. Floats serialize at shortest round-trip precision, so every
/// value reloads bit-exact. Point clouds: {label, s, points, weights}
/// (coordinate form) or {label, s, matrix, weights}; optional atoms / kappa.
std::string point_cloud_to_json(const PointCloud& cloud);
PointCloud point_cloud_from_json(const std::string& text);

/// {value, s, delta, method, lower, upper}; delta null means uncapped.
std::string content_estimate_to_json(const ContentEstimate& est);
ContentEstimate content_estimate_from_json(const std::string& text);

/// {kind, params: {K, M, c}, cubes: [{id, level, center, scale, members,
/// children, parent}], roots}.
std::string cube_tree_to_json(const CubeTree& tree);
CubeTree cube_tree_from_json(const std::string& text);

/// Simple function for the layer-cake checks: {levels: [...],
/// carriers: [[indices]...]}, one level per carrier.
struct SimpleFunction {
  std::vector<double> levels;
  std::vector<std::vector<int>> carriers;

  /// Pointwise values on a cloud of n points (0 off the carriers).
  std::vector<double> values(std::size_t n_points) const;
};

std::string simple_function_to_json(const SimpleFunction& f);
SimpleFunction simple_function_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Flat pair table for plotting: x,radius,flag rows.
void write_pair_grid_csv(std::ostream& os, const PairGrid& grid, const PointCloud& cloud);

/// Two-column plot data (x y per line).
void write_plot_data(std::ostream& os, std::span<const double> xs,
                     std::span<const double> ys);

}  // namespace gmtk
