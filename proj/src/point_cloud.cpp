#include "gmtk/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace gmtk {

double kahan_sum(std::span<const double> values) {
  double sum = 0.0, c = 0.0;
  for (double v : values) {
    double y = v - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double PointCloud::dist(int i, int j) const {
  if (!dist_matrix.empty()) return dist_matrix[i][j];
  const auto& a = coords[i];
  const auto& b = coords[j];
  double acc = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    double diff = a[d] - b[d];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

double PointCloud::total_mass() const { return kahan_sum(weights); }

double PointCloud::mass(std::span<const int> indices) const {
  double sum = 0.0, c = 0.0;
  for (int i : indices) {
    double y = weights[i] - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double PointCloud::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j)
      d = std::max(d, dist(int(i), int(j)));
  return d;
}

double PointCloud::min_atom() const {
  if (atom_diameters.empty()) return 0.0;
  return *std::min_element(atom_diameters.begin(), atom_diameters.end());
}

double PointCloud::kappa(double delta) const {
  for (const auto& [delta_max, kappa] : kappa_profile)
    if (delta <= delta_max) return kappa;
  return 0.0;
}

double PointCloud::cover_diameter(std::span<const int> indices) const {
  if (indices.empty()) return 0.0;
  if (indices.size() == 1) return atom(indices[0]);
  double d = 0.0;
  for (std::size_t a = 0; a < indices.size(); ++a)
    for (std::size_t b = a + 1; b < indices.size(); ++b) {
      int i = indices[a], j = indices[b];
      d = std::max(d, dist(i, j) + 0.5 * (atom(i) + atom(j)));
    }
  return std::max(d, atom(indices[0]));
}

namespace {

void validate_weights(const std::vector<double>& weights, std::size_t n_points) {
  if (weights.size() != n_points)
    throw std::invalid_argument("point cloud: weights length " + std::to_string(weights.size()) +
                                " != point count " + std::to_string(n_points));
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (!(weights[i] >= 0.0))
      throw std::invalid_argument("point cloud: negative weight at index " + std::to_string(i));
}

// Spot-check the triangle inequality on min(1000, all) triples. Exhaustive
// below ~14 points, seeded sampling above.
void check_triangles(const PointCloud& cloud) {
  std::size_t n = cloud.size();
  if (n < 3) return;
  auto check_one = [&](int i, int j, int k) {
    double tol = 1e-12 * (1.0 + cloud.dist(i, j));
    if (cloud.dist(i, j) > cloud.dist(i, k) + cloud.dist(k, j) + tol)
      throw std::invalid_argument("point cloud: triangle inequality fails on triple (" +
                                  std::to_string(i) + "," + std::to_string(j) + "," +
                                  std::to_string(k) + ")");
  };
  // each of the three sides must be bounded by the other two
  auto check = [&](int i, int j, int k) {
    check_one(i, j, k);
    check_one(i, k, j);
    check_one(j, k, i);
  };
  std::size_t total = n * (n - 1) * (n - 2) / 6;
  if (total <= 1000) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) check(int(i), int(j), int(k));
  } else {
    std::mt19937_64 rng(0x6d657472u);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int t = 0; t < 1000; ++t) {
      std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
      if (i == j || j == k || i == k) continue;
      check(int(i), int(j), int(k));
    }
  }
}

}  // namespace

PointCloud build_point_cloud(std::vector<std::vector<double>> coords,
                             std::vector<double> weights, double s, std::string label) {
  validate_weights(weights, coords.size());
  if (s < 0.0) throw std::invalid_argument("point cloud: s must be nonnegative");
  for (std::size_t i = 1; i < coords.size(); ++i)
    if (coords[i].size() != coords[0].size())
      throw std::invalid_argument("point cloud: coordinate dimension mismatch at index " +
                                  std::to_string(i));
  PointCloud cloud;
  cloud.coords = std::move(coords);
  cloud.weights = std::move(weights);
  cloud.s = s;
  cloud.label = std::move(label);
  return cloud;
}

PointCloud build_point_cloud_from_matrix(std::vector<std::vector<double>> matrix,
                                         std::vector<double> weights, double s,
                                         std::string label) {
  std::size_t n = matrix.size();
  validate_weights(weights, n);
  if (s < 0.0) throw std::invalid_argument("point cloud: s must be nonnegative");
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n)
      throw std::invalid_argument("point cloud: matrix row " + std::to_string(i) +
                                  " has wrong length");
    if (matrix[i][i] != 0.0)
      throw std::invalid_argument("point cloud: nonzero diagonal at index " + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (matrix[i][j] < 0.0)
        throw std::invalid_argument("point cloud: negative distance at (" + std::to_string(i) +
                                    "," + std::to_string(j) + ")");
      if (matrix[i][j] != matrix[j][i])
        throw std::invalid_argument("point cloud: asymmetric matrix at (" + std::to_string(i) +
                                    "," + std::to_string(j) + ")");
      if (i != j && matrix[i][j] == 0.0)
        throw std::invalid_argument("point cloud: zero off-diagonal distance at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  PointCloud cloud;
  cloud.dist_matrix = std::move(matrix);
  cloud.weights = std::move(weights);
  cloud.s = s;
  cloud.label = std::move(label);
  check_triangles(cloud);
  return cloud;
}

}  // namespace gmtk
