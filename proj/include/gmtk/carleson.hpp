#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmtk/content.hpp"
#include "gmtk/cubes.hpp"
#include "gmtk/fractals.hpp"
#include "gmtk/net.hpp"

namespace gmtk {

/// Sampled (point, radius) pairs on a dyadic radius grid, with certified-bad
/// indicators. An unflagged pair means "not found bad at this resolution".
struct PairGrid {
  std::vector<int> xs;         // cloud indices, sorted
  std::vector<double> radii;   // dyadic radii, descending
  // flags[ix][ir] with a witness when flagged
  struct Witness {
    int y = -1;
    double t = 0.0;
    double content_upper = 0.0;
    double threshold = 0.0;
  };
  std::vector<std::vector<char>> flags;
  std::vector<std::vector<Witness>> witnesses;

  std::size_t flagged_count() const;
};

PairGrid make_pair_grid(const PointCloud& cloud, double r_min, double r_max);

/// Flags (x, r) iff some sampled witness (y, t), y a cloud point in B(x,r)
/// and t on the dyadic sub-grid of (0, r), certifies
/// H^s_inf(E cap B(y,t)) < (2t)^s - eps (2r)^s via a content upper
/// bound (exact for 1D interval clouds, greedy otherwise). Flags are sound:
/// upper bound below the threshold implies the true content is.
PairGrid wld_bad_pairs(const GeneratedSet& set, double epsilon, PairGrid grid,
                       int witness_grid_log = 4, int threads = 1);

/// Riemann-sum truncated Carleson norm: max over witnesses (x, R = r_max)
/// of R^-d sum over dyadic levels r_j = R 2^-j >= r_min of
/// ln 2 * (flagged mass in B(x, R) at level r_j).
double carleson_norm(const PairGrid& grid, const PointCloud& cloud, double d,
                     double r_min, double r_max);

/// The same dyadic Riemann sum without the R^-d normalization, evaluated at
/// one witness center; this is the truncated Carleson integral of the scan.
double carleson_integral_at(const PairGrid& grid, const PointCloud& cloud, int x_index,
                            double r_max, double r_min);

enum class CubeLabel { G, B1, B2, B1_and_B2 };

struct CubeClassification {
  double A = 1.0, epsilon = 0.0, rho = 0.0;
  std::vector<CubeLabel> labels;  // indexed by cube id
  std::vector<PairGrid::Witness> b1_witnesses;

  std::size_t count(CubeLabel l) const;
};

/// Per-cube G / B1 / B2 labels against a Christ-David tree, with
/// B_Q = B(x_Q, 3 l(Q)). B2 uses the certified content lower bound at cap
/// rho r_Q; B1 searches witnesses (y, r) on the dyadic grid with upper
/// bounds, so both flags are one-sided sound.
CubeClassification classify_cubes(const CubeTree& tree, const GeneratedSet& set, double A,
                                  double epsilon, double rho, int witness_grid_log = 4);

struct PackingSum {
  double sum = 0.0;
  double ratio = 0.0;  // sum / l(R)^d
};

/// Sum of l(Q)^d over subset cubes whose members lie inside the root cube.
PackingSum packing_sum(const CubeTree& tree, const std::vector<int>& cube_subset,
                       int root_id, double d);

struct TheoremMainReport {
  double sum = 0.0;        // sum of r_B^s over certified-bad balls
  double total_mass = 0.0; // mu(X)
  double ratio = 0.0;
  std::vector<std::pair<int, Ball>> bad_balls;  // (level n, ball)
};

/// The packing-theorem statistic: balls B(x, 2^-n), x in X_n, flagged when
/// the certified lower bound of H^s_{rho r}(X cap AB) exceeds
/// (1+eps)(2r)^s; reports the sum of r^s and its ratio to mu(X).
TheoremMainReport theorem_main_sum(const PointCloud& cloud, double s, double A,
                                   double epsilon, double rho,
                                   const NetHierarchy& hierarchy);

struct CounterexampleRow {
  int n = 0;
  double exact_integral = 0.0;    // closed form: H^1(E_n cap B(x,R)) ln(R 2^n)
  double sampled_integral = 0.0;  // dyadic Riemann sum via wld_bad_pairs
  std::size_t flagged = 0;
  std::size_t pairs = 0;
  bool fully_flagged = false;
};

/// Growth of the truncated Carleson integral of the flagged band of E_n.
/// Warns (does not fail) when epsilon >= 1/3, where the full-band inclusion
/// is not guaranteed.
std::vector<CounterexampleRow> counterexample_scan(const std::vector<int>& n_list,
                                                   double epsilon, double R,
                                                   double x_center,
                                                   bool* epsilon_warning = nullptr);

}  // namespace gmtk
