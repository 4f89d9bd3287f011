#pragma once

#include <string>
#include <vector>

#include "gmtk/net.hpp"
#include "gmtk/point_cloud.hpp"

namespace gmtk {

enum class CubeKind { schul, christ_david };

struct Cube {
  int id = -1;
  int level = 0;       // generation index n
  int center = -1;     // cloud index of x_Q
  double scale = 0.0;  // schul: core radius c*K*M^-n; christ-david: l(Q) = 2^-n
  std::vector<int> members;   // sorted cloud indices
  std::vector<int> children;  // cube ids
  int parent = -1;
  int fam_i = -1, fam_j = -1;  // thinning family tags, -1 when untagged
};

struct CubeTree {
  CubeKind kind = CubeKind::schul;
  double K = 0.0, M = 0.0, c = 0.0;  // schul parameters
  std::vector<Cube> cubes;
  std::vector<int> roots;

  const Cube& cube(int id) const { return cubes[id]; }
};

/// diam Q as the diameter of the member cell union (atom-extended), the
/// quantity paired with capped contents throughout.
double cube_diameter(const CubeTree& tree, const PointCloud& cloud, int cube_id);

/// Schul cubes: each net ball's cube is the chain closure of contracted
/// balls cB' (levels >= its own) meeting the growing set, processed to a
/// fixpoint; member set = cloud points inside the closure.
/// level_nets[n] lists net member indices at scale K*M^-n.
CubeTree build_schul_cubes(const PointCloud& cloud,
                           const std::vector<std::vector<int>>& level_nets, double K,
                           double M, double c);

/// Christ-David cubes from a nested hierarchy: finer net points chain to
/// their nearest coarser net point (exact-distance ties go to the point
/// appearing in the coarsest net, then lowest index), cloud points attach
/// to the nearest finest net point; Q = points whose chain passes through
/// x_Q. Levels partition the cloud exactly.
CubeTree build_christ_david_cubes(const PointCloud& cloud, const NetHierarchy& hierarchy);

/// The net-thinning bookkeeping: families X_n^{i,j} = X^i_{nJ+j} where the
/// X_m^i are successive greedy maximal 2^{-m+a+4}-separated subsets of X_m.
struct ThinnedFamilies {
  int a = 0;  // 2^{a-1} <= A < 2^a
  int J = 0;  // 2^-J < min(rho, eps/(16 s))
  int N = 0;  // number of separated families actually produced
  double A = 1.0;
  double c = 0.0;  // A * 2^{-4-a}
  int n_levels = 0;
  // nets[i][j][n] = member indices of X_n^{i,j}
  std::vector<std::vector<std::vector<std::vector<int>>>> nets;

  double M() const { return double(std::int64_t(1) << J); }
  double K(int j) const;
};

/// base must be a hierarchy of maximal 2^-m nets for m = 0..m_max.
ThinnedFamilies thin_nets(const PointCloud& cloud, const NetHierarchy& base, double A,
                          double epsilon, double rho, double s);

/// Cubes for one thinned family (i, j), tagged with the family indices.
CubeTree build_family_cubes(const PointCloud& cloud, const ThinnedFamilies& fam, int i,
                            int j);

struct CubeAxiomReport {
  std::vector<std::string> violations;
  double min_inner_ratio = 0.0;  // christ-david: measured c0
  double max_outer_ratio = 0.0;  // worst dist(member, center)/scale
  bool ok() const { return violations.empty(); }
};

/// Exhaustive pairwise nested-or-disjoint check plus the per-kind sandwich
/// (schul: B_Q within Q within (1+8/M)B_Q) or partition (christ-david)
/// checks. Violations are report content, not errors.
CubeAxiomReport verify_cube_axioms(const CubeTree& tree, const PointCloud& cloud);

}  // namespace gmtk
