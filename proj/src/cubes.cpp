#include "gmtk/cubes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gmtk {

double cube_diameter(const CubeTree& tree, const PointCloud& cloud, int cube_id) {
  return cloud.cover_diameter(tree.cubes[cube_id].members);
}

CubeTree build_schul_cubes(const PointCloud& cloud,
                           const std::vector<std::vector<int>>& level_nets, double K,
                           double M, double c) {
  if (!(c > 0.0 && c < 0.125))
    throw std::invalid_argument("schul cubes: c must lie in (0, 1/8)");
  if (!(M >= 2.0)) throw std::invalid_argument("schul cubes: M must be >= 2");

  struct BallRec {
    int level;
    int center;
    double core_radius;
  };
  std::vector<BallRec> balls;
  for (std::size_t n = 0; n < level_nets.size(); ++n) {
    double core = c * K * std::pow(M, -double(n));
    for (int x : level_nets[n]) balls.push_back({int(n), x, core});
  }

  // core-intersection adjacency; chains only run through balls at the same
  // or finer level than the root, enforced during the BFS
  std::size_t nb = balls.size();
  std::vector<std::vector<int>> adj(nb);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = i + 1; j < nb; ++j) {
      if (cloud.dist(balls[i].center, balls[j].center) <=
          balls[i].core_radius + balls[j].core_radius) {
        adj[i].push_back(int(j));
        adj[j].push_back(int(i));
      }
    }

  // points inside each core ball
  std::vector<std::vector<int>> ball_points(nb);
  for (std::size_t b = 0; b < nb; ++b)
    for (std::size_t p = 0; p < cloud.size(); ++p)
      if (cloud.dist(balls[b].center, int(p)) <= balls[b].core_radius)
        ball_points[b].push_back(int(p));

  CubeTree tree;
  tree.kind = CubeKind::schul;
  tree.K = K;
  tree.M = M;
  tree.c = c;

  // per level: BFS clusters over balls of level >= n, one cube per root ball
  std::vector<std::vector<int>> cluster_of_ball(level_nets.size(),
                                                std::vector<int>(nb, -1));
  for (std::size_t n = 0; n < level_nets.size(); ++n) {
    for (std::size_t root = 0; root < nb; ++root) {
      if (balls[root].level != int(n)) continue;
      if (cluster_of_ball[n][root] != -1) continue;
      int cube_id = int(tree.cubes.size());
      Cube q;
      q.id = cube_id;
      q.level = int(n);
      q.center = balls[root].center;
      q.scale = balls[root].core_radius;
      std::vector<int> stack = {int(root)};
      cluster_of_ball[n][root] = cube_id;
      std::vector<int> absorbed;
      while (!stack.empty()) {
        int b = stack.back();
        stack.pop_back();
        absorbed.push_back(b);
        for (int nb_ball : adj[b]) {
          if (balls[nb_ball].level < int(n)) continue;
          if (cluster_of_ball[n][nb_ball] != -1) continue;
          cluster_of_ball[n][nb_ball] = cube_id;
          stack.push_back(nb_ball);
        }
      }
      std::vector<int> members;
      for (int b : absorbed)
        members.insert(members.end(), ball_points[b].begin(), ball_points[b].end());
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      q.members = std::move(members);
      tree.cubes.push_back(std::move(q));
    }
  }

  // tree edges between consecutive levels via root-ball cluster membership
  std::vector<int> ball_cube(nb, -1);  // cube whose root is this ball
  {
    std::size_t cursor = 0;
    for (std::size_t n = 0; n < level_nets.size(); ++n)
      for (std::size_t b = 0; b < nb; ++b)
        if (balls[b].level == int(n) && cluster_of_ball[n][b] >= 0 &&
            tree.cubes[cluster_of_ball[n][b]].center == balls[b].center &&
            tree.cubes[cluster_of_ball[n][b]].level == int(n))
          ball_cube[b] = cluster_of_ball[n][b];
    (void)cursor;
  }
  for (std::size_t b = 0; b < nb; ++b) {
    int lvl = balls[b].level;
    if (lvl == 0) continue;
    int child = ball_cube[b];
    int parent = cluster_of_ball[lvl - 1][b];
    if (child >= 0 && parent >= 0 && parent != child) {
      tree.cubes[parent].children.push_back(child);
      tree.cubes[child].parent = parent;
    }
  }
  for (auto& q : tree.cubes)
    if (q.parent == -1) tree.roots.push_back(q.id);
  return tree;
}

CubeTree build_christ_david_cubes(const PointCloud& cloud, const NetHierarchy& hierarchy) {
  if (!hierarchy.nested)
    throw std::invalid_argument("christ-david cubes: hierarchy must be nested");
  if (hierarchy.nets.empty())
    throw std::invalid_argument("christ-david cubes: empty hierarchy");
  const auto& nets = hierarchy.nets;
  std::size_t levels = nets.size();

  // first hierarchy level in which each point appears as a net member; a
  // point in a coarse net keeps its chain fixed at every coarser level, so
  // exact-distance ties are broken toward such points to stop chains from
  // drifting stepwise across symmetric configurations
  std::vector<int> appears(cloud.size(), std::numeric_limits<int>::max());
  for (std::size_t k = 0; k < levels; ++k)
    for (int m : nets[k].members)
      if (appears[m] == std::numeric_limits<int>::max()) appears[m] = int(k);

  auto nearest = [&](int p, const std::vector<int>& candidates) {
    int best = candidates[0];
    double best_d = cloud.dist(p, best);
    for (int m : candidates) {
      double d = cloud.dist(p, m);
      if (d < best_d ||
          (d == best_d && (appears[m] < appears[best] ||
                           (appears[m] == appears[best] && m < best)))) {
        best_d = d;
        best = m;
      }
    }
    return best;
  };

  // chain[k][p] = the level-k net point whose cube contains cloud point p
  std::vector<std::vector<int>> chain(levels, std::vector<int>(cloud.size(), -1));
  for (std::size_t p = 0; p < cloud.size(); ++p)
    chain[levels - 1][p] = nearest(int(p), nets[levels - 1].members);
  for (std::size_t k = levels - 1; k > 0; --k) {
    // assignment of level-k net points to level-(k-1) net points
    std::vector<int> up(cloud.size(), -1);
    for (int m : nets[k].members) up[m] = nearest(m, nets[k - 1].members);
    for (std::size_t p = 0; p < cloud.size(); ++p) chain[k - 1][p] = up[chain[k][p]];
  }

  CubeTree tree;
  tree.kind = CubeKind::christ_david;
  std::vector<std::vector<int>> id_at_level(levels);
  for (std::size_t k = 0; k < levels; ++k) {
    for (int x : nets[k].members) {
      Cube q;
      q.id = int(tree.cubes.size());
      q.level = nets[k].scale_index;
      q.center = x;
      q.scale = nets[k].separation;  // l(Q)
      for (std::size_t p = 0; p < cloud.size(); ++p)
        if (chain[k][p] == x) q.members.push_back(int(p));
      id_at_level[k].push_back(q.id);
      tree.cubes.push_back(std::move(q));
    }
  }
  // parenthood by chain at the coarser level
  for (std::size_t k = 1; k < levels; ++k) {
    for (int id : id_at_level[k]) {
      Cube& q = tree.cubes[id];
      if (q.members.empty()) continue;
      int up_center = chain[k - 1][q.members[0]];
      for (int pid : id_at_level[k - 1])
        if (tree.cubes[pid].center == up_center) {
          tree.cubes[pid].children.push_back(id);
          q.parent = pid;
          break;
        }
    }
  }
  for (int id : id_at_level[0]) tree.roots.push_back(id);
  return tree;
}

double ThinnedFamilies::K(int j) const { return std::ldexp(1.0, -j + a + 4); }

ThinnedFamilies thin_nets(const PointCloud& cloud, const NetHierarchy& base, double A,
                          double epsilon, double rho, double s) {
  if (!(A >= 1.0)) throw std::invalid_argument("thin_nets: A must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0) || !(rho > 0.0 && rho < 1.0))
    throw std::invalid_argument("thin_nets: epsilon, rho must lie in (0,1)");
  if (base.nets.empty() || base.nets[0].scale_index != 0)
    throw std::invalid_argument("thin_nets: base hierarchy must start at scale index 0");

  ThinnedFamilies fam;
  fam.A = A;
  fam.a = 1;
  while (!(A < std::ldexp(1.0, fam.a))) ++fam.a;
  // 2^{a-1} <= A < 2^a
  fam.c = A * std::ldexp(1.0, -4 - fam.a);

  double cutoff = std::min(rho, epsilon / (16.0 * s));
  fam.J = 1;
  while (!(std::ldexp(1.0, -fam.J) < cutoff)) ++fam.J;

  int m_max = int(base.nets.size()) - 1;
  fam.n_levels = m_max / fam.J + 1;

  // families X_m^i: repeated greedy maximal 2^{-m+a+4}-separated extraction
  std::vector<std::vector<std::vector<int>>> per_m;  // per_m[m][i]
  int n_families = 0;
  for (int m = 0; m <= m_max; ++m) {
    double sep = std::ldexp(1.0, -m + fam.a + 4);
    std::vector<int> residue = base.nets[m].members;
    std::vector<std::vector<int>> families;
    while (!residue.empty()) {
      std::vector<int> picked;
      std::vector<int> rest;
      for (int p : residue) {
        bool ok = true;
        for (int q : picked)
          if (cloud.dist(p, q) < sep) {
            ok = false;
            break;
          }
        if (ok)
          picked.push_back(p);
        else
          rest.push_back(p);
      }
      families.push_back(std::move(picked));
      residue = std::move(rest);
    }
    n_families = std::max(n_families, int(families.size()));
    per_m.push_back(std::move(families));
  }
  fam.N = n_families;

  // regroup: nets[i][j][n] = X^i_{nJ+j}
  fam.nets.assign(n_families, std::vector<std::vector<std::vector<int>>>(
                                  fam.J, std::vector<std::vector<int>>(fam.n_levels)));
  for (int m = 0; m <= m_max; ++m) {
    int n = m / fam.J, j = m % fam.J;
    for (std::size_t i = 0; i < per_m[m].size(); ++i) fam.nets[i][j][n] = per_m[m][i];
  }
  return fam;
}

CubeTree build_family_cubes(const PointCloud& cloud, const ThinnedFamilies& fam, int i,
                            int j) {
  if (i < 0 || i >= fam.N || j < 0 || j >= fam.J)
    throw std::invalid_argument("build_family_cubes: family index out of range");
  CubeTree tree =
      build_schul_cubes(cloud, fam.nets[i][j], fam.K(j), fam.M(), fam.c);
  for (auto& q : tree.cubes) {
    q.fam_i = i;
    q.fam_j = j;
  }
  return tree;
}

namespace {

// nested-or-disjoint on sorted member lists
enum class Overlap { disjoint, nested, partial };

Overlap member_overlap(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t ia = 0, ib = 0, common = 0;
  while (ia < a.size() && ib < b.size()) {
    if (a[ia] == b[ib]) {
      ++common;
      ++ia;
      ++ib;
    } else if (a[ia] < b[ib]) {
      ++ia;
    } else {
      ++ib;
    }
  }
  if (common == 0) return Overlap::disjoint;
  if (common == a.size() || common == b.size()) return Overlap::nested;
  return Overlap::partial;
}

}  // namespace

CubeAxiomReport verify_cube_axioms(const CubeTree& tree, const PointCloud& cloud) {
  CubeAxiomReport report;
  report.min_inner_ratio = std::numeric_limits<double>::infinity();
  const auto& cubes = tree.cubes;
  for (std::size_t a = 0; a < cubes.size(); ++a)
    for (std::size_t b = a + 1; b < cubes.size(); ++b) {
      if (member_overlap(cubes[a].members, cubes[b].members) == Overlap::partial)
        report.violations.push_back("cubes " + std::to_string(cubes[a].id) + " and " +
                                    std::to_string(cubes[b].id) +
                                    " overlap without nesting");
    }

  if (tree.kind == CubeKind::schul) {
    double outer = 1.0 + 8.0 / tree.M;
    for (const auto& q : cubes) {
      for (std::size_t p = 0; p < cloud.size(); ++p) {
        bool in_core = cloud.dist(q.center, int(p)) <= q.scale;
        bool in_members = std::binary_search(q.members.begin(), q.members.end(), int(p));
        if (in_core && !in_members)
          report.violations.push_back("cube " + std::to_string(q.id) +
                                      " misses core-ball point " + std::to_string(p));
      }
      for (int m : q.members) {
        double ratio = cloud.dist(q.center, m) / q.scale;
        report.max_outer_ratio = std::max(report.max_outer_ratio, ratio);
        if (ratio > outer + 1e-12)
          report.violations.push_back("cube " + std::to_string(q.id) + " member " +
                                      std::to_string(m) + " outside (1+8/M)B_Q");
      }
    }
  } else {
    // partition per level
    std::vector<std::vector<int>> by_level;
    for (const auto& q : cubes) {
      if (by_level.size() <= std::size_t(q.level - cubes[0].level))
        by_level.resize(q.level - cubes[0].level + 1);
      by_level[q.level - cubes[0].level].push_back(q.id);
    }
    for (std::size_t lvl = 0; lvl < by_level.size(); ++lvl) {
      std::vector<int> all;
      for (int id : by_level[lvl])
        all.insert(all.end(), cubes[id].members.begin(), cubes[id].members.end());
      std::sort(all.begin(), all.end());
      bool dup = std::adjacent_find(all.begin(), all.end()) != all.end();
      if (dup || all.size() != cloud.size())
        report.violations.push_back("level " + std::to_string(lvl) +
                                    " does not partition the cloud");
    }
    for (const auto& q : cubes) {
      if (q.members.empty()) continue;
      double inner = std::numeric_limits<double>::infinity();
      for (std::size_t p = 0; p < cloud.size(); ++p) {
        bool in_members = std::binary_search(q.members.begin(), q.members.end(), int(p));
        if (!in_members) inner = std::min(inner, cloud.dist(q.center, int(p)));
      }
      if (std::isfinite(inner))
        report.min_inner_ratio = std::min(report.min_inner_ratio, inner / q.scale);
      for (int m : q.members)
        report.max_outer_ratio =
            std::max(report.max_outer_ratio, cloud.dist(q.center, m) / q.scale);
    }
  }
  if (!std::isfinite(report.min_inner_ratio)) report.min_inner_ratio = 0.0;
  return report;
}

}  // namespace gmtk
