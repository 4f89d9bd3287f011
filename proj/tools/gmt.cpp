#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gmtk/carleson.hpp"
#include "gmtk/choquet.hpp"
#include "gmtk/content.hpp"
#include "gmtk/cubes.hpp"
#include "gmtk/fractals.hpp"
#include "gmtk/io.hpp"
#include "gmtk/martingale.hpp"
#include "gmtk/net.hpp"

namespace {

constexpr const char* kVersion = "gmt 0.1.0";

using nlohmann::json;
using namespace gmtk;

void emit(const std::string& out_path, const json& report) {
  std::string text = report.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

json base_report(const std::string& subcommand, const json& params) {
  json j;
  j["version"] = kVersion;
  j["subcommand"] = subcommand;
  j["params"] = params;
  return j;
}

GeneratedSet generated_from_spec(const FractalSpec& spec) { return generate_fractal(spec); }

PointCloud load_cloud(const std::string& path) {
  return point_cloud_from_json(read_text_file(path));
}

// Generated sets reload from their serialized label so exact interval forms
// survive a round trip through the cloud JSON.
GeneratedSet load_generated(const std::string& path) {
  PointCloud cloud = load_cloud(path);
  std::istringstream label(cloud.label);
  std::string kind;
  if (std::getline(label, kind, ':')) {
    try {
      FractalSpec spec;
      spec.kind = parse_fractal_kind(kind);
      std::string field;
      while (std::getline(label, field, ':')) {
        auto eq = field.find('=');
        if (eq == std::string::npos) continue;
        std::string key = field.substr(0, eq);
        double v = std::stod(field.substr(eq + 1));
        if (key == "depth") spec.depth = int(v);
        if (key == "lambda") spec.lambda = v;
        if (key == "h") spec.h = v;
        if (key == "npoints") spec.npoints = int(v);
      }
      GeneratedSet set = generated_from_spec(spec);
      if (set.cloud.size() == cloud.size()) return set;
    } catch (const std::exception&) {
    }
  }
  return GeneratedSet{std::move(cloud), std::nullopt};
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("GMT_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometric measure toolkit: nets, cubes, contents, packing statistics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // shared parameter storage
  std::string in_path, out_path, plot_path, kind = "grid", backend = "mass";
  double eps = 0.5, rho = 0.25, A = 1.0, s = 1.0, lambda = 1.0 / 3.0, h = 1.0 / 32.0;
  double r_min = 1.0 / 1024.0, r_max = 0.5, x_center = 0.5, gamma = 0.5, delta = -1.0;
  double K = 16.0, M = 8.0, c = 1.0 / 32.0, cap = 0.25;
  int depth = 4, npoints = 1024, n_min = 0, n_max = 6, threads = 0, trials = 100;
  std::uint64_t seed = 0;
  std::vector<int> n_list{4, 6, 8, 10};
  bool nested = true;
  std::string cube_kind = "christ_david";

  auto* gen = app.add_subcommand("gen", "generate a test set as point-cloud JSON");
  gen->add_option("--kind", kind, "en|cantor|four-corner|segments|grid");
  gen->add_option("--n,--depth", depth, "generation depth");
  gen->add_option("--lambda", lambda, "cantor contraction ratio");
  gen->add_option("--sep", h, "segment separation");
  gen->add_option("--npoints", npoints, "grid cell count");
  gen->add_option("--out", out_path, "output path");

  auto* net = app.add_subcommand("net", "multiscale separated nets");
  net->add_option("--in", in_path)->required();
  net->add_option("--n-min", n_min);
  net->add_option("--n-max", n_max);
  net->add_flag("--nested,!--no-nested", nested);
  net->add_option("--seed", seed);
  net->add_option("--out", out_path);

  auto* cubes = app.add_subcommand("cubes", "multiscale cube decomposition");
  cubes->add_option("--in", in_path)->required();
  cubes->add_option("--kind", cube_kind, "schul|christ_david");
  cubes->add_option("--K", K);
  cubes->add_option("--M", M);
  cubes->add_option("--c", c);
  cubes->add_option("--levels", n_max, "number of scale levels");
  cubes->add_option("--seed", seed);
  cubes->add_option("--out", out_path);

  auto* classify = app.add_subcommand("classify", "label cubes G / B1 / B2");
  classify->add_option("--in", in_path)->required();
  classify->add_option("--eps", eps);
  classify->add_option("--rho", rho);
  classify->add_option("--A", A);
  classify->add_option("--levels", n_max);
  classify->add_option("--out", out_path);

  auto* carleson = app.add_subcommand("carleson", "bad-pair grid and Carleson norm");
  carleson->add_option("--in", in_path)->required();
  carleson->add_option("--eps", eps);
  carleson->add_option("--r-min", r_min);
  carleson->add_option("--r-max", r_max);
  carleson->add_option("--threads", threads);
  carleson->add_option("--out", out_path);
  carleson->add_option("--csv", plot_path, "pair table CSV path");

  auto* thm = app.add_subcommand("thm-main", "packing sum of high-density balls");
  thm->add_option("--in", in_path)->required();
  thm->add_option("--eps", eps);
  thm->add_option("--rho", rho);
  thm->add_option("--A", A);
  thm->add_option("--levels", n_max);
  thm->add_option("--out", out_path);

  auto* counter = app.add_subcommand("counterexample", "log-growth scan of the flagged band");
  counter->add_option("--n", n_list, "depths to scan");
  counter->add_option("--eps", eps);
  counter->add_option("--R", r_max);
  counter->add_option("--x", x_center);
  counter->add_option("--out", out_path);
  counter->add_option("--plot", plot_path, "two-column n / integral data");

  auto* weights = app.add_subcommand("weights", "martingale weight sequences as CSV");
  weights->add_option("--in", in_path)->required();
  weights->add_option("--eps", eps);
  weights->add_option("--rho", rho);
  weights->add_option("--A", A);
  weights->add_option("--levels", n_max);
  weights->add_option("--out", out_path);

  auto* choquet = app.add_subcommand("choquet-check", "layer-cake integral checks");
  choquet->add_option("--in", in_path)->required();
  choquet->add_option("--backend", backend, "mass|greedy|oracle");
  choquet->add_option("--gamma", gamma);
  choquet->add_option("--delta", delta, "cover cap (<=0 means uncapped)");
  choquet->add_option("--trials", trials);
  choquet->add_option("--seed", seed);
  choquet->add_option("--out", out_path);

  auto* reg = app.add_subcommand("regularity", "Ahlfors regularity witness scan");
  reg->add_option("--in", in_path)->required();
  reg->add_option("--s", s);
  reg->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n";
    return 1;
  }

  auto fail = [](const std::string& msg) {
    std::cerr << msg << "\n";
    return 1;
  };
  if ((classify->parsed() || carleson->parsed() || thm->parsed() || counter->parsed() ||
       weights->parsed()) &&
      !(eps > 0.0 && eps < 1.0))
    return fail("--eps must be in (0,1)");
  if ((classify->parsed() || thm->parsed() || weights->parsed()) &&
      !(rho > 0.0 && rho < 1.0))
    return fail("--rho must be in (0,1)");
  if ((classify->parsed() || thm->parsed() || weights->parsed()) && !(A >= 1.0))
    return fail("--A must be >= 1");
  if (gen->parsed() && depth < 1) return fail("--depth must be >= 1");
  if (choquet->parsed() && !(gamma > 0.0 && gamma < 1.0))
    return fail("--gamma must be in (0,1)");

  try {
    if (gen->parsed()) {
      FractalSpec spec;
      spec.kind = parse_fractal_kind(kind);
      spec.depth = depth;
      spec.lambda = lambda;
      spec.h = h;
      spec.npoints = npoints;
      GeneratedSet set = generated_from_spec(spec);
      if (out_path.empty())
        std::cout << point_cloud_to_json(set.cloud) << "\n";
      else
        write_text_file(out_path, point_cloud_to_json(set.cloud) + "\n");
      return 0;
    }

    if (net->parsed()) {
      PointCloud cloud = load_cloud(in_path);
      NetHierarchy hier = build_net_hierarchy(cloud, n_min, n_max, nested, seed);
      json params{{"in", in_path}, {"n_min", n_min},   {"n_max", n_max},
                  {"nested", nested}, {"seed", seed}};
      json report = base_report("net", params);
      json nets = json::array();
      for (const Net& ntt : hier.nets) {
        if (!net_invariants_hold(cloud, ntt))
          throw std::logic_error("net invariant violated at scale " +
                                 std::to_string(ntt.scale_index));
        nets.push_back({{"scale_index", ntt.scale_index},
                        {"separation", ntt.separation},
                        {"members", ntt.members}});
      }
      report["nets"] = nets;
      emit(out_path, report);
      return 0;
    }

    if (cubes->parsed()) {
      PointCloud cloud = load_cloud(in_path);
      CubeTree tree;
      if (cube_kind == "schul") {
        std::vector<std::vector<int>> level_nets;
        for (int n = 0; n < n_max; ++n)
          level_nets.push_back(
              greedy_maximal_net(cloud, K * std::pow(M, -n), seed).members);
        tree = build_schul_cubes(cloud, level_nets, K, M, c);
      } else if (cube_kind == "christ_david") {
        tree = build_christ_david_cubes(cloud,
                                        build_net_hierarchy(cloud, 0, n_max, true, seed));
      } else {
        return fail("--kind must be schul or christ_david");
      }
      CubeAxiomReport rep = verify_cube_axioms(tree, cloud);
      if (!rep.ok()) throw std::logic_error("cube axiom violated: " + rep.violations[0]);
      emit(out_path, json::parse(cube_tree_to_json(tree)));
      return 0;
    }

    if (classify->parsed()) {
      GeneratedSet set = load_generated(in_path);
      CubeTree tree = build_christ_david_cubes(
          set.cloud, build_net_hierarchy(set.cloud, 0, n_max, true));
      CubeClassification cls = classify_cubes(tree, set, A, eps, rho);
      json params{{"in", in_path}, {"A", A}, {"eps", eps}, {"rho", rho}, {"levels", n_max}};
      json report = base_report("classify", params);
      json labels = json::array();
      for (std::size_t i = 0; i < cls.labels.size(); ++i) {
        const char* name = cls.labels[i] == CubeLabel::G      ? "G"
                           : cls.labels[i] == CubeLabel::B1   ? "B1"
                           : cls.labels[i] == CubeLabel::B2   ? "B2"
                                                              : "B1B2";
        labels.push_back({{"cube", int(i)}, {"label", name}});
      }
      report["labels"] = labels;
      report["counts"] = {{"G", cls.count(CubeLabel::G)},
                          {"B1", cls.count(CubeLabel::B1)},
                          {"B2", cls.count(CubeLabel::B2)},
                          {"B1B2", cls.count(CubeLabel::B1_and_B2)}};
      emit(out_path, report);
      return 0;
    }

    if (carleson->parsed()) {
      GeneratedSet set = load_generated(in_path);
      PairGrid grid = wld_bad_pairs(set, eps, make_pair_grid(set.cloud, r_min, r_max), 4,
                                    resolve_threads(threads));
      json params{{"in", in_path}, {"eps", eps},           {"r_min", r_min},
                  {"r_max", r_max}, {"threads", resolve_threads(threads)}};
      json report = base_report("carleson", params);
      report["flagged"] = grid.flagged_count();
      report["pairs"] = grid.xs.size() * grid.radii.size();
      report["norm"] = carleson_norm(grid, set.cloud, set.cloud.s, r_min, r_max);
      if (!plot_path.empty()) {
        std::ofstream csv(plot_path);
        write_pair_grid_csv(csv, grid, set.cloud);
      }
      emit(out_path, report);
      return 0;
    }

    if (thm->parsed()) {
      GeneratedSet set = load_generated(in_path);
      NetHierarchy hier = build_net_hierarchy(set.cloud, 0, n_max, true);
      TheoremMainReport rep =
          theorem_main_sum(set.cloud, set.cloud.s, A, eps, rho, hier);
      ThinnedFamilies fam = thin_nets(set.cloud, hier, A, eps, rho, set.cloud.s);
      json params{{"in", in_path}, {"eps", eps}, {"rho", rho}, {"A", A},
                  {"levels", n_max}};
      json report = base_report("thm-main", params);
      report["lhs"] = rep.sum;
      report["mass"] = rep.total_mass;
      report["ratio"] = rep.ratio;
      report["N"] = fam.N;
      report["J"] = fam.J;
      emit(out_path, report);
      return 0;
    }

    if (counter->parsed()) {
      for (int n : n_list)
        if (n < 1) return fail("--n entries must be >= 1");
      bool warn = false;
      auto rows = counterexample_scan(n_list, eps, r_max, x_center, &warn);
      if (warn)
        std::cerr << "warning: --eps >= 1/3, full-band flagging is not guaranteed\n";
      json params{{"n", n_list}, {"eps", eps}, {"R", r_max}, {"x", x_center}};
      json report = base_report("counterexample", params);
      json table = json::array();
      std::vector<double> xs, ys;
      for (const auto& r : rows) {
        table.push_back({{"n", r.n},
                         {"exact", r.exact_integral},
                         {"sampled", r.sampled_integral},
                         {"flagged", r.flagged},
                         {"pairs", r.pairs},
                         {"fully_flagged", r.fully_flagged}});
        xs.push_back(double(r.n));
        ys.push_back(r.sampled_integral);
      }
      report["table"] = table;
      if (!plot_path.empty()) {
        std::ofstream plot(plot_path);
        write_plot_data(plot, xs, ys);
      }
      emit(out_path, report);
      return 0;
    }

    if (weights->parsed()) {
      GeneratedSet set = load_generated(in_path);
      NetHierarchy hier = build_net_hierarchy(set.cloud, 0, n_max, true);
      ThinnedFamilies fam = thin_nets(set.cloud, hier, A, eps, rho, set.cloud.s);
      double alpha = 1.0 + eps / 4.0;
      std::ostringstream csv;
      bool any = false;
      for (int i = 0; i < fam.N && !any; ++i)
        for (int j = 0; j < fam.J; ++j) {
          CubeTree tree = build_family_cubes(set.cloud, fam, i, j);
          auto sel = select_high_content_cubes(tree, set.cloud, set.cloud.s, eps, rho);
          if (sel.empty()) continue;
          StopForest forest = build_stop_forest(tree, set.cloud, set.cloud.s, sel);
          for (int t : forest.tops) {
            WeightSequence seq = build_weight_sequence(tree, set.cloud, forest, t, alpha);
            write_weights_csv(csv, seq, set.cloud);
          }
          any = true;
          break;
        }
      if (!any) csv << "cube_id,stage,cell,cell_mass,value\n";
      if (out_path.empty())
        std::cout << csv.str();
      else
        write_text_file(out_path, csv.str());
      return 0;
    }

    if (choquet->parsed()) {
      PointCloud cloud = load_cloud(in_path);
      double cap_delta = delta > 0.0 ? delta : std::numeric_limits<double>::infinity();
      MonotoneSetFunction mu = backend == "mass"   ? mass_set_function(cloud)
                               : backend == "greedy" ? greedy_content_set_function(
                                                           cloud, cloud.s, cap_delta)
                               : backend == "oracle"
                                   ? oracle_content_set_function(cloud, cloud.s, cap_delta)
                                   : MonotoneSetFunction{};
      if (!mu.eval) return fail("--backend must be mass, greedy or oracle");
      std::mt19937_64 rng(seed ? seed : 0x63686f71u);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      json params{{"in", in_path},   {"backend", backend}, {"gamma", gamma},
                  {"trials", trials}, {"seed", seed}};
      json report = base_report("choquet-check", params);
      int failures = 0;
      for (int trial = 0; trial < trials; ++trial) {
        std::vector<double> f(cloud.size()), g(cloud.size());
        for (auto& v : f) v = u(rng);
        for (auto& v : g) v = u(rng);
        auto chk = check_quasi_subadditivity(mu, f, g, gamma, cloud.size());
        if (!chk.holds) ++failures;
      }
      report["trials"] = trials;
      report["failures"] = failures;
      if (failures) throw std::logic_error("quasi-subadditivity violated");
      emit(out_path, report);
      return 0;
    }

    if (reg->parsed()) {
      PointCloud cloud = load_cloud(in_path);
      std::vector<double> radii;
      for (double r = cloud.diameter(); r > 4.0 * cloud.min_atom() && r > 0.0; r *= 0.5)
        radii.push_back(r);
      if (radii.empty()) radii.push_back(1.0);
      RegularityReport rep = check_ahlfors_regularity(cloud, s, radii);
      json params{{"in", in_path}, {"s", s}};
      json report = base_report("regularity", params);
      report["c0_witness"] = rep.c0_witness;
      report["worst_radius"] = rep.worst_radius;
      report["worst_center"] = rep.worst_center;
      emit(out_path, report);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
