#include "gmtk/io.hpp"

#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace gmtk {

using nlohmann::json;

std::string point_cloud_to_json(const PointCloud& cloud) {
  json j;
  j["label"] = cloud.label;
  j["s"] = cloud.s;
  if (cloud.has_coords())
    j["points"] = cloud.coords;
  else
    j["matrix"] = cloud.dist_matrix;
  j["weights"] = cloud.weights;
  if (!cloud.atom_diameters.empty()) j["atoms"] = cloud.atom_diameters;
  if (!cloud.kappa_profile.empty()) {
    json prof = json::array();
    for (auto [delta_max, kappa] : cloud.kappa_profile) {
      json row;
      row["delta_max"] = std::isinf(delta_max) ? json() : json(delta_max);
      row["kappa"] = kappa;
      prof.push_back(row);
    }
    j["kappa_profile"] = prof;
  }
  return j.dump(2);
}

PointCloud point_cloud_from_json(const std::string& text) {
  json j = json::parse(text);
  double s = j.at("s").get<double>();
  std::string label = j.value("label", std::string{});
  std::vector<double> weights = j.at("weights").get<std::vector<double>>();
  PointCloud cloud;
  if (j.contains("points"))
    cloud = build_point_cloud(j["points"].get<std::vector<std::vector<double>>>(),
                              std::move(weights), s, std::move(label));
  else if (j.contains("matrix"))
    cloud = build_point_cloud_from_matrix(
        j["matrix"].get<std::vector<std::vector<double>>>(), std::move(weights), s,
        std::move(label));
  else
    throw std::invalid_argument("point cloud JSON needs 'points' or 'matrix'");
  if (j.contains("atoms")) {
    cloud.atom_diameters = j["atoms"].get<std::vector<double>>();
    if (cloud.atom_diameters.size() != cloud.size())
      throw std::invalid_argument("point cloud JSON: atoms length mismatch");
  }
  if (j.contains("kappa_profile")) {
    for (const auto& row : j["kappa_profile"]) {
      double dm = row.at("delta_max").is_null()
                      ? std::numeric_limits<double>::infinity()
                      : row.at("delta_max").get<double>();
      cloud.kappa_profile.emplace_back(dm, row.at("kappa").get<double>());
    }
  }
  return cloud;
}

namespace {

std::string method_name(ContentMethod m) {
  switch (m) {
    case ContentMethod::greedy: return "greedy";
    case ContentMethod::oracle_exact: return "oracle_exact";
    case ContentMethod::interval_exact: return "interval_exact";
    case ContentMethod::mass_lower_bound: return "mass_lower_bound";
  }
  return "greedy";
}

ContentMethod method_from_name(const std::string& name) {
  if (name == "greedy") return ContentMethod::greedy;
  if (name == "oracle_exact") return ContentMethod::oracle_exact;
  if (name == "interval_exact") return ContentMethod::interval_exact;
  if (name == "mass_lower_bound") return ContentMethod::mass_lower_bound;
  throw std::invalid_argument("unknown content method: " + name);
}

}  // namespace

std::string content_estimate_to_json(const ContentEstimate& est) {
  json j;
  j["value"] = est.value;
  j["s"] = est.s;
  j["delta"] = std::isinf(est.delta) ? json() : json(est.delta);
  j["method"] = method_name(est.method);
  j["lower"] = est.lower_bound;
  j["upper"] = est.upper_bound;
  return j.dump(2);
}

ContentEstimate content_estimate_from_json(const std::string& text) {
  json j = json::parse(text);
  ContentEstimate est;
  est.value = j.at("value").get<double>();
  est.s = j.at("s").get<double>();
  est.delta = j.at("delta").is_null() ? std::numeric_limits<double>::infinity()
                                      : j.at("delta").get<double>();
  est.method = method_from_name(j.at("method").get<std::string>());
  est.lower_bound = j.at("lower").get<double>();
  est.upper_bound = j.at("upper").get<double>();
  return est;
}

std::string cube_tree_to_json(const CubeTree& tree) {
  json j;
  j["kind"] = tree.kind == CubeKind::schul ? "schul" : "christ_david";
  j["params"] = {{"K", tree.K}, {"M", tree.M}, {"c", tree.c}};
  json cubes = json::array();
  for (const Cube& q : tree.cubes) {
    json c;
    c["id"] = q.id;
    c["level"] = q.level;
    c["center"] = q.center;
    c["scale"] = q.scale;
    c["members"] = q.members;
    c["children"] = q.children;
    c["parent"] = q.parent;
    cubes.push_back(c);
  }
  j["cubes"] = cubes;
  j["roots"] = tree.roots;
  return j.dump(2);
}

CubeTree cube_tree_from_json(const std::string& text) {
  json j = json::parse(text);
  CubeTree tree;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "schul")
    tree.kind = CubeKind::schul;
  else if (kind == "christ_david")
    tree.kind = CubeKind::christ_david;
  else
    throw std::invalid_argument("unknown cube kind: " + kind);
  tree.K = j.at("params").at("K").get<double>();
  tree.M = j.at("params").at("M").get<double>();
  tree.c = j.at("params").at("c").get<double>();
  for (const auto& c : j.at("cubes")) {
    Cube q;
    q.id = c.at("id").get<int>();
    q.level = c.at("level").get<int>();
    q.center = c.at("center").get<int>();
    q.scale = c.at("scale").get<double>();
    q.members = c.at("members").get<std::vector<int>>();
    q.children = c.at("children").get<std::vector<int>>();
    q.parent = c.value("parent", -1);
    tree.cubes.push_back(std::move(q));
  }
  tree.roots = j.at("roots").get<std::vector<int>>();
  return tree;
}

std::vector<double> SimpleFunction::values(std::size_t n_points) const {
  std::vector<double> out(n_points, 0.0);
  for (std::size_t k = 0; k < levels.size(); ++k)
    for (int i : carriers[k]) out.at(std::size_t(i)) = levels[k];
  return out;
}

std::string simple_function_to_json(const SimpleFunction& f) {
  json j;
  j["levels"] = f.levels;
  j["carriers"] = f.carriers;
  return j.dump(2);
}

SimpleFunction simple_function_from_json(const std::string& text) {
  json j = json::parse(text);
  SimpleFunction f;
  f.levels = j.at("levels").get<std::vector<double>>();
  f.carriers = j.at("carriers").get<std::vector<std::vector<int>>>();
  if (f.levels.size() != f.carriers.size())
    throw std::invalid_argument("simple function: levels/carriers length mismatch");
  return f;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void write_pair_grid_csv(std::ostream& os, const PairGrid& grid,
                         const PointCloud&) {
  os << "point,radius,flag,witness_y,witness_t\n";
  os.precision(17);
  for (std::size_t ix = 0; ix < grid.xs.size(); ++ix)
    for (std::size_t ir = 0; ir < grid.radii.size(); ++ir) {
      const auto& w = grid.witnesses[ix][ir];
      os << grid.xs[ix] << ',' << grid.radii[ir] << ',' << int(grid.flags[ix][ir]) << ','
         << w.y << ',' << w.t << '\n';
    }
}

void write_plot_data(std::ostream& os, std::span<const double> xs,
                     std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("plot data: length mismatch");
  os.precision(17);
  for (std::size_t i = 0; i < xs.size(); ++i) os << xs[i] << ' ' << ys[i] << '\n';
}

}  // namespace gmtk
