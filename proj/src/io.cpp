#include "rms/io.hpp"

#include <map>
#include <sstream>

namespace rms {

nlohmann::json tree_to_json(const Tree& t) {
  nlohmann::json jj;
  jj["n"] = t.n;
  jj["flags"] = t.num_flags;
  std::vector<int> b(t.boundary.begin() + 1, t.boundary.end());
  std::vector<int> inv(t.j.begin() + 1, t.j.end());
  jj["boundary"] = b;
  jj["j"] = inv;
  return jj;
}

Tree tree_from_json(const nlohmann::json& jj) {
  Tree t;
  t.n = jj.at("n").get<int>();
  t.num_flags = jj.at("flags").get<int>();
  auto b = jj.at("boundary").get<std::vector<int>>();
  auto inv = jj.at("j").get<std::vector<int>>();
  t.boundary.assign(1, -1);
  t.boundary.insert(t.boundary.end(), b.begin(), b.end());
  t.j.assign(1, 0);
  t.j.insert(t.j.end(), inv.begin(), inv.end());
  t.num_vertices = 0;
  for (int v : b) t.num_vertices = std::max(t.num_vertices, v + 1);
  validate(t);
  return t;
}

std::string tree_to_dot(const Tree& t) {
  std::ostringstream os;
  os << "graph tree {\n";
  for (int v = 0; v < t.num_vertices; ++v) {
    os << "  v" << v << " [shape=point];\n";
  }
  for (int f = 1; f <= t.n; ++f) {
    os << "  t" << f << " [shape=plaintext,label=\"" << f << "\"];\n";
    os << "  v" << t.boundary[f] << " -- t" << f << ";\n";
  }
  for (auto [f, g] : edges(t)) {
    os << "  v" << t.boundary[f] << " -- v" << t.boundary[g] << " [label=\""
       << f << "," << g << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

nlohmann::json oplanar_to_json(const Tree& t, const TreeInvolution& iota,
                               const OPlanar& o) {
  nlohmann::json jj;
  auto vd = nlohmann::json::object();
  for (size_t i = 0; i < iota.real_vertices.size(); ++i) {
    const VertexPlanar& d = o.vertex_data[i];
    std::string key = std::to_string(iota.real_vertices[i]);
    if (d.empty_real)
      vd[key] = "empty";
    else
      vd[key] = {{"plus", d.plus}, {"order", d.order}};
  }
  jj["vertex_data"] = vd;
  if (o.plus_flag >= 0)
    jj["edge_signs"] = {{std::to_string(o.plus_flag), "+"},
                        {std::to_string(t.j[o.plus_flag]), "-"}};
  return jj;
}

nlohmann::json poset_to_json(const StratifiedComplex& c) {
  nlohmann::json jj;
  auto strata = nlohmann::json::array();
  for (size_t i = 0; i < c.strata.size(); ++i) {
    const Stratum& s = c.strata[i];
    strata.push_back({{"id", i},
                      {"dim", s.dim},
                      {"label", tree_label(s.tree)},
                      {"tree", tree_to_json(s.tree)},
                      {"u", oplanar_to_json(s.tree, s.iota, s.u)}});
  }
  jj["strata"] = strata;
  auto adj = nlohmann::json::array();
  for (auto [lo, hi] : c.adjacency) adj.push_back({lo, hi});
  jj["adjacency"] = adj;
  return jj;
}

std::string poset_to_dot(const StratifiedComplex& c) {
  std::ostringstream os;
  os << "digraph poset {\n  rankdir=BT;\n  node [shape=box];\n";
  std::map<int, std::vector<size_t>> by_dim;
  for (size_t i = 0; i < c.strata.size(); ++i) {
    const Stratum& s = c.strata[i];
    os << "  s" << i << " [label=\"" << i << ": " << tree_label(s.tree)
       << " dim " << s.dim << "\"];\n";
    by_dim[s.dim].push_back(i);
  }
  for (const auto& [d, ids] : by_dim) {
    os << "  { rank=same;";
    for (size_t i : ids) os << " s" << i << ";";
    os << " }\n";
  }
  for (auto [lo, hi] : c.adjacency)
    os << "  s" << lo << " -> s" << hi << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace rms
