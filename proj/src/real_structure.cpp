#include "rms/real_structure.hpp"

#include <algorithm>

namespace rms {

std::optional<TreeInvolution> sigma_invariance(const Tree& t,
                                               const LabelInvolution& sigma) {
  auto iso = find_isomorphism(t, t, sigma.as_map());
  if (!iso) return std::nullopt;
  TreeInvolution r;
  r.flag_map = iso->flag_map;
  r.vertex_map = iso->vertex_map;
  r.vertex_is_real.assign(t.num_vertices, 0);
  r.real_flags.assign(t.num_vertices, {});
  for (int v = 0; v < t.num_vertices; ++v)
    if (r.vertex_map[v] == v) {
      r.vertex_is_real[v] = 1;
      r.real_vertices.push_back(v);
    }
  for (int f = 1; f <= t.num_flags; ++f)
    if (r.flag_map[f] == f) r.real_flags[t.boundary[f]].push_back(f);
  for (auto e : edges(t)) {
    if (r.flag_map[e.first] == e.first)
      r.invariant_edges.push_back(e);
    else if (r.flag_map[e.first] == e.second)
      r.special_edge = e;
  }
  return r;
}

Tree conjugate_tree(const Tree& t, const LabelInvolution& sigma) {
  Tree s = t;
  auto m = sigma.as_map();
  for (int f = 1; f <= t.n; ++f) s.boundary[m[f]] = t.boundary[f];
  return canonicalize(s).first;
}

std::vector<std::pair<Tree, TreeInvolution>> enumerate_invariant_trees(
    const LabelInvolution& sigma) {
  std::vector<std::pair<Tree, TreeInvolution>> out;
  for (const Tree& t : enumerate_stable_trees(sigma.n())) {
    auto inv = sigma_invariance(t, sigma);
    if (inv) out.emplace_back(t, std::move(*inv));
  }
  return out;
}

}  // namespace rms
