#include "rms/double_cover.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "rms/planar.hpp"
#include "rms/sw_class.hpp"

namespace rms {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

int frak_at_anchor(const LabelInvolution& sigma, const Tree& gamma) {
  const int va = gamma.boundary[gamma.n];
  int count = 0;
  for (int t : frak_tails(sigma)) {
    if (gamma.boundary[t] == va) ++count;
  }
  return count;
}

template <typename Pair>
bool same_edge(const Pair& a, const Pair& b) {
  return a == b || (a.first == b.second && a.second == b.first);
}

// Renumber union-find roots over 0..count-1 in first-seen order.
int compact_components(UnionFind& uf, std::vector<int>& component) {
  std::map<int, int> ids;
  for (size_t i = 0; i < component.size(); ++i) {
    const int root = uf.find(static_cast<int>(i));
    auto [it, fresh] = ids.emplace(root, static_cast<int>(ids.size()));
    component[i] = it->second;
    (void)fresh;
  }
  return static_cast<int>(ids.size());
}

}  // namespace

char relation_name(GlueRelation r) {
  return static_cast<char>('A' + static_cast<int>(r));
}

int glue_vertex(const LabelInvolution& sigma, const Tree& gamma,
                const TreeInvolution& iota) {
  const bool cycle = in_w1(sigma, gamma, iota);  // checks the wall shape
  const int va = gamma.boundary[gamma.n];
  const int light = frak_at_anchor(sigma, gamma) <= 1 ? va : 1 - va;
  return cycle ? 1 - light : light;
}

std::optional<GlueRelation> glue_predicate(const LabelInvolution& sigma,
                                           const Tree& gamma,
                                           const TreeInvolution& iota,
                                           const OPlanar& o1,
                                           const OPlanar& o2) {
  if (gamma.num_vertices != 2 || iota.real_vertices.size() != 2) {
    throw std::invalid_argument(
        "gluing relations live on two-vertex trees with both vertices real");
  }
  if (o1 == o2) return std::nullopt;
  int v = -1;
  for (int cand : iota.real_vertices) {
    if (reverse_at(gamma, iota, o1, cand) == o2) {
      v = cand;
      break;
    }
  }
  if (v < 0) return std::nullopt;  // differs at both vertices
  if (v != glue_vertex(sigma, gamma, iota)) return std::nullopt;
  const bool cycle = in_w1(sigma, gamma, iota);
  const int va = gamma.boundary[gamma.n];
  if (frak_at_anchor(sigma, gamma) >= 2) {
    return cycle ? GlueRelation::B : GlueRelation::A;
  }
  if (iota.real_flags[va].size() != 3) {
    return cycle ? GlueRelation::D : GlueRelation::C;
  }
  return cycle ? GlueRelation::F : GlueRelation::E;
}

CoverComplex build_cover(const LabelInvolution& sigma) {
  CoverComplex cv;
  cv.sigma = sigma;
  bool corolla_found = false;
  for (const auto& [t, io] : enumerate_invariant_trees(sigma)) {
    if (t.num_vertices == 1) {
      cv.corolla = t;
      cv.corolla_iota = io;
      corolla_found = true;
    } else if (t.num_vertices == 2) {
      cv.walls.emplace_back(t, io);
    }
  }
  if (!corolla_found) {
    throw std::invalid_argument("cover needs at least three tails");
  }
  cv.top_cells = enumerate_oplanar(cv.corolla, cv.corolla_iota);
  for (const auto& [t, io] : cv.walls) {
    cv.wall_in_w1.push_back(sigma.l > 0 && in_w1(sigma, t, io) ? 1 : 0);
  }

  if (sigma.l == 0) {
    // Orientable base: the cover is two disjoint copies.  Components of the
    // base follow from the poset's wall adjacency; each contributes one
    // component per sheet, split by which lift is the orbit minimum.
    const StratifiedComplex poset = build_poset(sigma);
    UnionFind uf(poset.strata.size());
    const int top_dim = sigma.n() - 3;
    for (const auto& [lo, hi] : poset.adjacency) {
      if (poset.strata[hi].dim == top_dim &&
          poset.strata[lo].dim == top_dim - 1) {
        uf.unite(lo, hi);
      }
    }
    std::map<int, int> base_ids;
    cv.cell_component.resize(cv.top_cells.size());
    for (size_t i = 0; i < cv.top_cells.size(); ++i) {
      const OPlanar u = to_uplanar(cv.corolla, cv.corolla_iota, cv.top_cells[i]);
      const int root = uf.find(poset.id_of(cv.corolla, u));
      auto [it, fresh] = base_ids.emplace(root, static_cast<int>(base_ids.size()));
      (void)fresh;
      const int sheet = cv.top_cells[i] == u ? 0 : 1;
      cv.cell_component[i] = 2 * it->second + sheet;
    }
    cv.num_components = 2 * static_cast<int>(base_ids.size());
    return cv;
  }

  std::map<OPlanar, int> cell_index;
  for (size_t i = 0; i < cv.top_cells.size(); ++i) {
    cell_index.emplace(cv.top_cells[i], static_cast<int>(i));
  }
  std::map<std::pair<int, OPlanar>, int> face_index;
  for (int w = 0; w < static_cast<int>(cv.walls.size()); ++w) {
    const auto& [gamma, iota] = cv.walls[w];
    const auto reps = edge_orbit_reps(gamma, iota);
    for (const OPlanar& u : enumerate_uplanar(gamma, iota)) {
      for (const OPlanar& lift : reversal_orbit(gamma, iota, u)) {
        auto res = contract_many(sigma, gamma, iota, lift, reps);
        if (res.size() != 1 || res[0].tree.num_vertices != 1) {
          throw UnmatchedFace("wall lift did not contract onto one cell");
        }
        const auto it = cell_index.find(res[0].o);
        if (it == cell_index.end()) {
          throw UnmatchedFace("wall lift contracted onto an unknown cell");
        }
        CoverFace f;
        f.wall = w;
        f.lift = lift;
        f.cell = it->second;
        face_index.emplace(std::make_pair(w, lift),
                           static_cast<int>(cv.faces.size()));
        cv.faces.push_back(std::move(f));
      }
    }
  }
  for (size_t i = 0; i < cv.faces.size(); ++i) {
    CoverFace& f = cv.faces[i];
    const auto& [gamma, iota] = cv.walls[f.wall];
    const OPlanar mate =
        reverse_at(gamma, iota, f.lift, glue_vertex(sigma, gamma, iota));
    const auto it = face_index.find({f.wall, mate});
    if (it == face_index.end() || it->second == static_cast<int>(i)) {
      throw UnmatchedFace("boundary lift has no gluing partner");
    }
    f.partner = it->second;
    const auto rel = glue_predicate(sigma, gamma, iota, f.lift, mate);
    if (!rel) throw UnmatchedFace("paired lifts match no relation");
    f.rel = *rel;
  }
  for (size_t i = 0; i < cv.faces.size(); ++i) {
    if (cv.faces[cv.faces[i].partner].partner != static_cast<int>(i)) {
      throw UnmatchedFace("face pairing is not an involution");
    }
  }

  UnionFind uf(cv.top_cells.size());
  for (const CoverFace& f : cv.faces) {
    uf.unite(f.cell, cv.faces[f.partner].cell);
  }
  cv.cell_component.resize(cv.top_cells.size());
  cv.num_components = compact_components(uf, cv.cell_component);
  return cv;
}

int connected_components(const CoverComplex& cover) {
  return cover.num_components;
}

std::vector<REquivClass> r_equivalence_classes(const LabelInvolution& sigma) {
  if (sigma.l == 0) {
    throw std::invalid_argument("the class relation needs a fixed tail");
  }
  std::vector<REquivClass> out;
  for (const auto& [gamma, iota] : enumerate_invariant_trees(sigma)) {
    const int dim = sigma.n() - 3 - (gamma.num_vertices - 1);
    const auto all_reps = edge_orbit_reps(gamma, iota);
    for (const OPlanar& u : enumerate_uplanar(gamma, iota)) {
      const auto lifts = reversal_orbit(gamma, iota, u);
      std::map<OPlanar, int> lift_index;
      for (size_t i = 0; i < lifts.size(); ++i) {
        lift_index.emplace(lifts[i], static_cast<int>(i));
      }
      UnionFind uf(lifts.size());
      for (const auto& kept : iota.invariant_edges) {
        std::vector<std::pair<int, int>> others;
        for (const auto& r : all_reps) {
          if (!same_edge(r, kept)) others.push_back(r);
        }
        for (size_t i = 0; i < lifts.size(); ++i) {
          auto res = contract_many(sigma, gamma, iota, lifts[i], others);
          if (res.size() != 1 || res[0].tree.num_vertices != 2) {
            throw UnmatchedFace("keeping one edge must reduce to a wall");
          }
          // The partner is the canonical lift of the wall reversal: reverse
          // every real vertex that the reduction folds into the glue vertex.
          const int vg = glue_vertex(sigma, res[0].tree, res[0].iota);
          OPlanar partner = lifts[i];
          for (int v = 0; v < gamma.num_vertices; ++v) {
            if (iota.vertex_is_real[v] && res[0].vertex_map[v] == vg) {
              partner = reverse_at(gamma, iota, partner, v);
            }
          }
          const auto it = lift_index.find(partner);
          if (it == lift_index.end()) {
            throw UnmatchedFace("reversal partner left the orbit");
          }
          uf.unite(static_cast<int>(i), it->second);
        }
      }
      std::map<int, std::vector<int>> groups;
      for (size_t i = 0; i < lifts.size(); ++i) {
        groups[uf.find(static_cast<int>(i))].push_back(static_cast<int>(i));
      }
      std::vector<const std::vector<int>*> ordered;
      ordered.reserve(groups.size());
      for (const auto& [root, members] : groups) ordered.push_back(&members);
      std::sort(ordered.begin(), ordered.end(),
                [](const auto* a, const auto* b) {
                  return a->front() < b->front();
                });
      for (const auto* members : ordered) {
        REquivClass c;
        c.tree = gamma;
        c.iota = iota;
        c.u = u;
        c.dim = dim;
        for (int i : *members) c.members.push_back(lifts[i]);
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

std::vector<REquivClass> cover_strata(const CoverComplex& cover) {
  if (cover.sigma.l == 0) {
    throw std::invalid_argument("labeled cover strata need a fixed tail");
  }
  auto classes = r_equivalence_classes(cover.sigma);
  std::set<OPlanar> cells(cover.top_cells.begin(), cover.top_cells.end());
  std::map<std::string, int> wall_of;
  for (size_t w = 0; w < cover.walls.size(); ++w) {
    wall_of.emplace(tree_label(cover.walls[w].first), static_cast<int>(w));
  }
  std::map<std::pair<int, OPlanar>, int> face_of;
  for (size_t i = 0; i < cover.faces.size(); ++i) {
    face_of.emplace(std::make_pair(cover.faces[i].wall, cover.faces[i].lift),
                    static_cast<int>(i));
  }
  size_t tops_seen = 0;
  for (const REquivClass& c : classes) {
    if (c.tree.num_vertices == 1) {
      if (c.members.size() != 1 || cells.count(c.members.front()) == 0) {
        throw UnmatchedFace("top class does not name a cell");
      }
      ++tops_seen;
    } else if (c.tree.num_vertices == 2) {
      const auto itw = wall_of.find(tree_label(c.tree));
      if (c.members.size() != 2 || itw == wall_of.end()) {
        throw UnmatchedFace("wall class is not a glued pair");
      }
      const auto f0 = face_of.find({itw->second, c.members[0]});
      const auto f1 = face_of.find({itw->second, c.members[1]});
      if (f0 == face_of.end() || f1 == face_of.end() ||
          cover.faces[f0->second].partner != f1->second) {
        throw UnmatchedFace("wall class disagrees with the face pairing");
      }
    }
  }
  if (tops_seen != cover.top_cells.size()) {
    throw UnmatchedFace("cells and top classes disagree");
  }
  return classes;
}

}  // namespace rms
