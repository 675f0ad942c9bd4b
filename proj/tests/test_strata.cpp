// Stratification poset tests.  The small posets are checked against the
// hand-computable pictures: circles for n = 4, the pentagon tiling of the
// five-tail surface, and the seven-stratum surface with one conjugate pair
// and one fixed tail.  Contraction itself is pinned down by symmetry and
// order-independence properties.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "rms/strata.hpp"

using namespace rms;

namespace {

std::map<int, int> dims_histogram(const StratifiedComplex& c) {
  std::map<int, int> h;
  for (const auto& s : c.strata) ++h[s.dim];
  return h;
}

std::map<int, std::set<int>> upward_sets(const StratifiedComplex& c) {
  std::map<int, std::set<int>> up;
  for (auto [lo, hi] : c.adjacency) up[lo].insert(hi);
  return up;
}

std::map<int, std::set<int>> downward_sets(const StratifiedComplex& c) {
  std::map<int, std::set<int>> dn;
  for (auto [lo, hi] : c.adjacency) dn[hi].insert(lo);
  return dn;
}

std::set<int> reach_up(const std::map<int, std::set<int>>& up, int from) {
  std::set<int> seen;
  std::vector<int> work{from};
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    auto it = up.find(v);
    if (it == up.end()) continue;
    for (int w : it->second)
      if (seen.insert(w).second) work.push_back(w);
  }
  return seen;
}

int only_stratum_with_label(const StratifiedComplex& c,
                            const std::string& label) {
  int found = -1;
  for (int i = 0; i < (int)c.strata.size(); ++i) {
    if (tree_label(c.strata[i].tree) != label) continue;
    REQUIRE(found == -1);
    found = i;
  }
  REQUIRE(found >= 0);
  return found;
}

int chamber_with_plus(const StratifiedComplex& c, const std::vector<int>& plus) {
  for (int i = 0; i < (int)c.strata.size(); ++i) {
    const Stratum& s = c.strata[i];
    if (s.tree.num_edges() != 0) continue;
    if (s.u.vertex_data.size() == 1 && !s.u.vertex_data[0].empty_real &&
        s.u.vertex_data[0].plus == plus)
      return i;
  }
  REQUIRE(false);
  return -1;
}

int chamber_with_empty_circle(const StratifiedComplex& c) {
  for (int i = 0; i < (int)c.strata.size(); ++i) {
    const Stratum& s = c.strata[i];
    if (s.tree.num_edges() == 0 && s.u.vertex_data.size() == 1 &&
        s.u.vertex_data[0].empty_real)
      return i;
  }
  REQUIRE(false);
  return -1;
}

using Decorated = std::pair<std::vector<int>, OPlanar>;

// Contract the listed orbit representatives strictly in the given order,
// following flags through each step.
std::multiset<Decorated> sequential_contract(
    const LabelInvolution& sigma, const Tree& t, const TreeInvolution& iota,
    const OPlanar& o, const std::vector<std::pair<int, int>>& order) {
  if (order.empty()) return {{canonical_form(t), o}};
  std::multiset<Decorated> out;
  for (const ContractionResult& r :
       contract_oplanar(sigma, t, iota, o, order.front())) {
    std::vector<std::pair<int, int>> rest;
    for (size_t i = 1; i < order.size(); ++i) {
      int a = r.flag_map[order[i].first], b = r.flag_map[order[i].second];
      rest.emplace_back(std::min(a, b), std::max(a, b));
    }
    auto sub = sequential_contract(sigma, r.tree, r.iota, r.o, rest);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

}  // namespace

TEST_CASE("four fixed tails stratify a circle of three intervals") {
  LabelInvolution sigma{0, 4};
  auto c = build_poset(sigma);
  CHECK(dims_histogram(c) == std::map<int, int>{{0, 3}, {1, 3}});
  CHECK(c.adjacency.size() == 6);
  auto up = upward_sets(c);
  auto dn = downward_sets(c);
  for (const auto& s : c.strata) {
    int id = c.id_of(s.tree, s.u);
    if (s.dim == 0) CHECK(up[id].size() == 2);
    if (s.dim == 1) CHECK(dn[id].size() == 2);
  }
}

TEST_CASE("one conjugate pair and two fixed tails give an interval meeting its endpoint twice") {
  LabelInvolution sigma{1, 2};
  auto c = build_poset(sigma);
  REQUIRE(c.strata.size() == 2);
  int point = only_stratum_with_label(c, "{12|34}");
  int top = only_stratum_with_label(c, "{1234}");
  CHECK(c.strata[point].dim == 0);
  CHECK(c.strata[top].dim == 1);
  CHECK(c.adjacency == std::vector<std::pair<int, int>>{{point, top}});

  // Both endpoint lifts of the wall contract onto each chamber structure,
  // so the lift of a boundary structure is genuinely non-unique here.
  const Stratum& p = c.strata[point];
  const Stratum& t = c.strata[top];
  std::vector<OPlanar> all;
  for (const OPlanar& o : enumerate_oplanar(t.tree, t.iota)) {
    auto lifts = delta_lifts(sigma, p.tree, p.iota, p.u, t.tree, o);
    CHECK(lifts.size() == 2);
    all.insert(all.end(), lifts.begin(), lifts.end());
  }
  std::sort(all.begin(), all.end());
  CHECK(std::unique(all.begin(), all.end()) == all.end());
  CHECK(all.size() == reversal_orbit(p.tree, p.iota, p.u).size());
}

TEST_CASE("two conjugate pairs stratify a circle with an empty-circle arc") {
  LabelInvolution sigma{2, 0};
  auto c = build_poset(sigma);
  CHECK(dims_histogram(c) == std::map<int, int>{{0, 3}, {1, 3}});
  int arc_a = chamber_with_plus(c, {1, 2});
  int arc_b = chamber_with_plus(c, {1, 4});
  int arc_e = chamber_with_empty_circle(c);
  int p13 = only_stratum_with_label(c, "{13|24}");
  int p12 = only_stratum_with_label(c, "{12|34}");
  int p14 = only_stratum_with_label(c, "{14|23}");
  auto up = upward_sets(c);
  CHECK(up[p13] == std::set<int>{arc_a, arc_b});
  CHECK(up[p12] == std::set<int>{arc_a, arc_e});
  CHECK(up[p14] == std::set<int>{arc_b, arc_e});
  CHECK(c.adjacency.size() == 6);
}

TEST_CASE("five fixed tails tile the surface by twelve pentagons") {
  LabelInvolution sigma{0, 5};
  auto c = build_poset(sigma);
  CHECK(dims_histogram(c) == std::map<int, int>{{0, 15}, {1, 30}, {2, 12}});
  for (int i = 0; i < (int)c.strata.size(); ++i)
    CHECK(c.id_of(c.strata[i].tree, c.strata[i].u) == i);

  auto up = upward_sets(c);
  auto dn = downward_sets(c);
  for (int i = 0; i < (int)c.strata.size(); ++i) {
    const Stratum& s = c.strata[i];
    if (s.dim == 2) {
      // Pentagon: five walls, five corners, each corner on two of the walls.
      auto walls = dn[i];
      CHECK(walls.size() == 5);
      std::set<int> corners;
      int corner_wall_pairs = 0;
      for (int w : walls) {
        CHECK(c.strata[w].dim == 1);
        for (int p : dn[w]) {
          corners.insert(p);
          ++corner_wall_pairs;
        }
      }
      CHECK(corners.size() == 5);
      CHECK(corner_wall_pairs == 10);
    } else if (s.dim == 1) {
      CHECK(up[i].size() == 2);
    } else {
      CHECK(up[i].size() == 4);
      std::set<int> tops;
      for (int t : reach_up(up, i))
        if (c.strata[t].dim == 2) tops.insert(t);
      CHECK(tops.size() == 4);
    }
  }
}

TEST_CASE("two conjugate pairs and a fixed tail give a seven-stratum surface") {
  LabelInvolution sigma{2, 1};
  auto c = build_poset(sigma);
  CHECK(dims_histogram(c) == std::map<int, int>{{0, 3}, {1, 2}, {2, 2}});
  int top_a = chamber_with_plus(c, {1, 2});
  int top_b = chamber_with_plus(c, {1, 4});
  int w13 = only_stratum_with_label(c, "{13|245}");
  int w24 = only_stratum_with_label(c, "{24|135}");
  int p_split = only_stratum_with_label(c, "{5(13)(24)}");
  int p_a = only_stratum_with_label(c, "{5(12)(34)}");
  int p_b = only_stratum_with_label(c, "{5(23)(14)}");
  auto up = upward_sets(c);
  CHECK(up[w13] == std::set<int>{top_a, top_b});
  CHECK(up[w24] == std::set<int>{top_a, top_b});
  CHECK(up[p_split] == std::set<int>{w13, w24});
  // Contracting a conjugate pair of edges drops the dimension by two: these
  // points sit inside the closure of a single chamber with no wall between.
  CHECK(up[p_a] == std::set<int>{top_a});
  CHECK(up[p_b] == std::set<int>{top_b});
}

TEST_CASE("one conjugate pair and three fixed tails stratum census") {
  LabelInvolution sigma{1, 3};
  auto c = build_poset(sigma);
  CHECK(dims_histogram(c) == std::map<int, int>{{0, 3}, {1, 6}, {2, 2}});
}

TEST_CASE("six fixed tails stratum census matches the chamber count formulas") {
  LabelInvolution sigma{0, 6};
  auto c = build_poset(sigma);
  CHECK(dims_histogram(c) ==
        std::map<int, int>{{0, 105}, {1, 315}, {2, 270}, {3, 60}});
}

TEST_CASE("codimension-one strata bound at most two chambers") {
  for (auto [k, l] : std::vector<std::pair<int, int>>{{0, 4},
                                                      {1, 2},
                                                      {2, 0},
                                                      {0, 5},
                                                      {1, 3},
                                                      {2, 1},
                                                      {0, 6},
                                                      {1, 4},
                                                      {2, 2},
                                                      {3, 0}}) {
    LabelInvolution sigma{k, l};
    int n = sigma.n();
    auto c = build_poset(sigma);
    auto up = upward_sets(c);
    for (auto [lo, hi] : c.adjacency)
      CHECK(c.strata[lo].dim < c.strata[hi].dim);
    for (int i = 0; i < (int)c.strata.size(); ++i) {
      if (c.strata[i].dim != n - 4) continue;
      int tops = 0;
      for (int j : up[i])
        if (c.strata[j].dim == n - 3) ++tops;
      CHECK(tops >= 1);
      CHECK(tops <= 2);
    }
  }
}

TEST_CASE("identity involution reduces the poset to tree contraction") {
  LabelInvolution sigma{0, 5};
  auto c = build_poset(sigma);
  std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
  for (auto [lo, hi] : c.adjacency)
    seen.insert({canonical_form(c.strata[lo].tree),
                 canonical_form(c.strata[hi].tree)});
  std::set<std::pair<std::vector<int>, std::vector<int>>> expect;
  auto trees = enumerate_stable_trees(5);
  for (const Tree& a : trees)
    for (const Tree& b : trees)
      if (a.num_edges() == b.num_edges() + 1 && leq(a, b))
        expect.insert({canonical_form(a), canonical_form(b)});
  CHECK(seen == expect);
}

TEST_CASE("contraction commutes with reversal at every real vertex") {
  for (auto [k, l] : std::vector<std::pair<int, int>>{
           {0, 4}, {1, 2}, {2, 0}, {1, 3}, {2, 1}}) {
    LabelInvolution sigma{k, l};
    for (const auto& [t, iota] : enumerate_invariant_trees(sigma)) {
      if (t.num_edges() == 0) continue;
      for (const OPlanar& o : enumerate_oplanar(t, iota)) {
        OPlanar rev = reverse_all(t, iota, o);
        for (auto e : edge_orbit_reps(t, iota)) {
          std::multiset<Decorated> from_rev, rev_of;
          for (const ContractionResult& r :
               contract_oplanar(sigma, t, iota, rev, e))
            from_rev.insert({canonical_form(r.tree), r.o});
          for (const ContractionResult& r :
               contract_oplanar(sigma, t, iota, o, e))
            rev_of.insert({canonical_form(r.tree),
                           reverse_all(r.tree, r.iota, r.o)});
          CHECK(from_rev == rev_of);
        }
      }
    }
  }
}

TEST_CASE("composite contraction does not depend on the order of orbits") {
  for (auto [k, l] :
       std::vector<std::pair<int, int>>{{0, 5}, {1, 3}, {2, 1}}) {
    LabelInvolution sigma{k, l};
    for (const auto& [t, iota] : enumerate_invariant_trees(sigma)) {
      auto reps = edge_orbit_reps(t, iota);
      if (reps.size() < 2) continue;
      for (const OPlanar& o : enumerate_oplanar(t, iota)) {
        auto forward = sequential_contract(sigma, t, iota, o, reps);
        std::vector<std::pair<int, int>> flipped(reps.rbegin(), reps.rend());
        CHECK(forward == sequential_contract(sigma, t, iota, o, flipped));
        std::multiset<Decorated> via_many;
        for (const ContractionResult& r :
             contract_many(sigma, t, iota, o, reps))
          via_many.insert({canonical_form(r.tree), r.o});
        CHECK(forward == via_many);
      }
    }
  }
}

TEST_CASE("lifting a stratum onto its own tree returns the structure") {
  LabelInvolution sigma{2, 1};
  auto c = build_poset(sigma);
  for (const Stratum& s : c.strata) {
    for (const OPlanar& o : reversal_orbit(s.tree, s.iota, s.u)) {
      auto lifts = delta_lifts(sigma, s.tree, s.iota, s.u, s.tree, o);
      CHECK(lifts == std::vector<OPlanar>{o});
    }
  }
}

TEST_CASE("boundary test agrees with transitive closure of the poset") {
  for (auto [k, l] : std::vector<std::pair<int, int>>{
           {0, 4}, {1, 2}, {2, 0}, {2, 1}, {1, 3}}) {
    LabelInvolution sigma{k, l};
    auto c = build_poset(sigma);
    auto up = upward_sets(c);
    for (int i = 0; i < (int)c.strata.size(); ++i) {
      auto above = reach_up(up, i);
      for (int j = 0; j < (int)c.strata.size(); ++j) {
        if (c.strata[i].dim >= c.strata[j].dim) continue;
        CHECK(is_boundary(sigma, c.strata[i].tree, c.strata[i].iota,
                          c.strata[i].u, c.strata[j].tree,
                          c.strata[j].u) == (above.count(j) > 0));
      }
    }
  }
}
