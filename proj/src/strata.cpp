#include "rms/strata.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>

namespace rms {

std::vector<std::pair<int, int>> edge_orbit(const Tree& t,
                                            const TreeInvolution& iota,
                                            std::pair<int, int> e) {
  (void)t;
  auto [f, g] = e;
  int fi = iota.flag_map[f];
  if (fi == f || fi == g) return {e};
  int gi = iota.flag_map[g];
  return {e, {std::min(fi, gi), std::max(fi, gi)}};
}

std::vector<std::pair<int, int>> edge_orbit_reps(const Tree& t,
                                                 const TreeInvolution& iota) {
  std::vector<std::pair<int, int>> reps;
  std::set<std::pair<int, int>> seen;
  for (auto e : edges(t)) {
    if (seen.count(e)) continue;
    reps.push_back(e);
    for (auto o : edge_orbit(t, iota, e)) seen.insert(o);
  }
  return reps;
}

namespace {

std::vector<int> map_sorted(const std::vector<int>& xs,
                            const std::vector<int>& fmap) {
  std::vector<int> out;
  for (int x : xs) out.push_back(fmap[x]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> map_seq(const std::vector<int>& xs,
                         const std::vector<int>& fmap) {
  std::vector<int> out;
  for (int x : xs) out.push_back(fmap[x]);
  return out;
}

// Rotate the cyclic sequence so that `last` ends it, then drop it.
std::vector<int> drop_rotated(std::vector<int> seq, int last) {
  auto it = std::find(seq.begin(), seq.end(), last);
  if (it == seq.end()) throw std::logic_error("flag missing from order");
  std::rotate(seq.begin(), it + 1, seq.end());
  seq.pop_back();
  return seq;
}

const VertexPlanar& datum_at(const TreeInvolution& iota, const OPlanar& o,
                             int v) {
  auto it = std::find(iota.real_vertices.begin(), iota.real_vertices.end(), v);
  if (it == iota.real_vertices.end())
    throw std::logic_error("no planar datum at vertex");
  return o.vertex_data[it - iota.real_vertices.begin()];
}

}  // namespace

std::vector<ContractionResult> contract_oplanar(const LabelInvolution& sigma,
                                                const Tree& t,
                                                const TreeInvolution& iota,
                                                const OPlanar& o,
                                                std::pair<int, int> e) {
  auto orbit = edge_orbit(t, iota, e);
  auto con = contract_edges_mapped(t, orbit);
  auto [ct, rel] = canonicalize(con.tree);
  std::vector<int> fmap(t.num_flags + 1, -1);
  for (int f = 1; f <= t.num_flags; ++f)
    if (con.flag_map[f] >= 0) fmap[f] = rel.flag_map[con.flag_map[f]];
  std::vector<int> vmap(t.num_vertices, -1);
  for (int v = 0; v < t.num_vertices; ++v)
    vmap[v] = rel.vertex_map[con.vertex_map[v]];
  auto iota2 = sigma_invariance(ct, sigma);
  if (!iota2) throw std::logic_error("contraction lost invariance");

  int f = e.first, g = e.second;
  bool pointwise = iota.flag_map[f] == f;
  bool special = iota.flag_map[f] == g;

  auto assemble = [&](const std::map<int, VertexPlanar>& at) {
    OPlanar res;
    for (int v : iota2->real_vertices) {
      auto it = at.find(v);
      if (it == at.end()) throw std::logic_error("missing vertex datum");
      res.vertex_data.push_back(it->second);
    }
    return res;
  };

  std::vector<ContractionResult> out;
  if (special) {
    // Flag-swapped edge: the curve acquires one real component carrying all
    // flags of the chosen side's vertex, or an empty real circle.
    int va = t.boundary[o.plus_flag];
    int m2 = vmap[va];
    if (iota2->real_vertices != std::vector<int>{m2})
      throw std::logic_error("unexpected real locus after contraction");
    std::vector<int> plus;
    for (int h = 1; h <= t.num_flags; ++h)
      if (t.boundary[h] == va && h != o.plus_flag) plus.push_back(fmap[h]);
    std::sort(plus.begin(), plus.end());
    OPlanar two_sided;
    two_sided.vertex_data.push_back({false, plus, {}});
    OPlanar empty;
    empty.vertex_data.push_back({true, {}, {}});
    out.push_back({ct, *iota2, two_sided, fmap, vmap});
    out.push_back({ct, *iota2, empty, fmap, vmap});
    return out;
  }

  std::map<int, VertexPlanar> at;
  if (pointwise) {
    // Both endpoints are real; concatenate their orders at the removed
    // flags and unite the halves.
    int va = t.boundary[f], vb = t.boundary[g];
    const VertexPlanar& da = datum_at(iota, o, va);
    const VertexPlanar& db = datum_at(iota, o, vb);
    VertexPlanar merged;
    merged.plus = da.plus;
    merged.plus.insert(merged.plus.end(), db.plus.begin(), db.plus.end());
    merged.plus = map_sorted(merged.plus, fmap);
    std::vector<int> seq = drop_rotated(da.order, f);
    std::vector<int> seqb = drop_rotated(db.order, g);
    seq.insert(seq.end(), seqb.begin(), seqb.end());
    merged.order = anchor_cycle(map_seq(seq, fmap), t.n);
    at[vmap[va]] = std::move(merged);
    for (size_t i = 0; i < iota.real_vertices.size(); ++i) {
      int v = iota.real_vertices[i];
      if (v == va || v == vb) continue;
      const VertexPlanar& d = o.vertex_data[i];
      at[vmap[v]] = {d.empty_real, map_sorted(d.plus, fmap),
                     anchor_cycle(map_seq(d.order, fmap), t.n)};
    }
  } else {
    // Conjugate pair.  Find the real endpoint if there is one.
    int a = -1, h = -1;
    if (iota.vertex_is_real[t.boundary[f]]) {
      a = t.boundary[f];
      h = f;
    } else if (iota.vertex_is_real[t.boundary[g]]) {
      a = t.boundary[g];
      h = g;
    }
    for (size_t i = 0; i < iota.real_vertices.size(); ++i) {
      int v = iota.real_vertices[i];
      const VertexPlanar& d = o.vertex_data[i];
      if (v != a || d.empty_real) {
        at[vmap[v]] = {d.empty_real, map_sorted(d.plus, fmap),
                       anchor_cycle(map_seq(d.order, fmap), t.n)};
        continue;
      }
      // The component beyond the half of the pair lying in `plus` joins
      // that half; its conjugate joins the minus side implicitly.
      int hb = iota.flag_map[h];
      int p = std::find(d.plus.begin(), d.plus.end(), h) != d.plus.end() ? h
                                                                         : hb;
      int wp = t.boundary[t.j[p]];
      VertexPlanar nd;
      for (int x : d.plus)
        if (x != p) nd.plus.push_back(fmap[x]);
      for (int x = 1; x <= t.num_flags; ++x)
        if (t.boundary[x] == wp && x != t.j[p]) nd.plus.push_back(fmap[x]);
      std::sort(nd.plus.begin(), nd.plus.end());
      nd.order = anchor_cycle(map_seq(d.order, fmap), t.n);
      at[vmap[v]] = std::move(nd);
    }
    if (iota.real_vertices.empty()) {
      // No real vertex: the side datum survives unchanged.
      OPlanar res;
      res.plus_flag = fmap[o.plus_flag];
      out.push_back({ct, *iota2, res, fmap, vmap});
      return out;
    }
  }
  out.push_back({ct, *iota2, assemble(at), fmap, vmap});
  return out;
}

std::vector<ContractionResult> contract_many(
    const LabelInvolution& sigma, const Tree& t, const TreeInvolution& iota,
    const OPlanar& o, std::vector<std::pair<int, int>> orbit_reps) {
  if (orbit_reps.empty()) {
    ContractionResult id;
    id.tree = t;
    id.iota = iota;
    id.o = o;
    id.flag_map.resize(t.num_flags + 1);
    for (int f = 0; f <= t.num_flags; ++f) id.flag_map[f] = f;
    id.vertex_map.resize(t.num_vertices);
    for (int v = 0; v < t.num_vertices; ++v) id.vertex_map[v] = v;
    return {id};
  }
  std::sort(orbit_reps.begin(), orbit_reps.end());
  auto e = orbit_reps.front();
  std::vector<std::pair<int, int>> rest(orbit_reps.begin() + 1,
                                        orbit_reps.end());
  std::vector<ContractionResult> out;
  for (const ContractionResult& r : contract_oplanar(sigma, t, iota, o, e)) {
    std::vector<std::pair<int, int>> mapped;
    for (auto [x, y] : rest) {
      int mx = r.flag_map[x], my = r.flag_map[y];
      mapped.emplace_back(std::min(mx, my), std::max(mx, my));
    }
    for (const ContractionResult& s :
         contract_many(sigma, r.tree, r.iota, r.o, mapped)) {
      ContractionResult c;
      c.tree = s.tree;
      c.iota = s.iota;
      c.o = s.o;
      c.flag_map.assign(t.num_flags + 1, -1);
      for (int x = 0; x <= t.num_flags; ++x)
        if (r.flag_map[x] >= 0) c.flag_map[x] = s.flag_map[r.flag_map[x]];
      c.vertex_map.resize(t.num_vertices);
      for (int v = 0; v < t.num_vertices; ++v)
        c.vertex_map[v] = s.vertex_map[r.vertex_map[v]];
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::optional<std::vector<std::pair<int, int>>> orbits_to_contract(
    const Tree& gamma, const TreeInvolution& iota, const Tree& tau) {
  auto part_key = [](std::uint64_t m, int n) {
    std::uint64_t full = (n == 64) ? ~std::uint64_t(0)
                                   : ((std::uint64_t(1) << n) - 1);
    return std::min(m, full & ~m);
  };
  auto mg = tail_masks(gamma);
  auto mt = tail_masks(tau);
  std::set<std::uint64_t> tau_keys;
  for (auto e : edges(tau)) tau_keys.insert(part_key(mt[e.first], tau.n));
  std::set<std::pair<int, int>> doomed;
  for (auto e : edges(gamma))
    if (!tau_keys.count(part_key(mg[e.first], gamma.n))) doomed.insert(e);
  if (edges(gamma).size() - doomed.size() != edges(tau).size())
    return std::nullopt;
  std::vector<std::pair<int, int>> reps;
  std::set<std::pair<int, int>> seen;
  for (auto e : doomed) {
    if (seen.count(e)) continue;
    auto orb = edge_orbit(gamma, iota, e);
    for (auto x : orb)
      if (!doomed.count(x)) return std::nullopt;  // orbit split across fate
    for (auto x : orb) seen.insert(x);
    reps.push_back(e);
  }
  return reps;
}

std::vector<OPlanar> delta_lifts(const LabelInvolution& sigma,
                                 const Tree& gamma,
                                 const TreeInvolution& iota_gamma,
                                 const OPlanar& u_hat, const Tree& tau,
                                 const OPlanar& o) {
  auto need = orbits_to_contract(gamma, iota_gamma, tau);
  std::vector<OPlanar> out;
  if (!need) return out;
  for (const OPlanar& cand : reversal_orbit(gamma, iota_gamma, u_hat)) {
    for (const ContractionResult& r :
         contract_many(sigma, gamma, iota_gamma, cand, *need)) {
      if (r.tree == tau && r.o == o) {
        out.push_back(cand);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_boundary(const LabelInvolution& sigma, const Tree& gamma,
                 const TreeInvolution& iota_gamma, const OPlanar& u_hat,
                 const Tree& tau, const OPlanar& u) {
  auto need = orbits_to_contract(gamma, iota_gamma, tau);
  if (!need) return false;
  auto iota_tau = sigma_invariance(tau, sigma);
  if (!iota_tau) return false;
  for (const OPlanar& cand : reversal_orbit(gamma, iota_gamma, u_hat))
    for (const ContractionResult& r :
         contract_many(sigma, gamma, iota_gamma, cand, *need))
      if (r.tree == tau && to_uplanar(tau, *iota_tau, r.o) == u) return true;
  return false;
}

int StratifiedComplex::id_of(const Tree& t, const OPlanar& u) const {
  auto it = index.find({canonical_form(t), u});
  return it == index.end() ? -1 : it->second;
}

StratifiedComplex build_poset(const LabelInvolution& sigma) {
  StratifiedComplex c;
  int n = sigma.n();
  for (const auto& [t, iota] : enumerate_invariant_trees(sigma)) {
    for (const OPlanar& u : enumerate_uplanar(t, iota)) {
      int id = (int)c.strata.size();
      c.index[{canonical_form(t), u}] = id;
      c.strata.push_back({t, iota, u, n - 3 - t.num_edges()});
    }
  }
  for (const Stratum& s : c.strata) {
    if (s.tree.num_edges() == 0) continue;
    int lo = c.id_of(s.tree, s.u);
    for (auto e : edge_orbit_reps(s.tree, s.iota)) {
      for (const OPlanar& cand : reversal_orbit(s.tree, s.iota, s.u)) {
        for (const ContractionResult& r :
             contract_oplanar(sigma, s.tree, s.iota, cand, e)) {
          int hi = c.id_of(r.tree, to_uplanar(r.tree, r.iota, r.o));
          if (hi < 0) throw std::logic_error("contraction left the poset");
          c.adjacency.emplace_back(lo, hi);
        }
      }
    }
  }
  std::sort(c.adjacency.begin(), c.adjacency.end());
  c.adjacency.erase(std::unique(c.adjacency.begin(), c.adjacency.end()),
                    c.adjacency.end());
  return c;
}

}  // namespace rms
