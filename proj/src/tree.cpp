#include "rms/tree.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

namespace rms {

Tree corolla(int n) {
  Tree t;
  t.n = n;
  t.num_flags = n;
  t.num_vertices = 1;
  t.boundary.assign(n + 1, 0);
  t.boundary[0] = -1;
  t.j.resize(n + 1);
  t.j[0] = 0;
  for (int f = 1; f <= n; ++f) t.j[f] = f;
  return t;
}

void validate(const Tree& t) {
  if (t.n < 3)
    throw TreeError(TreeError::Kind::BadLabels, "need at least 3 tails");
  if (t.num_flags < t.n || (t.num_flags - t.n) % 2 != 0)
    throw TreeError(TreeError::Kind::BadLabels, "bad flag count");
  if ((int)t.boundary.size() != t.num_flags + 1 ||
      (int)t.j.size() != t.num_flags + 1)
    throw TreeError(TreeError::Kind::BadLabels, "array sizes");
  for (int f = 1; f <= t.num_flags; ++f) {
    if (t.boundary[f] < 0 || t.boundary[f] >= t.num_vertices)
      throw TreeError(TreeError::Kind::BadLabels, "boundary out of range");
    if (t.j[f] < 1 || t.j[f] > t.num_flags || t.j[t.j[f]] != f)
      throw TreeError(TreeError::Kind::BadLabels, "j not an involution");
    bool fixed = t.j[f] == f;
    if (fixed != t.is_tail(f))
      throw TreeError(TreeError::Kind::BadLabels,
                      "j must fix exactly the tails 1..n");
    if (!fixed && t.boundary[f] == t.boundary[t.j[f]])
      throw TreeError(TreeError::Kind::NotATree, "self-loop edge");
  }
  // Connectivity and acyclicity: a connected graph with V vertices and V-1
  // edges is a tree.
  if (t.num_vertices != t.num_edges() + 1)
    throw TreeError(TreeError::Kind::NotATree, "edge count is not |V|-1");
  std::vector<char> seen(t.num_vertices, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  auto fb = flags_by_vertex(t);
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int f : fb[v]) {
      if (t.is_tail(f)) continue;
      int w = t.boundary[t.j[f]];
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != t.num_vertices)
    throw TreeError(TreeError::Kind::NotATree, "disconnected");
  for (int v = 0; v < t.num_vertices; ++v)
    if ((int)fb[v].size() < 3)
      throw TreeError(TreeError::Kind::Unstable, "vertex of valence < 3");
}

std::vector<std::vector<int>> flags_by_vertex(const Tree& t) {
  std::vector<std::vector<int>> fb(t.num_vertices);
  for (int f = 1; f <= t.num_flags; ++f) fb[t.boundary[f]].push_back(f);
  return fb;
}

std::vector<std::pair<int, int>> edges(const Tree& t) {
  std::vector<std::pair<int, int>> es;
  for (int f = t.n + 1; f <= t.num_flags; ++f)
    if (f < t.j[f]) es.emplace_back(f, t.j[f]);
  return es;
}

int valence(const Tree& t, int v) {
  int c = 0;
  for (int f = 1; f <= t.num_flags; ++f)
    if (t.boundary[f] == v) ++c;
  return c;
}

std::vector<std::uint64_t> tail_masks(const Tree& t) {
  std::vector<std::uint64_t> mask(t.num_flags + 1, 0);
  // Tail mask of flag f = tails beyond f = tails in the subtree hanging off
  // boundary[j[f]].  Iterate to fixpoint over a topological peel: process
  // edges from the leaves inward.
  auto fb = flags_by_vertex(t);
  // DFS from each internal flag would be quadratic but n is tiny; keep the
  // simple recursive computation with memoization.
  std::vector<char> done(t.num_flags + 1, 0);
  auto rec = [&](auto&& self, int f) -> std::uint64_t {
    // tails strictly beyond internal flag f
    if (done[f]) return mask[f];
    done[f] = 1;  // tree has no cycles, so recursion terminates
    std::uint64_t m = 0;
    int w = t.boundary[t.j[f]];
    for (int g : fb[w]) {
      if (g == t.j[f]) continue;
      if (t.is_tail(g))
        m |= std::uint64_t(1) << (g - 1);
      else
        m |= self(self, g);
    }
    mask[f] = m;
    return m;
  };
  for (int f = 1; f <= t.num_flags; ++f) {
    if (t.is_tail(f))
      mask[f] = std::uint64_t(1) << (f - 1);
    else
      rec(rec, f);
  }
  return mask;
}

namespace {

constexpr int kOpen = -1;
constexpr int kClose = -2;

// Encoding of the subtree at v entered through flag in_flag (-1 at the root):
// [kOpen, sorted tails..., sorted child encodings..., kClose].  Child tail
// sets are disjoint, so the sort order is strict and the encoding canonical.
void encode_subtree(const Tree& t, const std::vector<std::vector<int>>& fb,
                    int v, int in_flag, std::vector<int>& out,
                    std::vector<int>* child_flag_order) {
  out.push_back(kOpen);
  std::vector<int> child_flags;
  for (int f : fb[v]) {
    if (f == in_flag) continue;
    if (t.is_tail(f))
      out.push_back(f);
    else
      child_flags.push_back(f);
  }
  std::vector<std::pair<std::vector<int>, int>> encs;
  for (int f : child_flags) {
    std::vector<int> e;
    encode_subtree(t, fb, t.boundary[t.j[f]], t.j[f], e, nullptr);
    encs.emplace_back(std::move(e), f);
  }
  std::sort(encs.begin(), encs.end());
  for (auto& [e, f] : encs) {
    if (child_flag_order) child_flag_order->push_back(f);
    out.insert(out.end(), e.begin(), e.end());
  }
  out.push_back(kClose);
}

void canonical_layout(const Tree& t, const std::vector<std::vector<int>>& fb,
                      int v, int in_flag, Tree& out, Relabeling& rel,
                      int& next_internal) {
  int nv = rel.vertex_map[v];
  std::vector<std::pair<std::vector<int>, int>> encs;
  for (int f : fb[v]) {
    if (f == in_flag) continue;
    if (t.is_tail(f)) {
      rel.flag_map[f] = f;
      out.boundary[f] = nv;
      continue;
    }
    std::vector<int> e;
    encode_subtree(t, fb, t.boundary[t.j[f]], t.j[f], e, nullptr);
    encs.emplace_back(std::move(e), f);
  }
  std::sort(encs.begin(), encs.end());
  for (auto& [e, f] : encs) {
    int fp = next_internal++;
    int fc = next_internal++;
    rel.flag_map[f] = fp;
    rel.flag_map[t.j[f]] = fc;
    int child = t.boundary[t.j[f]];
    rel.vertex_map[child] = out.num_vertices++;
    out.boundary[fp] = nv;
    out.boundary[fc] = rel.vertex_map[child];
    out.j[fp] = fc;
    out.j[fc] = fp;
    canonical_layout(t, fb, child, t.j[f], out, rel, next_internal);
  }
}

}  // namespace

std::vector<int> canonical_form(const Tree& t) {
  auto fb = flags_by_vertex(t);
  std::vector<int> enc;
  encode_subtree(t, fb, t.boundary[t.n], -1, enc, nullptr);
  return enc;
}

std::pair<Tree, Relabeling> canonicalize(const Tree& t) {
  auto fb = flags_by_vertex(t);
  Tree out;
  out.n = t.n;
  out.num_flags = t.num_flags;
  out.num_vertices = 1;
  out.boundary.assign(t.num_flags + 1, -1);
  out.j.assign(t.num_flags + 1, 0);
  for (int f = 0; f <= t.n; ++f) out.j[f] = f;
  Relabeling rel;
  rel.flag_map.assign(t.num_flags + 1, -1);
  rel.vertex_map.assign(t.num_vertices, -1);
  int root = t.boundary[t.n];
  rel.vertex_map[root] = 0;
  int next_internal = t.n + 1;
  canonical_layout(t, fb, root, -1, out, rel, next_internal);
  return {out, rel};
}

std::optional<TreeIso> find_isomorphism(const Tree& t1, const Tree& t2,
                                        const std::vector<int>& tail_map) {
  if (t1.n != t2.n || t1.num_flags != t2.num_flags ||
      t1.num_vertices != t2.num_vertices)
    return std::nullopt;
  auto fb1 = flags_by_vertex(t1);
  auto fb2 = flags_by_vertex(t2);
  auto mk1 = tail_masks(t1);
  auto mk2 = tail_masks(t2);
  auto map_mask = [&](std::uint64_t m) {
    std::uint64_t r = 0;
    for (int i = 1; i <= t1.n; ++i)
      if (m & (std::uint64_t(1) << (i - 1)))
        r |= std::uint64_t(1) << (tail_map[i] - 1);
    return r;
  };
  TreeIso iso;
  iso.flag_map.assign(t1.num_flags + 1, -1);
  iso.vertex_map.assign(t1.num_vertices, -1);
  // Match the vertices carrying tail 1 and tail_map[1], then extend outward;
  // a tail-compatible isomorphism is unique because edges are determined by
  // their tail partitions.
  struct Item {
    int v1, v2, in1, in2;
  };
  std::vector<Item> stack = {{t1.boundary[1], t2.boundary[tail_map[1]], -1, -1}};
  iso.vertex_map[t1.boundary[1]] = t2.boundary[tail_map[1]];
  while (!stack.empty()) {
    auto [v1, v2, in1, in2] = stack.back();
    stack.pop_back();
    if (in1 >= 0) {
      iso.flag_map[in1] = in2;
    }
    // Tails must correspond under tail_map; edge flags by tail mask.
    std::vector<int> e1;
    std::map<std::uint64_t, int> e2bymask;
    std::set<int> tails2;
    for (int f : fb2[v2]) {
      if (f == in2) continue;
      if (t2.is_tail(f))
        tails2.insert(f);
      else
        e2bymask[mk2[f]] = f;
    }
    int count1 = 0;
    for (int f : fb1[v1]) {
      if (f == in1) continue;
      ++count1;
      if (t1.is_tail(f)) {
        if (!tails2.count(tail_map[f])) return std::nullopt;
        iso.flag_map[f] = tail_map[f];
      } else {
        e1.push_back(f);
      }
    }
    if (count1 != (int)tails2.size() + (int)e2bymask.size())
      return std::nullopt;
    for (int f : e1) {
      auto it = e2bymask.find(map_mask(mk1[f]));
      if (it == e2bymask.end()) return std::nullopt;
      int g = it->second;
      iso.flag_map[f] = g;
      int w1 = t1.boundary[t1.j[f]];
      int w2 = t2.boundary[t2.j[g]];
      if (iso.vertex_map[w1] != -1) return std::nullopt;
      iso.vertex_map[w1] = w2;
      stack.push_back({w1, w2, t1.j[f], t2.j[g]});
    }
  }
  for (int v = 0; v < t1.num_vertices; ++v)
    if (iso.vertex_map[v] == -1) return std::nullopt;
  return iso;
}

Contracted contract_edges_mapped(const Tree& t,
                                 const std::vector<std::pair<int, int>>& es) {
  std::vector<char> dead(t.num_flags + 1, 0);
  for (auto [f, g] : es) {
    if (f < 1 || f > t.num_flags || t.j[f] != g || f == g)
      throw TreeError(TreeError::Kind::UnknownEdge, "not an edge");
    dead[f] = dead[g] = 1;
  }
  // Union-find on vertices across contracted edges.
  std::vector<int> parent(t.num_vertices);
  for (int v = 0; v < t.num_vertices; ++v) parent[v] = v;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (auto [f, g] : es) parent[find(t.boundary[f])] = find(t.boundary[g]);
  std::vector<int> vnew(t.num_vertices, -1);
  int nv = 0;
  for (int v = 0; v < t.num_vertices; ++v)
    if (find(v) == v) vnew[v] = nv++;
  Tree out;
  out.n = t.n;
  out.num_vertices = nv;
  std::vector<int> fnew(t.num_flags + 1, -1);
  int nf = t.n;
  for (int f = 1; f <= t.n; ++f) fnew[f] = f;
  for (int f = t.n + 1; f <= t.num_flags; ++f)
    if (!dead[f]) fnew[f] = ++nf;
  out.num_flags = nf;
  out.boundary.assign(nf + 1, -1);
  out.j.assign(nf + 1, 0);
  for (int f = 1; f <= t.num_flags; ++f) {
    if (dead[f]) continue;
    out.boundary[fnew[f]] = vnew[find(t.boundary[f])];
    out.j[fnew[f]] = fnew[t.j[f]];
  }
  std::vector<int> vmap(t.num_vertices);
  for (int v = 0; v < t.num_vertices; ++v) vmap[v] = vnew[find(v)];
  return {out, fnew, vmap};
}

Tree contract_edges(const Tree& t,
                    const std::vector<std::pair<int, int>>& es) {
  return contract_edges_mapped(t, es).tree;
}

bool leq(const Tree& t1, const Tree& t2) {
  int d = t1.num_edges() - t2.num_edges();
  if (d < 0) return false;
  auto target = canonical_form(t2);
  auto es = edges(t1);
  int m = (int)es.size();
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  // All size-d subsets of edges.
  std::vector<int> pick(d);
  auto rec = [&](auto&& self, int start, int depth) -> bool {
    if (depth == d) {
      std::vector<std::pair<int, int>> sel;
      for (int i = 0; i < d; ++i) sel.push_back(es[pick[i]]);
      return canonical_form(contract_edges(t1, sel)) == target;
    }
    for (int i = start; i < m; ++i) {
      pick[depth] = i;
      if (self(self, i + 1, depth + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0, 0);
}

std::vector<Tree> enumerate_stable_trees(int n) {
  // Breadth-first vertex splitting: every stable tree with e+1 edges arises
  // from one with e edges by splitting a vertex, so layer-by-layer expansion
  // with canonical-form dedup reaches everything.
  std::vector<Tree> all;
  std::vector<Tree> layer = {corolla(n)};
  all.push_back(layer[0]);
  std::set<std::vector<int>> seen;
  seen.insert(canonical_form(layer[0]));
  while (!layer.empty()) {
    std::vector<Tree> next;
    for (const Tree& t : layer) {
      auto fb = flags_by_vertex(t);
      for (int v = 0; v < t.num_vertices; ++v) {
        const auto& fl = fb[v];
        int m = (int)fl.size();
        if (m < 4) continue;
        // Split flags of v into parts A (keeps v) and B (new vertex), each of
        // size >= 2.  Fix fl[0] in A to halve the count.
        for (std::uint32_t bits = 0; bits < (1u << (m - 1)); ++bits) {
          std::vector<int> B;
          for (int i = 1; i < m; ++i)
            if (bits & (1u << (i - 1))) B.push_back(fl[i]);
          if ((int)B.size() < 2 || (int)B.size() > m - 2) continue;
          Tree s = t;
          s.num_vertices++;
          s.num_flags += 2;
          s.boundary.resize(s.num_flags + 1);
          s.j.resize(s.num_flags + 1);
          int fa = s.num_flags - 1, fb2 = s.num_flags;
          s.boundary[fa] = v;
          s.boundary[fb2] = s.num_vertices - 1;
          s.j[fa] = fb2;
          s.j[fb2] = fa;
          for (int f : B) s.boundary[f] = s.num_vertices - 1;
          auto [c, rel] = canonicalize(s);
          auto key = canonical_form(c);
          if (seen.insert(key).second) {
            all.push_back(c);
            next.push_back(c);
          }
        }
      }
    }
    layer = std::move(next);
  }
  std::sort(all.begin(), all.end(), [](const Tree& a, const Tree& b) {
    if (a.num_edges() != b.num_edges()) return a.num_edges() < b.num_edges();
    return canonical_form(a) < canonical_form(b);
  });
  return all;
}

namespace {

void label_subtree(const Tree& t, const std::vector<std::vector<int>>& fb,
                   int v, int in_flag, std::string& out) {
  std::vector<int> tails;
  std::vector<int> children;
  for (int f : fb[v]) {
    if (f == in_flag) continue;
    if (t.is_tail(f))
      tails.push_back(f);
    else
      children.push_back(f);
  }
  // Order children by smallest tail beyond them for a stable display.
  auto mk = tail_masks(t);
  std::sort(children.begin(), children.end(),
            [&](int a, int b) { return mk[a] < mk[b]; });
  for (int tl : tails) {
    if (tl < 10)
      out += std::to_string(tl);
    else
      out += "(" + std::to_string(tl) + ")";
  }
  for (int f : children) {
    out += "(";
    label_subtree(t, fb, t.boundary[t.j[f]], t.j[f], out);
    out += ")";
  }
}

}  // namespace

std::string tree_label(const Tree& t) {
  auto fb = flags_by_vertex(t);
  if (t.num_vertices == 2) {
    // Smaller tail set first, ties broken lexicographically.
    int vn = t.boundary[t.n];
    std::vector<int> pa, pb;
    std::string a, b;
    for (int f = 1; f <= t.n; ++f) {
      std::string d =
          f < 10 ? std::to_string(f) : "(" + std::to_string(f) + ")";
      if (t.boundary[f] == vn) {
        pb.push_back(f);
        b += d;
      } else {
        pa.push_back(f);
        a += d;
      }
    }
    if (pb.size() < pa.size() || (pb.size() == pa.size() && pb < pa))
      std::swap(a, b);
    return "{" + a + "|" + b + "}";
  }
  std::string out = "{";
  label_subtree(t, fb, t.boundary[t.n], -1, out);
  out += "}";
  return out;
}

}  // namespace rms
