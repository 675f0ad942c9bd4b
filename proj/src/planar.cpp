#include "rms/planar.hpp"

#include <algorithm>
#include <stdexcept>

namespace rms {

std::vector<int> anchor_cycle(std::vector<int> seq, int n) {
  if (seq.empty()) return seq;
  auto it = std::find(seq.begin(), seq.end(), n);
  if (it == seq.end()) it = std::min_element(seq.begin(), seq.end());
  std::rotate(seq.begin(), it, seq.end());
  return seq;
}

namespace {

// Flags at v swapped by iota, one representative per pair (the smaller id).
std::vector<int> pair_reps(const Tree& t, const TreeInvolution& iota, int v) {
  std::vector<int> reps;
  for (int f = 1; f <= t.num_flags; ++f)
    if (t.boundary[f] == v && iota.flag_map[f] != f && f < iota.flag_map[f])
      reps.push_back(f);
  return reps;
}

std::vector<VertexPlanar> vertex_choices(const Tree& t,
                                         const TreeInvolution& iota, int v,
                                         bool allow_empty) {
  std::vector<int> reps = pair_reps(t, iota, v);
  const std::vector<int>& fixed = iota.real_flags[v];
  std::vector<std::vector<int>> orders;
  if (fixed.empty()) {
    orders.push_back({});
  } else {
    std::vector<int> base = anchor_cycle(fixed, t.n);
    std::vector<int> rest(base.begin() + 1, base.end());
    std::sort(rest.begin(), rest.end());
    do {
      std::vector<int> seq = {base[0]};
      seq.insert(seq.end(), rest.begin(), rest.end());
      orders.push_back(seq);
    } while (std::next_permutation(rest.begin(), rest.end()));
  }
  std::vector<VertexPlanar> out;
  for (std::uint32_t bits = 0; bits < (1u << reps.size()); ++bits) {
    std::vector<int> plus;
    for (size_t i = 0; i < reps.size(); ++i)
      plus.push_back((bits >> i) & 1 ? iota.flag_map[reps[i]] : reps[i]);
    std::sort(plus.begin(), plus.end());
    for (const auto& ord : orders) out.push_back({false, plus, ord});
  }
  if (allow_empty && fixed.empty()) out.push_back({true, {}, {}});
  return out;
}

}  // namespace

std::vector<OPlanar> enumerate_oplanar(const Tree& t,
                                       const TreeInvolution& iota) {
  std::vector<OPlanar> out;
  if (iota.real_vertices.empty()) {
    auto [f, g] = *iota.special_edge;
    OPlanar a, b;
    a.plus_flag = f;
    b.plus_flag = g;
    out = {a, b};
    std::sort(out.begin(), out.end());
    return out;
  }
  bool single = iota.real_vertices.size() == 1;
  std::vector<std::vector<VertexPlanar>> choices;
  for (int v : iota.real_vertices)
    choices.push_back(vertex_choices(t, iota, v, single));
  std::vector<size_t> idx(choices.size(), 0);
  for (;;) {
    OPlanar o;
    for (size_t i = 0; i < choices.size(); ++i)
      o.vertex_data.push_back(choices[i][idx[i]]);
    out.push_back(std::move(o));
    size_t i = 0;
    while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

OPlanar reverse_at(const Tree& t, const TreeInvolution& iota, const OPlanar& o,
                   int v) {
  auto it = std::find(iota.real_vertices.begin(), iota.real_vertices.end(), v);
  if (it == iota.real_vertices.end())
    throw std::logic_error("reverse_at: not a real vertex");
  size_t i = it - iota.real_vertices.begin();
  OPlanar r = o;
  VertexPlanar& vd = r.vertex_data[i];
  if (vd.empty_real) return r;
  for (int& f : vd.plus) f = iota.flag_map[f];
  std::sort(vd.plus.begin(), vd.plus.end());
  std::reverse(vd.order.begin(), vd.order.end());
  vd.order = anchor_cycle(vd.order, t.n);
  return r;
}

OPlanar reverse_all(const Tree& t, const TreeInvolution& iota,
                    const OPlanar& o) {
  if (iota.real_vertices.empty()) {
    OPlanar r = o;
    r.plus_flag = o.plus_flag == iota.special_edge->first
                      ? iota.special_edge->second
                      : iota.special_edge->first;
    return r;
  }
  OPlanar r = o;
  for (int v : iota.real_vertices) r = reverse_at(t, iota, r, v);
  return r;
}

std::vector<OPlanar> reversal_orbit(const Tree& t, const TreeInvolution& iota,
                                    const OPlanar& o) {
  std::vector<OPlanar> orbit;
  if (iota.real_vertices.empty()) {
    orbit = {o, reverse_all(t, iota, o)};
  } else {
    size_t m = iota.real_vertices.size();
    for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
      OPlanar r = o;
      for (size_t i = 0; i < m; ++i)
        if ((bits >> i) & 1) r = reverse_at(t, iota, r, iota.real_vertices[i]);
      orbit.push_back(std::move(r));
    }
  }
  std::sort(orbit.begin(), orbit.end());
  orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
  return orbit;
}

OPlanar to_uplanar(const Tree& t, const TreeInvolution& iota,
                   const OPlanar& o) {
  return reversal_orbit(t, iota, o).front();
}

std::vector<OPlanar> enumerate_uplanar(const Tree& t,
                                       const TreeInvolution& iota) {
  std::vector<OPlanar> out;
  for (const OPlanar& o : enumerate_oplanar(t, iota)) {
    OPlanar u = to_uplanar(t, iota, o);
    if (u == o) out.push_back(std::move(u));
  }
  return out;
}

std::vector<int> vertex_signs(const Tree& t, const TreeInvolution& iota,
                              const OPlanar& o) {
  std::vector<int> sign(t.num_vertices, 0);
  auto fill_beyond = [&](int flag, int s) {
    // Assign s to every vertex in the component beyond `flag`.
    std::vector<int> stack = {t.boundary[t.j[flag]]};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (sign[v] != 0) continue;
      sign[v] = s;
      for (int f = 1; f <= t.num_flags; ++f) {
        if (t.boundary[f] != v || t.is_tail(f) || t.j[f] == flag) continue;
        int w = t.boundary[t.j[f]];
        if (sign[w] == 0 && !(iota.vertex_is_real.size() > (size_t)w &&
                              iota.vertex_is_real[w]))
          stack.push_back(w);
      }
    }
  };
  if (iota.real_vertices.empty()) {
    int pf = o.plus_flag;
    int mf = iota.flag_map[pf];
    // Mark the plus side starting from the vertex carrying pf.
    sign[t.boundary[mf]] = -1;  // temporarily block crossing the edge
    fill_beyond(mf, 1);
    sign[t.boundary[mf]] = 0;
    for (int v = 0; v < t.num_vertices; ++v)
      if (sign[v] == 0) sign[v] = -1;
    return sign;
  }
  for (size_t i = 0; i < iota.real_vertices.size(); ++i) {
    int v = iota.real_vertices[i];
    const VertexPlanar& vd = o.vertex_data[i];
    if (vd.empty_real) continue;
    for (int f = 1; f <= t.num_flags; ++f) {
      if (t.boundary[f] != v || iota.flag_map[f] == f) continue;
      bool plus = std::find(vd.plus.begin(), vd.plus.end(), f) != vd.plus.end();
      if (!t.is_tail(f)) fill_beyond(f, plus ? 1 : -1);
    }
  }
  return sign;
}

std::vector<int> frak_tails(const LabelInvolution& sigma) {
  int n = sigma.n();
  if (sigma.l >= 3) return {2 * sigma.k + 1, n - 1, n};
  return {sigma.k, 2 * sigma.k, n};
}

namespace {

int permutation_sign(const std::vector<int>& p, int n) {
  std::vector<char> seen(n + 1, 0);
  int parity = 0;
  for (int i = 1; i <= n; ++i) {
    if (seen[i]) continue;
    int len = 0, x = i;
    while (!seen[x]) {
      seen[x] = 1;
      x = p[x];
      ++len;
    }
    parity ^= (len - 1) & 1;
  }
  return parity;
}

}  // namespace

int parity(const LabelInvolution& sigma, const OPlanar& o) {
  if (o.vertex_data.size() != 1 || o.vertex_data[0].empty_real)
    throw std::logic_error("parity needs a one-vertex two-sided structure");
  const VertexPlanar& vd = o.vertex_data[0];
  int n = sigma.n(), k = sigma.k, l = sigma.l;
  std::vector<int> p(n + 1, 0);
  if (l > 0) {
    std::vector<int> seq = vd.order;
    while (seq.back() != n)
      std::rotate(seq.begin(), seq.begin() + 1, seq.end());
    for (int i = 0; i < l; ++i) p[2 * k + 1 + i] = seq[i];
  }
  for (int i = 0; i < k; ++i) {
    p[i + 1] = vd.plus[i];
    p[sigma(i + 1)] = sigma(vd.plus[i]);
  }
  return permutation_sign(p, n);
}

namespace {

bool in_convention(const LabelInvolution& sigma, const OPlanar& o) {
  const VertexPlanar& vd = o.vertex_data[0];
  if (sigma.l >= 3) {
    int n = sigma.n();
    int a = 2 * sigma.k + 1, b = n - 1, c = n;
    const auto& ord = vd.order;
    int m = (int)ord.size();
    int ia = -1, ib = -1, ic = -1;
    for (int i = 0; i < m; ++i) {
      if (ord[i] == a) ia = i;
      if (ord[i] == b) ib = i;
      if (ord[i] == c) ic = i;
    }
    return ((ib - ia + m) % m) < ((ic - ia + m) % m);
  }
  return std::find(vd.plus.begin(), vd.plus.end(), sigma.k) != vd.plus.end();
}

}  // namespace

OPlanar convention_representative(const LabelInvolution& sigma, const Tree& t,
                                  const TreeInvolution& iota,
                                  const OPlanar& o) {
  if (o.vertex_data.size() != 1)
    throw std::logic_error("convention_representative is for chambers");
  if (o.vertex_data[0].empty_real) return o;
  if (in_convention(sigma, o)) return o;
  OPlanar r = reverse_all(t, iota, o);
  if (!in_convention(sigma, r))
    throw std::logic_error("no convention representative in the orbit");
  return r;
}

}  // namespace rms
