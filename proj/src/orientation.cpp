#include "rms/orientation.hpp"

#include <algorithm>

#include "rms/tree.hpp"

namespace rms {

namespace {

int mod2(int x) { return ((x % 2) + 2) % 2; }

void require_wall_shape(const Tree& gamma, const TreeInvolution& iota) {
  if (gamma.num_vertices != 2 || iota.real_vertices.size() != 2) {
    throw OrientationError(OrientationError::Kind::WrongCase,
                           "expected a two-vertex tree with both vertices "
                           "real");
  }
}

// Index of a real vertex in the per-vertex arrays of an OPlanar.
int real_slot(const TreeInvolution& iota, int v) {
  auto it = std::find(iota.real_vertices.begin(), iota.real_vertices.end(), v);
  return static_cast<int>(it - iota.real_vertices.begin());
}

int anchor_vertex(const Tree& gamma) { return gamma.boundary[gamma.n]; }

// The invariant edge's flag at the given vertex.
int edge_flag_at(const Tree& gamma, int v) {
  auto [f, g] = edges(gamma)[0];
  return gamma.boundary[f] == v ? f : g;
}

}  // namespace

TwoVertexContext two_vertex_context(const LabelInvolution& sigma,
                                    const Tree& gamma,
                                    const TreeInvolution& iota,
                                    const OPlanar& o) {
  require_wall_shape(gamma, iota);
  TwoVertexContext ctx;
  ctx.l = sigma.l;
  const int va = anchor_vertex(gamma);
  const int vf = 1 - va;
  const int sa = real_slot(iota, va);
  const int sf = real_slot(iota, vf);
  ctx.anchor_flags = valence(gamma, va);
  ctx.far_flags = valence(gamma, vf);
  ctx.anchor_real = static_cast<int>(iota.real_flags[va].size());
  ctx.far_real = static_cast<int>(iota.real_flags[vf].size());
  ctx.anchor_plus = static_cast<int>(o.vertex_data[sa].plus.size());
  ctx.far_plus = static_cast<int>(o.vertex_data[sf].plus.size());
  if (sigma.l > 0) {
    ctx.r = ctx.far_real - 1;
    // The anchored order starts at n; linearly the entries before n are the
    // ones following it in the cycle.
    const auto& ord = o.vertex_data[sa].order;
    const int fe = edge_flag_at(gamma, va);
    const auto pos = std::find(ord.begin(), ord.end(), fe) - ord.begin();
    ctx.q = static_cast<int>(pos) - 1;
    ctx.s = static_cast<int>(ord.size()) - 2 - ctx.q;
  }
  return ctx;
}

int aleph(const TwoVertexContext& ctx) {
  if (ctx.l < 2) {
    throw OrientationError(OrientationError::Kind::OutOfTable,
                           "comparison table needs at least four fixed flags "
                           "on the wall");
  }
  const int split = ctx.q + ctx.s;
  if (ctx.r >= 2) {
    if (split >= 2) return mod2((ctx.q + 1) * (ctx.r + 1));
    if (split == 1) return ctx.s == 0 ? 0 : mod2(ctx.l + 1);
    return mod2(ctx.l + 1);
  }
  if (ctx.r == 1) return 1;
  if (split >= 2) return mod2(ctx.q + 1);
  // Three fixed flags at the anchor: the two orderings receive opposite
  // signs, pinned by the endpoint comparison on the smallest interval case.
  return ctx.s == 0 ? 1 : 0;
}

int aleph_l0(const LabelInvolution& sigma, const Tree& gamma,
             const TreeInvolution& iota, const OPlanar& o,
             bool empty_circle_chamber) {
  if (sigma.l != 0 || gamma.num_vertices != 2) {
    throw OrientationError(OrientationError::Kind::WrongCase,
                           "expected a two-vertex tree without fixed tails");
  }
  if (iota.real_vertices.size() == 2) return 1;
  if (!iota.special_edge) {
    throw OrientationError(OrientationError::Kind::WrongCase,
                           "conjugate vertex pair without a flag-swapped "
                           "edge");
  }
  if (!empty_circle_chamber) return 0;
  // Minus side: the vertex not carrying the chosen half of the swapped edge.
  // Every pair contributes through its small representative, including the
  // pair {k, 2k} whose large member always sits next to 2k's vertex.
  const int v_minus = 1 - gamma.boundary[o.plus_flag];
  int count = 0;
  for (int t = 1; t <= sigma.k; ++t) {
    if (gamma.boundary[t] == v_minus) ++count;
  }
  return mod2(count + 1);
}

int mu(int plus_count, int real_count) {
  return mod2(plus_count + (real_count - 2) * (real_count - 3) / 2);
}

int parity_diff(const TwoVertexContext& ctx, ReversalAt at) {
  if (at == ReversalAt::FarVertex) {
    return mod2(ctx.far_plus + ctx.r * (ctx.r - 1) / 2);
  }
  if (ctx.anchor_real > 3) {
    return mod2(ctx.anchor_plus + ctx.q * ctx.r + ctx.r * ctx.s +
                ctx.q * ctx.s + ctx.s * (ctx.s - 1) / 2 +
                ctx.q * (ctx.q - 1) / 2);
  }
  if (ctx.anchor_real == 3) return mod2(ctx.anchor_plus + ctx.far_real - 1);
  return mod2(ctx.anchor_plus);
}

int reversal_vertex(const LabelInvolution& sigma, const Tree& gamma,
                    const TreeInvolution& iota, const OPlanar& a,
                    const OPlanar& b) {
  require_wall_shape(gamma, iota);
  int found = -1;
  for (int v : iota.real_vertices) {
    if (reverse_at(gamma, iota, a, v) == b) {
      found = v;
      break;
    }
  }
  if (found < 0) {
    throw OrientationError(OrientationError::Kind::NotSingleReversal,
                           "structures do not differ by a single reversal");
  }
  (void)sigma;
  return found;
}

int pi(int parity1, int aleph1, int parity2, int aleph2, int mu_v) {
  return mod2(parity1 + aleph1 + parity2 + aleph2 + mu_v);
}

int aleph_difference(const TwoVertexContext& c1, const TwoVertexContext& c2,
                     ReversalAt at) {
  if (c1.l == 0) {
    throw OrientationError(OrientationError::Kind::WrongCase,
                           "no fixed tails: use aleph_l0");
  }
  if (c1.l >= 2) return aleph(c1) - aleph(c2);
  // l == 1: the only fixed tail is n, so q = r = s = 0 on both sides and any
  // comparison reads the same data twice.
  (void)at;
  return 0;
}

int pi_closed_form(const LabelInvolution& sigma, const Tree& gamma,
                   const TreeInvolution& iota) {
  require_wall_shape(gamma, iota);
  const int va = anchor_vertex(gamma);
  int at_anchor = 0;
  for (int t : frak_tails(sigma)) {
    if (gamma.boundary[t] == va) ++at_anchor;
  }
  if (3 - at_anchor <= 1) return valence(gamma, 1 - va) % 2;
  const int anchor_real = static_cast<int>(iota.real_flags[va].size());
  if (anchor_real != 3) return valence(gamma, va) % 2;
  return 1;
}

int wall_pi(const LabelInvolution& sigma, const Tree& gamma,
            const TreeInvolution& iota, const OPlanar& lift1,
            const OPlanar& chamber1, const OPlanar& lift2,
            const OPlanar& chamber2) {
  const int v = reversal_vertex(sigma, gamma, iota, lift1, lift2);
  const int p1 = parity(sigma, chamber1);
  const int p2 = parity(sigma, chamber2);
  const int slot = real_slot(iota, v);
  const int mu_v =
      mu(static_cast<int>(lift1.vertex_data[slot].plus.size()),
         static_cast<int>(iota.real_flags[v].size()));
  int adiff = 0;
  if (sigma.l > 0) {
    const auto at = v == anchor_vertex(gamma) ? ReversalAt::AnchorVertex
                                              : ReversalAt::FarVertex;
    adiff = aleph_difference(two_vertex_context(sigma, gamma, iota, lift1),
                             two_vertex_context(sigma, gamma, iota, lift2),
                             at);
  }
  // Both table reads of an l == 0 wall equal 1, so their difference drops.
  return pi(p1, mod2(adiff), p2, 0, mu_v);
}

}  // namespace rms
