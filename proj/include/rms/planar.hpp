#pragma once
// Planar structures on invariant trees: a choice of half of the conjugate
// flags at each real vertex together with a cyclic order on its fixed flags,
// up to independent reversal (u-planar) or not (o-planar).

#include <vector>

#include "rms/real_structure.hpp"

namespace rms {

struct VertexPlanar {
  bool empty_real = false;  // real circle carries no marked point or node
  std::vector<int> plus;    // one flag from each conjugate pair, sorted
  std::vector<int> order;   // cyclic order of the fixed flags, anchored
  auto operator<=>(const VertexPlanar&) const = default;
};

struct OPlanar {
  // vertex_data[i] decorates real_vertices[i] of the involution.  When the
  // tree has no real vertex the whole datum is the side choice at the
  // flag-swapped edge.
  std::vector<VertexPlanar> vertex_data;
  int plus_flag = -1;
  auto operator<=>(const OPlanar&) const = default;
};

// Rotate a cyclic sequence so tail n comes first if present, otherwise the
// smallest entry.
std::vector<int> anchor_cycle(std::vector<int> seq, int n);

// All planar structures at one tree.  For a single real vertex with no fixed
// flags both the two-sided datum and the empty-circle datum occur.
std::vector<OPlanar> enumerate_oplanar(const Tree& t,
                                       const TreeInvolution& iota);

// Reverse the datum at real vertex v (flags conjugated, order reversed).
OPlanar reverse_at(const Tree& t, const TreeInvolution& iota, const OPlanar& o,
                   int v);

// Reverse at every real vertex; swaps the side at a flag-swapped edge.
OPlanar reverse_all(const Tree& t, const TreeInvolution& iota,
                    const OPlanar& o);

// Orbit of o under independent reversals, sorted; the representative of the
// quotient structure is the orbit minimum.
std::vector<OPlanar> reversal_orbit(const Tree& t, const TreeInvolution& iota,
                                    const OPlanar& o);
OPlanar to_uplanar(const Tree& t, const TreeInvolution& iota,
                   const OPlanar& o);
std::vector<OPlanar> enumerate_uplanar(const Tree& t,
                                       const TreeInvolution& iota);

// Signs of vertices: +1 / -1 on the two sides of the real locus, 0 on real
// vertices.  A non-real vertex is positive when the flag at its nearest real
// vertex pointing toward it belongs to that vertex's plus set (or when it is
// on the plus side of the flag-swapped edge).
std::vector<int> vertex_signs(const Tree& t, const TreeInvolution& iota,
                              const OPlanar& o);

// The three tails whose placement distinguishes a structure from its
// reversal: {2k+1, n-1, n} when l >= 3, else {k, 2k, n}.
std::vector<int> frak_tails(const LabelInvolution& sigma);

// Parity |o| of a one-vertex structure: the sign of any tail permutation
// commuting with sigma (and fixing n when l > 0) that carries the base
// structure {1..k plus, fixed tails in ascending cyclic order} to o.
int parity(const LabelInvolution& sigma, const OPlanar& o);

// The member of {o, reverse(o)} in convention position: for l >= 3 the tails
// 2k+1, n-1, n follow the cyclic orientation; otherwise k sits on the plus
// side.  Identity on an empty-circle datum.
OPlanar convention_representative(const LabelInvolution& sigma, const Tree& t,
                                  const TreeInvolution& iota, const OPlanar& o);

}  // namespace rms
