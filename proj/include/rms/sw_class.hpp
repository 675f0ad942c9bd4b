#pragma once
// First Stiefel-Whitney class of the compactified space as an explicit
// cycle of closed codimension-one strata: the walls over which the two
// adjacent chambers induce the same orientation, so that their fundamental
// classes add up instead of cancelling.

#include <utility>
#include <vector>

#include "rms/strata.hpp"

namespace rms {

// Membership of one wall.  Requires a two-vertex tree with both vertices
// real.  Exactly one vertex meets the three distinguished tails at most
// once; the wall contributes iff that vertex has even valence.
bool in_w1(const LabelInvolution& sigma, const Tree& gamma,
           const TreeInvolution& iota);

struct W1Cycle {
  // One stratum per u-planar structure on each contributing tree.
  std::vector<Stratum> strata;
  // The underlying closed trees, one entry each.
  std::vector<std::pair<Tree, TreeInvolution>> trees;
};

// The full cycle.  Empty when l == 0 or n <= 4.
W1Cycle w1_cycle(const LabelInvolution& sigma);

// True iff n <= 4 or l == 0.
bool is_orientable(const LabelInvolution& sigma);

}  // namespace rms
