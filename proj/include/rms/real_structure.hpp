#pragma once
// Tail involutions and the induced real structure on invariant trees.

#include <optional>
#include <utility>
#include <vector>

#include "rms/tree.hpp"

namespace rms {

// The normalized involution on tail labels: i <-> i+k for i <= k, fixing
// 2k+1..n where n = 2k+l.
struct LabelInvolution {
  int k = 0;
  int l = 0;

  int n() const { return 2 * k + l; }
  int operator()(int i) const {
    if (i <= k) return i + k;
    if (i <= 2 * k) return i - k;
    return i;
  }
  bool fixes(int i) const { return i > 2 * k; }
  std::vector<int> as_map() const {
    std::vector<int> m(n() + 1);
    for (int i = 1; i <= n(); ++i) m[i] = (*this)(i);
    m[0] = 0;
    return m;
  }
};

// Data of the unique tree involution covering sigma on an invariant tree.
struct TreeInvolution {
  std::vector<int> flag_map;
  std::vector<int> vertex_map;
  std::vector<int> real_vertices;  // fixed vertices, ascending
  std::vector<char> vertex_is_real;
  // Fixed flags at each vertex (fixed tails and flags of edges joining two
  // fixed vertices); empty lists at non-fixed vertices.
  std::vector<std::vector<int>> real_flags;
  std::vector<std::pair<int, int>> invariant_edges;  // flags fixed pointwise
  std::optional<std::pair<int, int>> special_edge;   // flags swapped
};

// The involution on t covering sigma, or nullopt if t is not invariant.
// Uniqueness of tail-compatible isomorphisms makes the result canonical.
std::optional<TreeInvolution> sigma_invariance(const Tree& t,
                                               const LabelInvolution& sigma);

// Tail-relabeled tree t^sigma in canonical layout.
Tree conjugate_tree(const Tree& t, const LabelInvolution& sigma);

// All invariant stable trees (canonical layout) with their involutions,
// ordered like enumerate_stable_trees.
std::vector<std::pair<Tree, TreeInvolution>> enumerate_invariant_trees(
    const LabelInvolution& sigma);

// Signs of the non-fixed vertices relative to an assignment of +1 to
// from_vertex's side of the real locus; used by planar structures.
// (Declared in planar.hpp where the plus data lives.)

}  // namespace rms
