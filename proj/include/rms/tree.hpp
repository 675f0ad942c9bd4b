#pragma once
// Stable trees with n labeled tails, stored as flag systems.
//
// Flags are integers 1..num_flags.  Tails are exactly the flags 1..n and the
// tail's label equals its flag id.  Internal flags occupy n+1..num_flags and
// come in pairs swapped by the involution j; each such pair is an edge.
// boundary[f] is the vertex (0-based) carrying flag f.  Stability means every
// vertex carries at least three flags.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rms {

class TreeError : public std::runtime_error {
public:
  enum class Kind { NotATree, Unstable, BadLabels, UnknownEdge };
  TreeError(Kind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

struct Tree {
  int n = 0;
  int num_flags = 0;
  int num_vertices = 0;
  std::vector<int> boundary;  // size num_flags+1, index 0 unused
  std::vector<int> j;         // size num_flags+1, index 0 unused

  bool is_tail(int f) const { return f >= 1 && f <= n; }
  int num_edges() const { return (num_flags - n) / 2; }

  bool operator==(const Tree& other) const = default;
};

// One-vertex tree with tails 1..n.
Tree corolla(int n);

// Throws TreeError if t is not a stable tree with tails 1..n.
void validate(const Tree& t);

// flags carried by each vertex, each list sorted ascending.
std::vector<std::vector<int>> flags_by_vertex(const Tree& t);

// Edges as flag pairs (f, j[f]) with f < j[f], sorted by f.
std::vector<std::pair<int, int>> edges(const Tree& t);

int valence(const Tree& t, int v);

// For an internal flag f, the set of tails lying strictly beyond f (in the
// component of boundary[j[f]] after removing the edge), as a bitmask with
// bit i-1 for tail i.  For a tail f the mask is just its own bit.
std::vector<std::uint64_t> tail_masks(const Tree& t);

// Deterministic encoding of the tree rooted at the vertex carrying tail n.
// Two trees have equal encodings iff they are isomorphic by a tail-preserving
// isomorphism.  Comparable lexicographically.
std::vector<int> canonical_form(const Tree& t);

struct Relabeling {
  std::vector<int> flag_map;    // old flag -> new flag
  std::vector<int> vertex_map;  // old vertex -> new vertex
};

// Relabels vertices and internal flags into the canonical traversal layout.
// Isomorphic trees canonicalize to identical structs.
std::pair<Tree, Relabeling> canonicalize(const Tree& t);

struct TreeIso {
  std::vector<int> flag_map;    // flag of t1 -> flag of t2
  std::vector<int> vertex_map;  // vertex of t1 -> vertex of t2
};

// Isomorphism t1 -> t2 restricting to tail_map on tails (tail_map has size
// n+1, entry 0 unused).  Unique if it exists; nullopt otherwise.
std::optional<TreeIso> find_isomorphism(const Tree& t1, const Tree& t2,
                                        const std::vector<int>& tail_map);

// Contracts the given edges (each a flag pair as returned by edges()).
// Resulting labels stay valid but the layout is not canonical; pass through
// canonicalize() before comparing.  Throws UnknownEdge for a bad pair.
Tree contract_edges(const Tree& t, const std::vector<std::pair<int, int>>& es);

struct Contracted {
  Tree tree;
  std::vector<int> flag_map;    // old flag -> new flag, -1 for removed
  std::vector<int> vertex_map;  // old vertex -> new vertex
};
Contracted contract_edges_mapped(const Tree& t,
                                 const std::vector<std::pair<int, int>>& es);

// True iff contracting some edge subset of t1 yields a tree isomorphic to t2
// under the identity on tails.
bool leq(const Tree& t1, const Tree& t2);

// All isomorphism classes of stable trees with tails 1..n, in canonical
// layout, sorted by (edge count, canonical form).
std::vector<Tree> enumerate_stable_trees(int n);

// Human-readable nested label, e.g. "{45|123}" for a two-vertex tree with
// tails {4,5} on the vertex away from tail n.
std::string tree_label(const Tree& t);

}  // namespace rms
