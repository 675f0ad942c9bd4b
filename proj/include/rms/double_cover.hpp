#pragma once
// The orientation double cover assembled combinatorially: one cell per
// o-planar structure on the corolla, glued along the boundary lifts of the
// codimension-one walls, with strata labeled by equivalence classes of
// o-planar structures on deeper trees.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rms/strata.hpp"

namespace rms {

// Which of the six face-pairing relations glues two boundary lifts.  The
// reversal sits at the far vertex for A, D, F and at the anchor for B, C, E.
// A, B apply when the anchor holds at least two distinguished tails, C..F
// when it holds at most one (E, F when the anchor has exactly three fixed
// flags).  B, D, F glue over walls of the Stiefel-Whitney cycle, the others
// over its complement.
enum class GlueRelation { A, B, C, D, E, F };

char relation_name(GlueRelation r);  // 'A'..'F'

// A boundary face of the disjoint union without a gluing partner.  The
// construction pairs every face, so reaching this signals a bug.
class UnmatchedFace : public std::logic_error {
 public:
  explicit UnmatchedFace(const std::string& what) : std::logic_error(what) {}
};

struct CoverFace {
  int wall = -1;     // index into CoverComplex::walls
  OPlanar lift;      // o-planar structure on the wall tree
  int cell = -1;     // top cell whose closure carries this face
  int partner = -1;  // index of the glued face
  GlueRelation rel = GlueRelation::A;
};

struct CoverComplex {
  LabelInvolution sigma;
  Tree corolla;
  TreeInvolution corolla_iota;
  std::vector<OPlanar> top_cells;  // one-vertex o-planar structures
  std::vector<std::pair<Tree, TreeInvolution>> walls;
  std::vector<char> wall_in_w1;
  // Boundary lifts with their pairing; empty when l == 0, where the cover is
  // two disjoint copies of the base and nothing needs gluing.
  std::vector<CoverFace> faces;
  std::vector<int> cell_component;  // top cell -> component id
  int num_components = 0;
};

// The relation gluing the two lifts, or absent when they are equal, differ
// at both vertices, or differ at the vertex the relations do not name.
// Requires a two-vertex tree with both vertices real.
std::optional<GlueRelation> glue_predicate(const LabelInvolution& sigma,
                                           const Tree& gamma,
                                           const TreeInvolution& iota,
                                           const OPlanar& o1,
                                           const OPlanar& o2);

// The wall vertex hosting the gluing reversal: the vertex meeting the
// distinguished tails at most once, switched to the other vertex over walls
// of the Stiefel-Whitney cycle.
int glue_vertex(const LabelInvolution& sigma, const Tree& gamma,
                const TreeInvolution& iota);

// Assembles the cover: enumerates the cells and every boundary lift of
// every wall, locates each lift's owning cell by full contraction, pairs the
// lifts through glue_vertex reversal, and joins cells along the pairing.
// For l == 0 the base is orientable and the result is the trivial double
// cover.  Throws UnmatchedFace if any lift fails to resolve.
CoverComplex build_cover(const LabelInvolution& sigma);

int connected_components(const CoverComplex& cover);

// One stratum of the cover: an equivalence class of o-planar structures
// over a single base stratum (tree, u).  members holds the full class,
// sorted; the front entry is the representative.
struct REquivClass {
  Tree tree;
  TreeInvolution iota;
  OPlanar u;
  int dim = 0;
  std::vector<OPlanar> members;
};

// Classes of o-planar structures over every base stratum, l > 0.  Within
// one (tree, u) stratum two structures fall together when contracting all
// edge orbits except one invariant edge sends them to lifts of a wall that
// differ by reversal at its gluing vertex; the classes are the components
// of that relation over all choices of the kept edge.  Structures on trees
// with one real vertex stay alone.
std::vector<REquivClass> r_equivalence_classes(const LabelInvolution& sigma);

// The classes as the strata of the built cover, after checking they match
// it: one singleton class per top cell and one two-member class per glued
// face pair.  Throws UnmatchedFace on any mismatch, std::invalid_argument
// when l == 0.
std::vector<REquivClass> cover_strata(const CoverComplex& cover);

}  // namespace rms
