#pragma once
// Contraction of decorated trees, boundary lifting, and the stratification
// poset of the real moduli space for one tail involution.

#include <map>
#include <string>

#include "rms/planar.hpp"

namespace rms {

struct Stratum {
  Tree tree;            // canonical layout
  TreeInvolution iota;  // induced involution
  OPlanar u;            // orbit-minimal representative
  int dim = 0;          // n - 3 - edge count
};

// The orbit of an edge under the involution: the edge alone when invariant
// (pointwise or flag-swapped), otherwise the conjugate pair.
std::vector<std::pair<int, int>> edge_orbit(const Tree& t,
                                            const TreeInvolution& iota,
                                            std::pair<int, int> e);

// One representative edge per orbit, ascending by smallest flag.
std::vector<std::pair<int, int>> edge_orbit_reps(const Tree& t,
                                                 const TreeInvolution& iota);

struct ContractionResult {
  Tree tree;
  TreeInvolution iota;
  OPlanar o;
  std::vector<int> flag_map;    // old flag -> canonical new flag, -1 removed
  std::vector<int> vertex_map;  // old vertex -> canonical new vertex
};

// Contracts one edge orbit and transports the planar structure:
// an edge between two real vertices concatenates their cyclic orders at the
// removed flags and unites the halves; a flag-swapped edge yields TWO
// results, the two-sided structure seen from the chosen side and the
// empty-circle structure; a conjugate pair merges each component's flags
// into the half containing it, or changes nothing away from real vertices.
std::vector<ContractionResult> contract_oplanar(const LabelInvolution& sigma,
                                                const Tree& t,
                                                const TreeInvolution& iota,
                                                const OPlanar& o,
                                                std::pair<int, int> e);

// Iterated contraction of several orbits, processed in ascending smallest-
// flag order (result independence is a tested property).  Each entry of
// `orbit_reps` is one representative edge of a distinct orbit.
std::vector<ContractionResult> contract_many(
    const LabelInvolution& sigma, const Tree& t, const TreeInvolution& iota,
    const OPlanar& o, std::vector<std::pair<int, int>> orbit_reps);

// Edge orbits of gamma that must be contracted to reach tau, identified by
// tail partitions; empty optional when tau is not a contraction of gamma.
std::optional<std::vector<std::pair<int, int>>> orbits_to_contract(
    const Tree& gamma, const TreeInvolution& iota, const Tree& tau);

// All o-planar lifts of u_hat on gamma whose full contraction onto tau
// yields exactly o.  Usually a single lift; a one-cell meeting the same
// wall at both ends produces two.  Empty when not adjacent.
std::vector<OPlanar> delta_lifts(const LabelInvolution& sigma,
                                 const Tree& gamma,
                                 const TreeInvolution& iota_gamma,
                                 const OPlanar& u_hat, const Tree& tau,
                                 const OPlanar& o);

// True iff some lift of u_hat contracts onto (tau, u) up to reversal.
bool is_boundary(const LabelInvolution& sigma, const Tree& gamma,
                 const TreeInvolution& iota_gamma, const OPlanar& u_hat,
                 const Tree& tau, const OPlanar& u);

struct StratifiedComplex {
  std::vector<Stratum> strata;
  // (lower id, upper id): lower lies in the closure of upper, one orbit
  // contraction apart.  Deeper relations follow transitively.
  std::vector<std::pair<int, int>> adjacency;
  std::map<std::pair<std::vector<int>, OPlanar>, int> index;  // lookup key

  int id_of(const Tree& t, const OPlanar& u) const;
};

StratifiedComplex build_poset(const LabelInvolution& sigma);

}  // namespace rms
