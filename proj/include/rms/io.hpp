#pragma once
// JSON and DOT serialization.

#include <nlohmann/json.hpp>
#include <string>

#include "rms/strata.hpp"
#include "rms/tree.hpp"

namespace rms {

nlohmann::json tree_to_json(const Tree& t);
Tree tree_from_json(const nlohmann::json& jj);
std::string tree_to_dot(const Tree& t);

// {"vertex_data": {v: {"plus":[...],"order":[...]} | "empty"},
//  "edge_signs": {flag: "+"/"-"}} with edge_signs present only for
// structures on trees without real vertices.
nlohmann::json oplanar_to_json(const Tree& t, const TreeInvolution& iota,
                               const OPlanar& o);

// {"strata":[{id,dim,label,tree,u}], "adjacency":[[lo,hi]]}
nlohmann::json poset_to_json(const StratifiedComplex& c);

// Hasse diagram, one rank per dimension.
std::string poset_to_dot(const StratifiedComplex& c);

}  // namespace rms
