#include "rms/sw_class.hpp"

#include <stdexcept>

#include "rms/planar.hpp"

namespace rms {

bool in_w1(const LabelInvolution& sigma, const Tree& gamma,
           const TreeInvolution& iota) {
  if (gamma.num_vertices != 2 || iota.real_vertices.size() != 2) {
    throw std::invalid_argument("w1 membership needs a real two-vertex tree");
  }
  int at_anchor = 0;
  const int va = gamma.boundary[gamma.n];
  for (int t : frak_tails(sigma)) {
    if (gamma.boundary[t] == va) ++at_anchor;
  }
  // Three distinguished tails split 3+0 or 2+1, so the light vertex is
  // unique.
  const int light = at_anchor <= 1 ? va : 1 - va;
  return valence(gamma, light) % 2 == 0;
}

W1Cycle w1_cycle(const LabelInvolution& sigma) {
  W1Cycle cycle;
  if (sigma.l == 0) return cycle;
  const int n = sigma.n();
  for (const auto& [gamma, iota] : enumerate_invariant_trees(sigma)) {
    if (gamma.num_vertices != 2) continue;
    if (!in_w1(sigma, gamma, iota)) continue;
    for (const OPlanar& u : enumerate_uplanar(gamma, iota)) {
      cycle.strata.push_back(Stratum{gamma, iota, u, n - 4});
    }
    cycle.trees.emplace_back(gamma, iota);
  }
  return cycle;
}

bool is_orientable(const LabelInvolution& sigma) {
  return sigma.n() <= 4 || sigma.l == 0;
}

}  // namespace rms
