#include "rms/invariants.hpp"

#include <algorithm>
#include <stdexcept>

#include "rms/sw_class.hpp"

namespace rms {

long long chi_c_stratum(const Stratum& s) {
  const Tree& t = s.tree;
  const TreeInvolution& iota = s.iota;
  long long chi = 1;
  int dim_sum = 0;
  std::vector<char> seen(t.num_vertices, 0);
  for (int v = 0; v < t.num_vertices; ++v) {
    if (seen[v]) continue;
    seen[v] = 1;
    int m = valence(t, v);
    if (!iota.vertex_is_real[v]) {
      // Conjugate pair: the complex moduli of one member, an ordered
      // configuration of m - 3 points in the thrice-punctured plane.
      seen[iota.vertex_map[v]] = 1;
      for (int i = 0; i <= m - 4; ++i) chi *= -(1 + i);
      dim_sum += 2 * (m - 3);
      continue;
    }
    int lv = (int)iota.real_flags[v].size();
    int kv = (m - lv) / 2;
    size_t slot =
        std::find(iota.real_vertices.begin(), iota.real_vertices.end(), v) -
        iota.real_vertices.begin();
    const VertexPlanar& d = s.u.vertex_data[slot];
    if (d.empty_real) {
      // Fixed-point-free circle: one pair pinned, one on a ray, the rest
      // avoid the previous antipodal pairs on the sphere.
      chi *= -1;
      for (int i = 0; i <= kv - 3; ++i) chi *= (-2 - 2 * i);
    } else if (lv >= 3) {
      for (int i = 0; i < kv; ++i) chi *= (1 - i);
      if ((lv - 3) % 2) chi = -chi;
    } else if (lv > 0) {
      // One or two boundary points leave residual Moebius freedom that
      // exactly one interior pair absorbs.
      if (kv == 0) throw std::logic_error("unstable vertex");
      chi *= (kv >= 2) ? 0 : (lv == 2 ? -1 : 1);
    } else {
      // Real circle with no boundary points: rotations absorb one pair.
      chi *= -1;
      for (int i = 0; i <= kv - 3; ++i) chi *= (-1 - i);
    }
    dim_sum += 2 * kv + lv - 3;
  }
  if (dim_sum != s.dim) throw std::logic_error("dimension bookkeeping failed");
  return chi;
}

long long euler_char(const StratifiedComplex& c) {
  long long chi = 0;
  for (const Stratum& s : c.strata) chi += chi_c_stratum(s);
  return chi;
}

std::map<int, int> strata_counts(const StratifiedComplex& c) {
  std::map<int, int> h;
  for (const Stratum& s : c.strata) ++h[s.dim];
  return h;
}

long long euler_char(const CoverComplex& cover) {
  if (cover.sigma.l == 0) return 2 * euler_char(build_poset(cover.sigma));
  long long chi = 0;
  for (const REquivClass& c : r_equivalence_classes(cover.sigma)) {
    chi += chi_c_stratum(Stratum{c.tree, c.iota, c.u, c.dim});
  }
  return chi;
}

SurfaceReport classify_surface(const LabelInvolution& sigma, bool cover) {
  if (sigma.n() != 5) {
    throw NotASurface("only the five-tail spaces are closed surfaces");
  }
  SurfaceReport r;
  if (cover) {
    r.orientable = true;
    r.chi = euler_char(build_cover(sigma));
    r.genus = static_cast<int>((2 - r.chi) / 2);
  } else {
    r.orientable = is_orientable(sigma);
    r.chi = euler_char(build_poset(sigma));
    r.genus = std::nullopt;
  }
  return r;
}

}  // namespace rms
