#pragma once
// Compactly-supported Euler characteristics of strata and of the whole
// space, plus the closed-surface classification at n = 5.

#include <map>
#include <optional>
#include <stdexcept>

#include "rms/double_cover.hpp"
#include "rms/strata.hpp"

namespace rms {

class NotASurface : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// chi_c of one open stratum, multiplicative over vertex orbits:
// a real vertex contributes the configuration space of k_v conjugate pairs
// in the half plane and l_v ordered boundary points modulo real Moebius
// transformations; a conjugate pair of vertices contributes the complex
// moduli of its valence.  Throws if the per-orbit dimensions fail to sum
// to the stratum dimension.
long long chi_c_stratum(const Stratum& s);

// Additivity over the finite stratification of the compact space.
long long euler_char(const StratifiedComplex& c);

// Euler characteristic of the orientation double cover: each labeled class
// of the cover stratification contributes the chi_c of its underlying open
// stratum.  Always twice the base value.
long long euler_char(const CoverComplex& cover);

std::map<int, int> strata_counts(const StratifiedComplex& c);

struct SurfaceReport {
  bool orientable = false;
  long long chi = 0;
  std::optional<int> genus;  // chi = 2 - 2 genus, orientable case only
};

// Classification of the base space for n = 5 (the closed-surface cases)
// or of its orientation double cover.  Throws NotASurface for any other n.
SurfaceReport classify_surface(const LabelInvolution& sigma, bool cover);

}  // namespace rms
