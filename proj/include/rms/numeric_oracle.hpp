#pragma once
// Numeric verification of the boundary orientation signs.
//
// Chambers and codimension-one strata carry pinned projective charts whose
// ordered coordinates represent their orientation forms.  Smoothing a nodal
// configuration with parameter t > 0 pointing into an adjacent chamber
// expresses the chamber coordinates as functions of (t, wall coordinates);
// with outward normal -d/dt the comparison exponent between the induced
// boundary orientation and the wall's product orientation is read off the
// Jacobian determinant:
//
//   (-1)^exponent = -sign(form signs * det J).
//
// verify_signs measures the exponent for every planar lift of every wall
// and compares it with the combinatorial values, measures the chart change
// between the two representative lifts of a wall against the reversal
// penalty, and checks that the two induced orientations agree exactly on
// the walls of the first Stiefel-Whitney cycle.

#include <cstdint>
#include <string>
#include <vector>

#include "rms/orientation.hpp"
#include "rms/strata.hpp"

namespace rms {

struct OracleOptions {
  int seeds = 10;         // independent base configurations per measurement
  double t0 = 1e-3;       // smoothing parameter where derivatives are taken
  double step = 1e-6;     // central difference step
  double min_det = 1e-9;  // degeneracy guard for Jacobian determinants
  std::uint64_t base_seed = 0;
  int threads = 1;
};

// One measured lift of one wall; a flag-swapped edge contributes one entry
// per smoothing side.
struct LiftCheck {
  int q = -1, r = -1, s = -1;  // anchored context when the wall has l > 0
  bool empty_side = false;     // side without real points (l == 0 only)
  int measured = -1;           // exponent from the Jacobian sign
  int predicted = -1;          // table / lemma value, -1 when none applies
  double min_abs_det = 0.0;
  bool deterministic = false;  // same exponent for every seed
  bool pass = false;
};

struct WallCheck {
  std::string label;  // tree label plus lift-class index
  std::vector<LiftCheck> lifts;
  // Walls bounding a real one-cell pair: chart change between the two
  // representative lifts and the induced-orientation comparison.
  bool paired = false;
  int chart_change = 0;             // measured sign, +1 / -1
  int reversal_penalty_sign = 0;    // expected sign from the penalty exponent
  bool orientations_agree = false;  // measured
  bool in_w1 = false;               // combinatorial
  bool pass = false;
};

struct SignReport {
  int k = 0;
  int l = 0;
  std::vector<WallCheck> walls;
  int lift_checks = 0;
  int failures = 0;
  bool all_pass = false;
};

// Measures every codimension-one stratum of the stratification for sigma.
SignReport verify_signs(const LabelInvolution& sigma,
                        const OracleOptions& opts = {});

// Chart-change sign between the charts of a one-vertex structure with
// marked real points and its reversal, connected by the projective map
// z -> -z.  The expected value is (-1)^(k + (l-1)(l-2)/2 + l).
int reversal_chart_sign(const LabelInvolution& sigma, const OPlanar& o,
                        const OracleOptions& opts = {});

}  // namespace rms
