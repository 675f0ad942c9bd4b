#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "rms/orientation.hpp"
#include "rms/planar.hpp"
#include "rms/real_structure.hpp"
#include "rms/sw_class.hpp"

using namespace rms;

namespace {

std::vector<LabelInvolution> involutions(int n_min, int n_max) {
  std::vector<LabelInvolution> out;
  for (int n = n_min; n <= n_max; ++n)
    for (int k = 0; 2 * k <= n; ++k) out.push_back({k, n - 2 * k});
  return out;
}

std::vector<std::pair<Tree, TreeInvolution>> walls(
    const LabelInvolution& sigma) {
  std::vector<std::pair<Tree, TreeInvolution>> out;
  for (const auto& ti : enumerate_invariant_trees(sigma))
    if (ti.first.num_vertices == 2) out.push_back(ti);
  return out;
}

std::set<std::string> cycle_labels(const LabelInvolution& sigma) {
  std::set<std::string> out;
  for (const auto& [gamma, iota] : w1_cycle(sigma).trees)
    out.insert(tree_label(gamma));
  return out;
}

// Partition label of a two-vertex tree after relabeling tails by rho.
std::string relabel(const std::string& label, const std::vector<int>& rho) {
  std::vector<std::vector<int>> parts(1);
  for (char c : label) {
    if (c == '|') parts.emplace_back();
    if (c >= '1' && c <= '9') parts.back().push_back(rho[c - '0']);
  }
  REQUIRE(parts.size() == 2);
  for (auto& p : parts) std::sort(p.begin(), p.end());
  if (parts[1].size() < parts[0].size() ||
      (parts[1].size() == parts[0].size() && parts[1] < parts[0]))
    std::swap(parts[0], parts[1]);
  std::string out = "{";
  for (int t : parts[0]) out += std::to_string(t);
  out += "|";
  for (int t : parts[1]) out += std::to_string(t);
  return out + "}";
}

// Tail permutations commuting with sigma and preserving the distinguished
// set: transpositions within it, within the other fixed tails, and swaps
// of whole conjugate pairs.
std::vector<std::vector<int>> convention_symmetries(
    const LabelInvolution& sigma) {
  const int n = sigma.n(), k = sigma.k;
  const auto frak = frak_tails(sigma);
  const std::set<int> fset(frak.begin(), frak.end());
  std::vector<std::vector<int>> out;
  std::vector<int> id(n + 1);
  for (int i = 0; i <= n; ++i) id[i] = i;
  auto add_swap = [&](int a, int b) {
    auto rho = id;
    std::swap(rho[a], rho[b]);
    out.push_back(rho);
  };
  for (int a = 2 * k + 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      if (fset.count(a) == fset.count(b)) add_swap(a, b);
  for (int i = 1; i < k; ++i)
    for (int j = i + 1; j <= k; ++j)
      if (fset.count(i) == fset.count(j) &&
          fset.count(i + k) == fset.count(j + k)) {
        auto rho = id;
        std::swap(rho[i], rho[j]);
        std::swap(rho[i + k], rho[j + k]);
        out.push_back(rho);
      }
  if (k >= 1 && fset.count(k) == fset.count(2 * k)) add_swap(k, 2 * k);
  return out;
}

}  // namespace

TEST_CASE("the (0,5) cycle is the three exceptional divisors") {
  LabelInvolution sigma{0, 5};
  const W1Cycle cycle = w1_cycle(sigma);
  const std::set<std::string> expected{"{45|123}", "{15|234}", "{14|235}"};
  CHECK(cycle_labels(sigma) == expected);
  // Three interval orderings of the five-flag vertex per tree.
  CHECK(cycle.strata.size() == 9);
  for (const Stratum& s : cycle.strata) CHECK(s.dim == 1);

  // Equivalent description: a vertex of valence four meeting {1,4,5} once.
  for (const auto& [gamma, iota] : walls(sigma)) {
    bool blowup = false;
    for (int v = 0; v < 2; ++v) {
      int meets = 0;
      for (int t : {1, 4, 5})
        if (gamma.boundary[t] == v) ++meets;
      if (valence(gamma, v) == 4 && meets == 1) blowup = true;
    }
    CHECK(in_w1(sigma, gamma, iota) == blowup);
  }
}

TEST_CASE("the cycle vanishes exactly in the orientable cases") {
  for (const LabelInvolution& sigma : involutions(3, 7)) {
    CAPTURE(sigma.k);
    CAPTURE(sigma.l);
    CHECK(is_orientable(sigma) ==
          (sigma.n() <= 4 || sigma.l == 0));
    CHECK(is_orientable(sigma) == w1_cycle(sigma).trees.empty());
  }
}

TEST_CASE("membership equals the orientation mismatch closed form") {
  for (const LabelInvolution& sigma : involutions(4, 7)) {
    if (sigma.l == 0) continue;
    for (const auto& [gamma, iota] : walls(sigma)) {
      CAPTURE(sigma.k);
      CAPTURE(tree_label(gamma));
      CHECK(in_w1(sigma, gamma, iota) ==
            (pi_closed_form(sigma, gamma, iota) == 0));
    }
  }
}

TEST_CASE("convention symmetries permute the cycle") {
  for (const LabelInvolution& sigma : involutions(5, 7)) {
    if (sigma.l == 0) continue;
    const std::set<std::string> cycle = cycle_labels(sigma);
    std::set<std::string> all;
    for (const auto& [gamma, iota] : walls(sigma))
      all.insert(tree_label(gamma));
    for (const auto& rho : convention_symmetries(sigma)) {
      std::set<std::string> image;
      for (const std::string& lbl : cycle) image.insert(relabel(lbl, rho));
      CAPTURE(sigma.k);
      CAPTURE(sigma.l);
      CHECK(image == cycle);
      for (const std::string& lbl : image) CHECK(all.count(lbl) == 1);
    }
  }
}
